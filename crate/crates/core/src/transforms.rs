//! Cauchy and reciprocal Cauchy transforms of discrete measures.
//!
//! Also carries the monotone additive composition `H_mu(H_nu(z))` and the
//! numerical limit `lim z G(z)` that recovers the mass at zero of the sum of
//! two monotonically independent projections.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::scalar::Real;

/// A point of the open upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperHalfPlanePoint<T> {
    re: T,
    im: T,
}

impl<T: Real> UpperHalfPlanePoint<T> {
    pub fn new(re: T, im: T) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im <= T::zero() {
            return Err(Error::Domain(format!(
                "{re} + {im}i is not in the open upper half-plane"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> T {
        self.re
    }

    pub fn im(&self) -> T {
        self.im
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }
}

impl<T: Real> TryFrom<Complex<T>> for UpperHalfPlanePoint<T> {
    type Error = Error;

    fn try_from(z: Complex<T>) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

fn cauchy_raw<T: Real>(mu: &DiscreteMeasure<T>, z: Complex<T>) -> Complex<T> {
    mu.iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, w)| {
            acc + (z - x).inv() * w
        })
}

/// `G_mu(z) = sum_i w_i / (z - x_i)`.
pub fn cauchy_transform<T: Real>(mu: &DiscreteMeasure<T>, z: UpperHalfPlanePoint<T>) -> Complex<T> {
    cauchy_raw(mu, z.to_complex())
}

/// `H_mu(z) = 1 / G_mu(z)`.
pub fn reciprocal_cauchy<T: Real>(
    mu: &DiscreteMeasure<T>,
    z: UpperHalfPlanePoint<T>,
) -> Complex<T> {
    cauchy_transform(mu, z).inv()
}

/// Reciprocal Cauchy transform of the projection law `p delta_0 + (1 - p) delta_1`,
/// in closed form `z (z - 1) / (z - p)`.
pub fn bernoulli_h<T: Real>(p: T, z: UpperHalfPlanePoint<T>) -> Result<Complex<T>> {
    check_probability(p, "p")?;
    Ok(bernoulli_h_raw(p, z.to_complex()))
}

fn bernoulli_h_raw<T: Real>(p: T, z: Complex<T>) -> Complex<T> {
    z * (z - T::one()) / (z - p)
}

fn check_probability<T: Real>(p: T, name: &str) -> Result<()> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain(format!("{name} = {p} outside [0, 1]")));
    }
    Ok(())
}

/// `H_mu(H_nu(z))`, the reciprocal Cauchy transform of the monotone additive
/// convolution of `mu` and `nu`.
pub fn monotone_additive_h<T: Real>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
    z: UpperHalfPlanePoint<T>,
) -> Result<Complex<T>> {
    let inner = reciprocal_cauchy(nu, z);
    if inner.im <= -T::lit(1e-14) || !inner.im.is_finite() {
        return Err(Error::Domain(format!(
            "H_nu(z) = {inner} left the upper half-plane"
        )));
    }
    Ok(cauchy_raw(mu, inner).inv())
}

/// Mass at zero of `P + Q` for monotonically independent projections with
/// `phi(P) = 1 - p` and `phi(Q) = 1 - q`.
///
/// Evaluates `z / H_P(H_Q(z))` at `z = iy` for `y` in `{1e-3, 1e-4, 1e-5}`
/// and Richardson-extrapolates to `y = 0`.
pub fn atom_at_zero_monotone_projections<T: Real>(p: T, q: T) -> Result<T> {
    check_probability(p, "p")?;
    check_probability(q, "q")?;
    let ten = T::lit(10.0);
    let f = |y: T| {
        let z = Complex::new(T::zero(), y);
        z / bernoulli_h_raw(p, bernoulli_h_raw(q, z))
    };
    let (y0, y1, y2) = (T::lit(1e-3), T::lit(1e-4), T::lit(1e-5));
    let (f0, f1, f2) = (f(y0), f(y1), f(y2));
    // first level removes the O(y) term, second level the O(y^2) term
    let r01 = (f1 * ten - f0) / (ten - T::one());
    let r12 = (f2 * ten - f1) / (ten - T::one());
    let hundred = ten * ten;
    let r = (r12 * hundred - r01) / (hundred - T::one());
    Ok(r.re)
}
