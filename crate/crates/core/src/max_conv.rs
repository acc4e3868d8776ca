//! Classical, free, Boolean and monotone max-convolutions, and the free
//! max-convolution power.
//!
//! Each operation is a pointwise formula in the input CDFs. Those CDFs are
//! constant between atoms, so evaluating the formula on the union of the
//! input atoms determines the result exactly.

use crate::error::{Error, Result};
use crate::measure::{union_grid, DiscreteMeasure};
use crate::scalar::Real;

/// Applies a pointwise CDF formula on the union grid of `a` and `b`.
pub fn combine_cdfs<T, F>(
    a: &DiscreteMeasure<T>,
    b: &DiscreteMeasure<T>,
    formula: F,
) -> Result<DiscreteMeasure<T>>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let grid = union_grid(&[a, b]);
    let values: Vec<T> = grid.iter().map(|&x| formula(a.cdf(x), b.cdf(x))).collect();
    DiscreteMeasure::from_cdf_values(&grid, &values)
}

/// `F_a F_b`.
pub fn classical_cdf<T: Real>(fa: T, fb: T) -> T {
    fa * fb
}

/// `max(F_a + F_b - 1, 0)`.
///
/// Evaluated as `min - (1 - max)`: the subtraction `1 - max` is exact whenever
/// the result can be positive, and the form is bitwise symmetric.
pub fn free_cdf<T: Real>(fa: T, fb: T) -> T {
    let (lo, hi) = if fa <= fb { (fa, fb) } else { (fb, fa) };
    (lo - (T::one() - hi)).max(T::zero())
}

/// `F_a F_b / (F_a + F_b - F_a F_b)`, and zero whenever either factor is zero.
pub fn boolean_cdf<T: Real>(fa: T, fb: T) -> T {
    if fa == T::zero() || fb == T::zero() {
        return T::zero();
    }
    let prod = fa * fb;
    prod / (fa + fb - prod)
}

/// `max(t F - (t - 1), 0)`.
pub fn free_power_cdf<T: Real>(f: T, t: T) -> T {
    (t * f - (t - T::one())).max(T::zero())
}

/// Law of the maximum of two independent random variables.
pub fn classical_max<T: Real>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
) -> DiscreteMeasure<T> {
    combine_cdfs(mu, nu, classical_cdf).expect("product of CDFs is a CDF")
}

/// Law of the spectral maximum of freely independent operators.
pub fn free_max<T: Real>(mu: &DiscreteMeasure<T>, nu: &DiscreteMeasure<T>) -> DiscreteMeasure<T> {
    combine_cdfs(mu, nu, free_cdf).expect("free max of CDFs is a CDF")
}

/// Law of the spectral maximum of Boolean independent positive operators.
///
/// Both inputs must live on `[0, inf)`.
pub fn boolean_max<T: Real>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
) -> Result<DiscreteMeasure<T>> {
    mu.require_nonnegative("boolean max-convolution")?;
    nu.require_nonnegative("boolean max-convolution")?;
    combine_cdfs(mu, nu, boolean_cdf)
}

/// Law of the spectral maximum of monotonically independent operators.
///
/// This coincides with [`classical_max`]; the separate name documents intent
/// at call sites. `operator_model` checks the identity independently.
pub fn monotone_max<T: Real>(
    mu: &DiscreteMeasure<T>,
    nu: &DiscreteMeasure<T>,
) -> DiscreteMeasure<T> {
    classical_max(mu, nu)
}

/// Free max-convolution power `mu^{t}` for real `t >= 1`.
pub fn free_max_power<T: Real>(mu: &DiscreteMeasure<T>, t: T) -> Result<DiscreteMeasure<T>> {
    if t.is_nan() || t < T::one() || !t.is_finite() {
        return Err(Error::Domain(format!(
            "free max-convolution power needs t >= 1, got {t}"
        )));
    }
    let values: Vec<T> = mu
        .atoms()
        .iter()
        .map(|&x| free_power_cdf(mu.cdf(x), t))
        .collect();
    DiscreteMeasure::from_cdf_values(mu.atoms(), &values)
}

/// Names the four max-convolutions, for dispatch from data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxKind {
    Classical,
    Free,
    Boolean,
    Monotone,
}

impl MaxKind {
    pub fn apply<T: Real>(
        self,
        mu: &DiscreteMeasure<T>,
        nu: &DiscreteMeasure<T>,
    ) -> Result<DiscreteMeasure<T>> {
        match self {
            MaxKind::Classical => Ok(classical_max(mu, nu)),
            MaxKind::Free => Ok(free_max(mu, nu)),
            MaxKind::Boolean => boolean_max(mu, nu),
            MaxKind::Monotone => Ok(monotone_max(mu, nu)),
        }
    }
}

impl std::str::FromStr for MaxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(MaxKind::Classical),
            "free" => Ok(MaxKind::Free),
            "boolean" => Ok(MaxKind::Boolean),
            "monotone" => Ok(MaxKind::Monotone),
            other => Err(Error::Domain(format!(
                "unknown max-convolution kind {other:?}"
            ))),
        }
    }
}
