//! Subordination for free max-convolution.
//!
//! For measures `sigma`, `mu` the subordination measure `A_sigma(mu)` has CDF
//! `max(1 - tail_mu / F_sigma, 0)` (zero where `F_sigma` vanishes) and is the
//! unique factor with `sigma [free max] mu = sigma [classical max] A_sigma(mu)`.
//! The verifiers below evaluate both sides of each identity in closed form
//! and compare them on the union grid of all arguments, left limits included.

use std::fmt;
use std::ops::Bound;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::max_conv::{boolean_max, classical_max, free_max, free_max_power};
use crate::measure::{union_grid, DiscreteMeasure};
use crate::scalar::Real;

/// One connected piece of a [`SupportRegion`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lower: Bound<T>,
    pub upper: Bound<T>,
}

impl<T: Real> Interval<T> {
    pub fn contains(&self, x: T) -> bool {
        let above = match self.lower {
            Bound::Included(a) => x >= a,
            Bound::Excluded(a) => x > a,
            Bound::Unbounded => true,
        };
        let below = match self.upper {
            Bound::Included(b) => x <= b,
            Bound::Excluded(b) => x < b,
            Bound::Unbounded => true,
        };
        above && below
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower {
            Bound::Included(a) => write!(f, "[{a}, ")?,
            Bound::Excluded(a) => write!(f, "({a}, ")?,
            Bound::Unbounded => write!(f, "(-inf, ")?,
        }
        match self.upper {
            Bound::Included(b) => write!(f, "{b}]"),
            Bound::Excluded(b) => write!(f, "{b})"),
            Bound::Unbounded => write!(f, "inf)"),
        }
    }
}

/// A finite union of disjoint, sorted intervals whose last piece is unbounded above.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportRegion<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Real> SupportRegion<T> {
    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn contains(&self, x: T) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Infimum of the region.
    pub fn lower_end(&self) -> Bound<T> {
        self.intervals[0].lower
    }
}

impl<T: Real> fmt::Display for SupportRegion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(|iv| iv.to_string()).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// Membership test for `{x : tail_mu(x) < F_sigma(x)}`, written as
/// `F_sigma + F_mu > 1` so it is bitwise symmetric in the two arguments.
fn in_u<T: Real>(f_sigma: T, f_mu: T) -> bool {
    f_sigma + f_mu > T::one()
}

/// The region `U(sigma, mu) = {x : tail_mu(x) < F_sigma(x)}`.
pub fn u_set<T: Real>(sigma: &DiscreteMeasure<T>, mu: &DiscreteMeasure<T>) -> SupportRegion<T> {
    let grid = union_grid(&[sigma, mu]);
    let mut intervals: Vec<Interval<T>> = Vec::new();
    let mut open_start: Option<T> = None;
    for (k, &x) in grid.iter().enumerate() {
        // the predicate is constant on [grid[k], grid[k + 1])
        let inside = in_u(sigma.cdf(x), mu.cdf(x));
        match (inside, open_start) {
            (true, None) => open_start = Some(x),
            (false, Some(start)) => {
                intervals.push(Interval {
                    lower: Bound::Included(start),
                    upper: Bound::Excluded(x),
                });
                open_start = None;
            }
            _ => {}
        }
        if k + 1 == grid.len() {
            let start = open_start.expect("both CDFs reach 1 at the last atom");
            intervals.push(Interval {
                lower: Bound::Included(start),
                upper: Bound::Unbounded,
            });
        }
    }
    SupportRegion { intervals }
}

/// CDF value of the subordination measure given `F_sigma(x)` and `tail_mu(x)`.
pub fn subordination_cdf<T: Real>(f_sigma: T, tail_mu: T) -> T {
    if f_sigma < T::division_guard() {
        return T::zero();
    }
    (T::one() - tail_mu / f_sigma).max(T::zero())
}

/// The subordination measure `A_sigma(mu)`.
pub fn subordinate<T: Real>(
    sigma: &DiscreteMeasure<T>,
    mu: &DiscreteMeasure<T>,
) -> DiscreteMeasure<T> {
    let grid = union_grid(&[sigma, mu]);
    let values: Vec<T> = grid
        .iter()
        .map(|&x| subordination_cdf(sigma.cdf(x), mu.tail(x)))
        .collect();
    DiscreteMeasure::from_cdf_values(&grid, &values)
        .expect("subordination CDF reaches 1 at the last atom")
}

/// Outcome of an identity check: worst sup-grid error and where it occurred.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub max_error: f64,
    pub witness_x: f64,
    pub pass: bool,
}

impl Report {
    /// Worst of two reports, keeping the witness of the worse one.
    pub fn merge(self, other: Report) -> Report {
        let mut worse = if other.max_error > self.max_error {
            other
        } else {
            self
        };
        worse.pass = self.pass && other.pass;
        worse
    }

    /// `Ok` when the identity held, otherwise a consistency error carrying the witness.
    pub fn into_result(self) -> Result<Report> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::Consistency(format!(
                "identity violated by {} at x = {}",
                self.max_error, self.witness_x
            )))
        }
    }
}

/// Compares two CDFs at every point of `grid` and at the left limits there.
pub fn compare_cdfs<T: Real>(
    lhs: &DiscreteMeasure<T>,
    rhs: &DiscreteMeasure<T>,
    grid: &[T],
) -> Report {
    let mut max_error = T::zero();
    let mut witness = grid.first().copied().unwrap_or_else(T::zero);
    for &x in grid {
        let err = (lhs.cdf(x) - rhs.cdf(x))
            .abs()
            .max((lhs.cdf_left(x) - rhs.cdf_left(x)).abs());
        if err > max_error {
            max_error = err;
            witness = x;
        }
    }
    Report {
        max_error: max_error.as_f64(),
        witness_x: witness.as_f64(),
        pass: max_error <= T::identity_tol(),
    }
}

fn compare_all<T: Real>(
    lhs: &DiscreteMeasure<T>,
    rhs: &DiscreteMeasure<T>,
    args: &[&DiscreteMeasure<T>],
) -> Report {
    let mut all: Vec<&DiscreteMeasure<T>> = args.to_vec();
    all.push(lhs);
    all.push(rhs);
    compare_cdfs(lhs, rhs, &union_grid(&all))
}

/// `sigma [free max] mu == sigma [classical max] A_sigma(mu)`.
pub fn verify_decomposition<T: Real>(
    sigma: &DiscreteMeasure<T>,
    mu: &DiscreteMeasure<T>,
) -> Report {
    let lhs = classical_max(sigma, &subordinate(sigma, mu));
    let rhs = free_max(sigma, mu);
    compare_all(&lhs, &rhs, &[sigma, mu])
}

/// `A_{sigma1}(A_{sigma2}(mu)) == A_{sigma1 [classical max] sigma2}(mu)`.
pub fn verify_composition<T: Real>(
    sigma1: &DiscreteMeasure<T>,
    sigma2: &DiscreteMeasure<T>,
    mu: &DiscreteMeasure<T>,
) -> Report {
    let lhs = subordinate(sigma1, &subordinate(sigma2, mu));
    let rhs = subordinate(&classical_max(sigma1, sigma2), mu);
    compare_all(&lhs, &rhs, &[sigma1, sigma2, mu])
}

/// `A_sigma(mu1 [free max] mu2) == A_sigma(mu1) [free max] A_sigma(mu2)`.
pub fn verify_free_distributivity<T: Real>(
    sigma: &DiscreteMeasure<T>,
    mu1: &DiscreteMeasure<T>,
    mu2: &DiscreteMeasure<T>,
) -> Report {
    let lhs = subordinate(sigma, &free_max(mu1, mu2));
    let rhs = free_max(&subordinate(sigma, mu1), &subordinate(sigma, mu2));
    compare_all(&lhs, &rhs, &[sigma, mu1, mu2])
}

/// `A_sigma(mu^t) == A_sigma(mu)^t` for the free max-convolution power.
pub fn verify_power<T: Real>(
    sigma: &DiscreteMeasure<T>,
    mu: &DiscreteMeasure<T>,
    t: T,
) -> Result<Report> {
    let lhs = subordinate(sigma, &free_max_power(mu, t)?);
    let rhs = free_max_power(&subordinate(sigma, mu), t)?;
    Ok(compare_all(&lhs, &rhs, &[sigma, mu]))
}

/// Splits `sigma [free max] mu` into the Boolean max of `A_sigma(mu)` and
/// `A_mu(sigma)`; both inputs must live on `[0, inf)`.
pub fn boolean_decomposition<T: Real>(
    sigma: &DiscreteMeasure<T>,
    mu: &DiscreteMeasure<T>,
) -> Result<(DiscreteMeasure<T>, DiscreteMeasure<T>, Report)> {
    sigma.require_nonnegative("boolean decomposition")?;
    mu.require_nonnegative("boolean decomposition")?;
    let a_sigma_mu = subordinate(sigma, mu);
    let a_mu_sigma = subordinate(mu, sigma);
    let lhs = boolean_max(&a_sigma_mu, &a_mu_sigma)?;
    let rhs = free_max(sigma, mu);
    let report = compare_all(&lhs, &rhs, &[sigma, mu]);
    Ok((a_sigma_mu, a_mu_sigma, report))
}
