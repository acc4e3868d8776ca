//! Scalar abstraction shared by every module.
//!
//! Measures, convolutions and transforms are written against [`Real`], so the
//! same code runs in `f64` (the default, with the tight tolerances the
//! identities are checked at) and in `f32`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar with the tolerances the library works at.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Atoms closer than this are merged by constructors.
    fn merge_tol() -> Self;
    /// Allowed deviation of the total mass from one for a valid measure.
    fn mass_tol() -> Self;
    /// Jumps of a step function at or below this are dropped.
    fn prune_tol() -> Self;
    /// Threshold under which a CDF value counts as zero in a denominator.
    fn division_guard() -> Self;
    /// Sup-norm tolerance for the closed-form identity verifiers.
    fn identity_tol() -> Self;
    /// Eigenvalue grouping, singular-value and projection tolerance for matrix models.
    fn eig_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn merge_tol() -> Self {
        1e-12
    }
    fn mass_tol() -> Self {
        1e-12
    }
    fn prune_tol() -> Self {
        1e-15
    }
    fn division_guard() -> Self {
        1e-15
    }
    fn identity_tol() -> Self {
        1e-12
    }
    fn eig_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn merge_tol() -> Self {
        1e-6
    }
    fn mass_tol() -> Self {
        1e-5
    }
    fn prune_tol() -> Self {
        1e-7
    }
    fn division_guard() -> Self {
        1e-7
    }
    fn identity_tol() -> Self {
        1e-5
    }
    fn eig_tol() -> Self {
        1e-4
    }
}
