//! Max-convolutions of non-commutative probability on finite discrete measures.
//!
//! * [`max_conv`]: classical, free, Boolean and monotone max-convolutions and
//!   the free max-convolution power, as exact operations on [`DiscreteMeasure`].
//! * [`subordination`]: the subordination measure `A_sigma(mu)` satisfying
//!   `sigma [free max] mu = sigma [classical max] A_sigma(mu)`, and verifiers
//!   for its algebraic identities.
//! * [`transforms`]: Cauchy transforms and the monotone additive composition.
//! * [`operator_model`]: a matrix model of monotone independence with spectral
//!   projections, projection meets and spectral maxima.
//!
//! Everything is generic over a [`Real`] scalar; the aliases below fix `f64`,
//! and the `*32` aliases fix `f32`.

pub mod error;
pub mod io;
pub mod max_conv;
pub mod measure;
pub mod operator_model;
pub mod random;
pub mod scalar;
pub mod subordination;
pub mod suites;
pub mod transforms;

pub use error::{Error, Result};
pub use max_conv::{boolean_max, classical_max, free_max, free_max_power, monotone_max, MaxKind};
pub use measure::{CdfPoint, NamedLaw};
pub use scalar::Real;
pub use subordination::{subordinate, u_set, Report};

pub type DiscreteMeasure<T = f64> = measure::DiscreteMeasure<T>;
pub type Measure = measure::DiscreteMeasure<f64>;
pub type Measure32 = measure::DiscreteMeasure<f32>;
pub type SupportRegion = subordination::SupportRegion<f64>;
pub type UpperHalfPlanePoint = transforms::UpperHalfPlanePoint<f64>;
pub type PointedSpace = operator_model::PointedSpace<f64>;
pub type HermitianOperator = operator_model::HermitianOperator<f64>;
pub type ProjectionMatrix = operator_model::ProjectionMatrix<f64>;
