//! Random inputs for the property suites: discrete measures engineered to hit
//! the interesting cases of the identities, and well-conditioned matrices.

use nalgebra::Complex;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::measure::DiscreteMeasure;
use crate::operator_model::{CMatrix, CVector, HermitianOperator, OperatorScalar, PointedSpace};
use crate::scalar::Real;

/// Spacing of the lattice that atoms and eigenvalues are drawn from.
pub const LATTICE_STEP: f64 = 0.25;

/// Random measure with `1..=max_atoms` distinct atoms on the lattice
/// `lo, lo + step, ..., hi`.
///
/// Weights are bounded below by roughly `0.05 / n` so that nonzero CDF
/// values never sit near the division guard.
pub fn lattice_measure<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    max_atoms: usize,
    lo: f64,
    hi: f64,
    step: f64,
) -> DiscreteMeasure<T> {
    let slots = ((hi - lo) / step).round() as usize + 1;
    let n = rng.random_range(1..=max_atoms.min(slots).max(1));
    let atoms: Vec<f64> = index::sample(rng, slots, n)
        .into_iter()
        .map(|k| lo + k as f64 * step)
        .collect();
    with_random_weights(rng, atoms)
}

/// Random measure with atoms drawn uniformly from `[lo, hi]`.
pub fn continuous_measure<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    max_atoms: usize,
    lo: f64,
    hi: f64,
) -> DiscreteMeasure<T> {
    let n = rng.random_range(1..=max_atoms.max(1));
    let atoms: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    with_random_weights(rng, atoms)
}

fn with_random_weights<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    atoms: Vec<f64>,
) -> DiscreteMeasure<T> {
    let raw: Vec<f64> = atoms.iter().map(|_| 0.05 + rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    DiscreteMeasure::with_mass_tolerance(
        atoms
            .into_iter()
            .zip(raw)
            .map(|(x, w)| (T::lit(x), T::lit(w / total))),
        T::lit(1e-6),
    )
    .expect("random weights are positive and normalized")
}

/// Input families for the identity checks. Each targets a different branch
/// of the case analysis on the region where `F_sigma + F_mu > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Atoms on a shared coarse lattice, so supports overlap often.
    Lattice,
    /// Atoms anywhere in an interval; supports are almost surely disjoint.
    Continuous,
    /// Every measure's support sits to the left of the next one's.
    Staircase,
    /// Reverse of [`Case::Staircase`].
    ReverseStaircase,
    /// All measures share one atom set, with different weights.
    SharedAtoms,
    /// The first measure is pushed far right, leaving its CDF zero on a long stretch.
    LateFirst,
    /// Point masses mixed with general measures.
    Diracs,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::Lattice,
        Case::Continuous,
        Case::Staircase,
        Case::ReverseStaircase,
        Case::SharedAtoms,
        Case::LateFirst,
        Case::Diracs,
    ];
}

/// `count` measures for one trial of `case`. With `nonnegative` every support
/// lies in `[0, inf)`.
pub fn measures<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    case: Case,
    count: usize,
    nonnegative: bool,
) -> Vec<DiscreteMeasure<T>> {
    let (lo, hi) = if nonnegative { (0.0, 6.0) } else { (-3.0, 3.0) };
    let mid = 0.5 * (lo + hi);
    match case {
        Case::Lattice => (0..count)
            .map(|_| lattice_measure(rng, 6, lo, hi, 0.5))
            .collect(),
        Case::Continuous => (0..count)
            .map(|_| continuous_measure(rng, 6, lo, hi))
            .collect(),
        Case::Staircase | Case::ReverseStaircase => {
            let width = (hi - lo) / count as f64;
            let mut ms: Vec<DiscreteMeasure<T>> = (0..count)
                .map(|k| {
                    let a = lo + k as f64 * width;
                    lattice_measure(rng, 4, a, a + 0.75 * width, 0.25 * width)
                })
                .collect();
            if case == Case::ReverseStaircase {
                ms.reverse();
            }
            ms
        }
        Case::SharedAtoms => {
            let template: DiscreteMeasure<f64> = lattice_measure(rng, 6, lo, hi, 0.5);
            (0..count)
                .map(|_| with_random_weights(rng, template.atoms().to_vec()))
                .collect()
        }
        Case::LateFirst => {
            let mut ms = vec![lattice_measure(rng, 3, hi - 1.0, hi, 0.5)];
            ms.extend((1..count).map(|_| lattice_measure(rng, 6, lo, mid, 0.5)));
            ms
        }
        Case::Diracs => (0..count)
            .map(|_| {
                if rng.random_bool(0.5) {
                    let k = rng.random_range(0..=((hi - lo) / 0.5) as usize);
                    DiscreteMeasure::dirac(T::lit(lo + 0.5 * k as f64))
                } else {
                    lattice_measure(rng, 4, lo, hi, 0.5)
                }
            })
            .collect(),
    }
}

/// Unitary matrix from the QR factorization of a complex Gaussian matrix.
pub fn unitary<T: OperatorScalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix<T> {
    let g = CMatrix::<T>::from_fn(n, n, |_, _| gaussian(rng));
    g.qr().q()
}

fn gaussian<T: OperatorScalar, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Uniformly random unit vector in `C^n`.
pub fn pointed_space<T: OperatorScalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> PointedSpace<T> {
    let v = CVector::<T>::from_fn(n, |_, _| gaussian(rng));
    PointedSpace::normalized(v).expect("Gaussian vector is nonzero")
}

/// `U D U*` with eigenvalues drawn (with repetition) from the quarter lattice
/// in `[-2, 2]`, so coincidences between operators happen and all other gaps
/// are at least `LATTICE_STEP`.
pub fn hermitian_lattice<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> HermitianOperator<T> {
    lattice_operator(rng, n, -8)
}

/// Positive semidefinite variant of [`hermitian_lattice`], spectrum in `[0, 2]`.
pub fn psd_lattice<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> HermitianOperator<T> {
    lattice_operator(rng, n, 0)
}

fn lattice_operator<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    lowest: i32,
) -> HermitianOperator<T> {
    let spectrum: Vec<T> = (0..n)
        .map(|_| T::lit(rng.random_range(lowest..=8) as f64 * LATTICE_STEP))
        .collect();
    let u = unitary::<T, R>(rng, n);
    HermitianOperator::from_spectrum(&spectrum, &u).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let u = unitary::<f64, _>(&mut rng, 5);
        let defect = (u.adjoint() * &u - CMatrix::<f64>::identity(5, 5)).norm();
        assert!(defect < 1e-12);
    }

    #[test]
    fn case_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let ms: Vec<DiscreteMeasure<f64>> = measures(&mut rng, Case::Staircase, 3, false);
            assert!(ms[0].max_atom() < ms[1].min_atom() && ms[1].max_atom() < ms[2].min_atom());
            let ms: Vec<DiscreteMeasure<f64>> = measures(&mut rng, Case::SharedAtoms, 2, true);
            assert_eq!(ms[0].atoms(), ms[1].atoms());
            assert!(ms.iter().all(|m| m.is_nonnegative()));
            for case in Case::ALL {
                let ms: Vec<DiscreteMeasure<f64>> = measures(&mut rng, case, 3, true);
                assert!(ms.iter().all(|m| m.is_nonnegative()), "{case:?}");
            }
        }
    }
}
