//! Finite-dimensional operator model of monotone independence.
//!
//! Self-adjoint operators are dense complex Hermitian matrices, states are
//! vector states `A -> <A xi, xi>`, and the spectral maximum `a ∨ b` is
//! described through its spectral projections
//! `E_{a∨b}((-inf, x]) = E_a((-inf, x]) ∧ E_b((-inf, x])`.
//! The monotone pair `X ⊗ |xi2><xi2|`, `I ⊗ Y` on `H1 ⊗ H2` with the product
//! vector `xi1 ⊗ xi2` gives a concrete monotonically independent pair.

use nalgebra::{DMatrix, DVector, RealField, SymmetricEigen, SVD};
use num_complex::Complex;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::random;
use crate::scalar::Real;
use crate::subordination::Report;

/// Scalars usable in the matrix model.
pub trait OperatorScalar: Real + RealField {}

impl<T: Real + RealField> OperatorScalar for T {}

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

fn c<T: OperatorScalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

fn max_abs<T: OperatorScalar>(m: &CMatrix<T>) -> T {
    Float::sqrt(
        m.iter()
            .fold(T::zero(), |acc, z| Float::max(acc, z.norm_sqr())),
    )
}

fn hermitian_defect<T: OperatorScalar>(m: &CMatrix<T>) -> T {
    max_abs(&(m - m.adjoint()))
}

/// Orthogonal projection onto the span of orthonormal `vectors`.
fn span_projection<T: OperatorScalar>(
    dim: usize,
    vectors: impl IntoIterator<Item = CVector<T>>,
) -> CMatrix<T> {
    let mut p = CMatrix::<T>::zeros(dim, dim);
    for v in vectors {
        p += &v * v.adjoint();
    }
    p
}

/// A Hilbert space `C^dim` with a distinguished unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedSpace<T: OperatorScalar> {
    xi: CVector<T>,
}

impl<T: OperatorScalar> PointedSpace<T> {
    pub fn new(xi: CVector<T>) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::Domain(
                "pointed space must have positive dimension".into(),
            ));
        }
        let norm = Float::sqrt(xi.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()));
        if Float::abs(norm - T::one()) > T::mass_tol() {
            return Err(Error::Validation(format!(
                "state vector has norm {norm}, expected 1"
            )));
        }
        Ok(Self { xi })
    }

    /// Normalizes `v` first.
    pub fn normalized(v: CVector<T>) -> Result<Self> {
        let norm = Float::sqrt(v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()));
        if !Float::is_finite(norm) || norm <= T::zero() {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        Self::new(v.map(|z| z / norm))
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut xi = CVector::<T>::zeros(dim);
        xi[k] = c(T::one());
        Self { xi }
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &CVector<T> {
        &self.xi
    }

    /// `(H1 ⊗ H2, xi1 ⊗ xi2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            xi: self.xi.kronecker(&other.xi),
        }
    }

    /// Rank-one projection onto `C xi`.
    pub fn state_projection(&self) -> ProjectionMatrix<T> {
        ProjectionMatrix {
            matrix: &self.xi * self.xi.adjoint(),
        }
    }
}

/// A bounded self-adjoint operator on `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T: OperatorScalar> {
    matrix: CMatrix<T>,
}

impl<T: OperatorScalar> HermitianOperator<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let defect = hermitian_defect(&matrix);
        if defect > T::mass_tol() {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian (defect {defect})"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let d = CVector::from_iterator(values.len(), values.iter().map(|&v| c(v)));
        Self {
            matrix: CMatrix::from_diagonal(&d),
        }
    }

    /// `U diag(spectrum) U*` for a unitary `U`, symmetrized to remove rounding.
    pub fn from_spectrum(spectrum: &[T], unitary: &CMatrix<T>) -> Result<Self> {
        if unitary.nrows() != spectrum.len() || !unitary.is_square() {
            return Err(Error::Dimension {
                expected: spectrum.len(),
                got: unitary.nrows(),
            });
        }
        let m = unitary * Self::diagonal(spectrum).matrix * unitary.adjoint();
        let half = c(T::lit(0.5));
        Self::new((&m + m.adjoint()) * half)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn spectrum(&self) -> Spectrum<T> {
        Spectrum::of(self)
    }
}

impl<T: OperatorScalar> AsRef<CMatrix<T>> for HermitianOperator<T> {
    fn as_ref(&self) -> &CMatrix<T> {
        &self.matrix
    }
}

/// An orthogonal projection.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMatrix<T: OperatorScalar> {
    matrix: CMatrix<T>,
}

impl<T: OperatorScalar> ProjectionMatrix<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let defect = hermitian_defect(&matrix);
        if defect > T::mass_tol() {
            return Err(Error::Validation(format!(
                "projection is not Hermitian (defect {defect})"
            )));
        }
        let idem = max_abs(&(&matrix * &matrix - &matrix));
        if idem > T::eig_tol() {
            return Err(Error::Validation(format!(
                "matrix is not idempotent (defect {idem})"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    /// Projection onto the span of orthonormal columns.
    pub fn onto(vectors: &[CVector<T>]) -> Result<Self> {
        let dim = vectors.first().map(|v| v.len()).ok_or_else(|| {
            Error::Domain("projection onto an empty family needs an explicit dimension".into())
        })?;
        Self::new(span_projection(dim, vectors.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        Self {
            matrix: CMatrix::identity(self.dim(), self.dim()) - &self.matrix,
        }
    }

    pub fn rank(&self) -> usize {
        let trace = self.matrix.trace().re;
        Float::round(trace).to_usize().unwrap_or(0)
    }

    /// `P ⊗ Q`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Operator order `self <= other`, i.e. `other - self` positive semidefinite.
    pub fn is_below(&self, other: &Self) -> bool {
        let diff = &other.matrix - &self.matrix;
        let eig = SymmetricEigen::new((&diff + diff.adjoint()) * c(T::lit(0.5)));
        eig.eigenvalues.iter().all(|&l| l >= -T::eig_tol())
    }

    pub fn as_operator(&self) -> HermitianOperator<T> {
        HermitianOperator {
            matrix: self.matrix.clone(),
        }
    }
}

impl<T: OperatorScalar> AsRef<CMatrix<T>> for ProjectionMatrix<T> {
    fn as_ref(&self) -> &CMatrix<T> {
        &self.matrix
    }
}

/// Eigen-decomposition of a Hermitian operator with eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Spectrum<T: OperatorScalar> {
    values: Vec<T>,
    vectors: Vec<CVector<T>>,
}

impl<T: OperatorScalar> Spectrum<T> {
    pub fn of(a: &HermitianOperator<T>) -> Self {
        let eig = SymmetricEigen::new(a.matrix.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
        Self {
            values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
            vectors: order
                .iter()
                .map(|&i| eig.eigenvectors.column(i).into_owned())
                .collect(),
        }
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.values
    }

    /// `E((-inf, x])`: projection onto eigenvectors with eigenvalue `<= x + eig_tol`.
    pub fn projection_leq(&self, x: T) -> ProjectionMatrix<T> {
        let dim = self.vectors.first().map_or(0, |v| v.len());
        let cut = x + T::eig_tol();
        ProjectionMatrix {
            matrix: span_projection(
                dim,
                self.values
                    .iter()
                    .zip(&self.vectors)
                    .filter(|(&l, _)| l <= cut)
                    .map(|(_, v)| v.clone()),
            ),
        }
    }

    /// Distinct eigenvalues, grouping those within `eig_tol`, each with the
    /// indices of its eigenvectors.
    fn groups(&self) -> Vec<(T, Vec<usize>)> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in self.values.iter().enumerate() {
            match groups.last_mut() {
                Some(members) if l - self.values[members[0]] <= T::eig_tol() => members.push(i),
                _ => groups.push(vec![i]),
            }
        }
        groups
            .into_iter()
            .map(|members| {
                let n = T::lit(members.len() as f64);
                let mean = members
                    .iter()
                    .fold(T::zero(), |acc, &i| acc + self.values[i])
                    / n;
                (mean, members)
            })
            .collect()
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}

/// `phi_xi(A) = <A xi, xi>`.
pub fn vector_state<T, M>(a: &M, s: &PointedSpace<T>) -> Result<T>
where
    T: OperatorScalar,
    M: AsRef<CMatrix<T>>,
{
    let a = a.as_ref();
    check_dim(s.dim(), a.nrows())?;
    Ok(s.xi.dotc(&(a * &s.xi)).re)
}

/// Spectral projection `E_A((-inf, x])`.
pub fn spectral_projection_leq<T: OperatorScalar>(
    a: &HermitianOperator<T>,
    x: T,
) -> ProjectionMatrix<T> {
    a.spectrum().projection_leq(x)
}

/// `P ∧ Q`: projection onto `range(P) ∩ range(Q)`, i.e. onto the null space of
/// `v -> ((I - P) v, (I - Q) v)`, found by singular-value thresholding.
pub fn projection_meet<T: OperatorScalar>(
    p: &ProjectionMatrix<T>,
    q: &ProjectionMatrix<T>,
) -> Result<ProjectionMatrix<T>> {
    check_dim(p.dim(), q.dim())?;
    let n = p.dim();
    let mut stacked = CMatrix::<T>::zeros(2 * n, n);
    stacked.rows_mut(0, n).copy_from(p.complement().matrix());
    stacked.rows_mut(n, n).copy_from(q.complement().matrix());
    let svd = SVD::new(stacked, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let null = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= T::eig_tol())
        .map(|(i, _)| v_t.row(i).adjoint());
    Ok(ProjectionMatrix {
        matrix: span_projection(n, null),
    })
}

/// `P ∨ Q = I - ((I - P) ∧ (I - Q))`.
pub fn projection_join<T: OperatorScalar>(
    p: &ProjectionMatrix<T>,
    q: &ProjectionMatrix<T>,
) -> Result<ProjectionMatrix<T>> {
    Ok(projection_meet(&p.complement(), &q.complement())?.complement())
}

/// Distribution of `A` in the vector state of `s`.
pub fn spectral_distribution<T: OperatorScalar>(
    a: &HermitianOperator<T>,
    s: &PointedSpace<T>,
) -> Result<DiscreteMeasure<T>> {
    check_dim(s.dim(), a.dim())?;
    let spectrum = a.spectrum();
    let pairs: Vec<(T, T)> = spectrum
        .groups()
        .into_iter()
        .map(|(value, members)| {
            let weight = members.iter().fold(T::zero(), |acc, &i| {
                acc + spectrum.vectors[i].dotc(&s.xi).norm_sqr()
            });
            (value, weight)
        })
        .collect();
    DiscreteMeasure::with_mass_tolerance(pairs, T::eig_tol())
}

/// A monotonically independent pair on `H1 ⊗ H2` together with its state.
#[derive(Clone, Debug)]
pub struct MonotonePair<T: OperatorScalar> {
    pub x: HermitianOperator<T>,
    pub y: HermitianOperator<T>,
    pub space: PointedSpace<T>,
}

/// `X ⊗ |xi2><xi2|` and `I ⊗ Y` with the product state `xi1 ⊗ xi2`.
pub fn monotone_pair<T: OperatorScalar>(
    x: &HermitianOperator<T>,
    s1: &PointedSpace<T>,
    y: &HermitianOperator<T>,
    s2: &PointedSpace<T>,
) -> Result<MonotonePair<T>> {
    check_dim(s1.dim(), x.dim())?;
    check_dim(s2.dim(), y.dim())?;
    let x_tilde = x.matrix.kronecker(s2.state_projection().matrix());
    let y_tilde = CMatrix::<T>::identity(s1.dim(), s1.dim()).kronecker(&y.matrix);
    Ok(MonotonePair {
        x: HermitianOperator { matrix: x_tilde },
        y: HermitianOperator { matrix: y_tilde },
        space: s1.tensor(s2),
    })
}

/// Sorted eigenvalues of both operators, merged within `eig_tol`.
fn joint_grid<T: OperatorScalar>(a: &Spectrum<T>, b: &Spectrum<T>) -> Vec<T> {
    let mut all: Vec<T> = a.values.iter().chain(&b.values).copied().collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut grid: Vec<T> = Vec::new();
    for v in all {
        match grid.last() {
            Some(&last) if v - last <= T::eig_tol() => {}
            _ => grid.push(v),
        }
    }
    grid
}

/// Distribution of the spectral maximum `A ∨ B` in the state of `s`.
pub fn spectral_maximum_distribution<T: OperatorScalar>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    s: &PointedSpace<T>,
) -> Result<DiscreteMeasure<T>> {
    check_dim(s.dim(), a.dim())?;
    check_dim(s.dim(), b.dim())?;
    let (sa, sb) = (a.spectrum(), b.spectrum());
    let grid = joint_grid(&sa, &sb);
    let mut values = Vec::with_capacity(grid.len());
    let mut prev = T::zero();
    for &x in &grid {
        let meet = projection_meet(&sa.projection_leq(x), &sb.projection_leq(x))?;
        let v = vector_state(&meet, s)?;
        if v < prev - T::eig_tol() {
            return Err(Error::Consistency(format!(
                "spectral maximum CDF decreases from {prev} to {v} at x = {x}"
            )));
        }
        prev = Float::max(prev, v);
        values.push(v);
    }
    DiscreteMeasure::from_cdf_values(&grid, &values)
}

/// Monotonically independent projections `P ⊗ |xi2><xi2|`, `I ⊗ Q` with
/// `phi(P) = 1 - p`, `phi(Q) = 1 - q`, in randomly rotated frames.
#[derive(Clone, Debug)]
pub struct ProjectionPair<T: OperatorScalar> {
    pub p: ProjectionMatrix<T>,
    pub q: ProjectionMatrix<T>,
    pub space: PointedSpace<T>,
}

/// Rank-one projection `P` on `C^dim` and a unit vector with `phi(P) = 1 - p`.
fn projection_with_state<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    p: T,
    dim: usize,
) -> Result<(ProjectionMatrix<T>, PointedSpace<T>)> {
    let u = random::unitary::<T, R>(rng, dim);
    let e1 = u.column(0).into_owned();
    let e2 = u.column(1).into_owned();
    let xi = &e1 * c(Float::sqrt(T::one() - p)) + &e2 * c(Float::sqrt(p));
    let proj = ProjectionMatrix::onto(&[e1])?;
    Ok((proj, PointedSpace::normalized(xi)?))
}

pub fn monotone_projection_pair<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    p: T,
    q: T,
    d1: usize,
    d2: usize,
) -> Result<ProjectionPair<T>> {
    for (name, v) in [("p", p), ("q", q)] {
        if !(v >= T::zero() && v <= T::one()) {
            return Err(Error::Domain(format!("{name} = {v} outside [0, 1]")));
        }
    }
    if d1 < 2 || d2 < 2 {
        return Err(Error::Domain(format!(
            "dimensions must be at least 2, got ({d1}, {d2})"
        )));
    }
    let (p1, s1) = projection_with_state(rng, p, d1)?;
    let (q2, s2) = projection_with_state(rng, q, d2)?;
    let pair = monotone_pair(&p1.as_operator(), &s1, &q2.as_operator(), &s2)?;
    Ok(ProjectionPair {
        p: ProjectionMatrix {
            matrix: pair.x.matrix,
        },
        q: ProjectionMatrix {
            matrix: pair.y.matrix,
        },
        space: pair.space,
    })
}

/// Checks `phi(P ∨ Q) = 1 - p q` for a monotone projection pair.
///
/// For projections `E_{P∨Q}((-inf, x]) = (I - P) ∧ (I - Q)` on `[0, 1)`, so the
/// join is evaluated through the complement of that meet; the report's
/// witness is the spectral point `x = 0`.
pub fn verify_prop_projections<T: OperatorScalar, R: Rng + ?Sized>(
    rng: &mut R,
    p: T,
    q: T,
    d1: usize,
    d2: usize,
) -> Result<Report> {
    let pair = monotone_projection_pair(rng, p, q, d1, d2)?;
    let join = projection_join(&pair.p, &pair.q)?;
    let phi = vector_state(&join, &pair.space)?;
    let err = Float::abs(phi - (T::one() - p * q));
    Ok(Report {
        max_error: err.as_f64(),
        witness_x: 0.0,
        pass: err <= T::eig_tol(),
    })
}
