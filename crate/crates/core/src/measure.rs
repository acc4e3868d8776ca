//! Finite atomic probability measures on the real line.
//!
//! A [`DiscreteMeasure`] keeps its atoms sorted together with the weights and
//! the running CDF. Every CDF in this library is right-continuous: the mass
//! sitting at `x` is counted in `F(x)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct DiscreteMeasure<T> {
    atoms: Vec<T>,
    weights: Vec<T>,
    cdf: Vec<T>,
}

/// One point of a CDF step function, used for tabular output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CdfPoint<T> {
    pub location: T,
    pub value: T,
}

impl<T: Real> PartialEq for DiscreteMeasure<T> {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.weights == other.weights
    }
}

impl<T: Real> DiscreteMeasure<T> {
    /// Builds a measure from `(location, weight)` pairs in any order.
    ///
    /// Pairs closer than [`Real::merge_tol`] are merged, zero and negligible
    /// weights are dropped, and the total must be one within [`Real::mass_tol`].
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, T)>,
    {
        Self::with_mass_tolerance(pairs, T::mass_tol())
    }

    /// Like [`DiscreteMeasure::new`] but accepts a total mass within `tol` of one,
    /// renormalizing afterwards.
    pub fn with_mass_tolerance<I>(pairs: I, tol: T) -> Result<Self>
    where
        I: IntoIterator<Item = (T, T)>,
    {
        let mut pairs: Vec<(T, T)> = pairs.into_iter().collect();
        for &(x, w) in &pairs {
            if !x.is_finite() {
                return Err(Error::Validation(format!("non-finite atom location {x}")));
            }
            if !w.is_finite() {
                return Err(Error::Validation(format!("non-finite weight at x={x}")));
            }
            if w < T::zero() {
                return Err(Error::Validation(format!("negative weight {w} at x={x}")));
            }
        }
        pairs.retain(|&(_, w)| w > T::zero());
        if pairs.is_empty() {
            return Err(Error::Validation(
                "measure has no atoms with positive weight".into(),
            ));
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

        let mut atoms: Vec<T> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<T> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            match atoms.last() {
                Some(&last) if x - last < T::merge_tol() => {
                    *weights.last_mut().unwrap() = *weights.last().unwrap() + w;
                }
                _ => {
                    atoms.push(x);
                    weights.push(w);
                }
            }
        }

        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        if (total - T::one()).abs() > tol {
            return Err(Error::Validation(format!("weights sum {total}")));
        }

        let keep: Vec<bool> = weights.iter().map(|&w| w > T::prune_tol()).collect();
        if !keep.iter().any(|&k| k) {
            return Err(Error::Validation("all weights negligible".into()));
        }
        let mut i = 0;
        atoms.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        let mut i = 0;
        weights.retain(|_| {
            i += 1;
            keep[i - 1]
        });

        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        let slack = T::lit(4.0) * T::epsilon() * T::lit(weights.len() as f64);
        if (total - T::one()).abs() > slack {
            for w in weights.iter_mut() {
                *w = *w / total;
            }
        }

        let cdf = running_cdf(&weights);
        Ok(Self {
            atoms,
            weights,
            cdf,
        })
    }

    pub fn dirac(x: T) -> Self {
        assert!(x.is_finite(), "dirac location must be finite");
        Self {
            atoms: vec![x],
            weights: vec![T::one()],
            cdf: vec![T::one()],
        }
    }

    /// Builds a measure from the values of a right-continuous step function
    /// sampled on a strictly increasing grid.
    ///
    /// `values[k]` is `F(grid[k])`; `F` is taken to be zero below `grid[0]`.
    /// Values are clamped into `[0, 1]` and made non-decreasing, jumps at or
    /// below [`Real::prune_tol`] are absorbed into the next atom, and the last
    /// value must reach one within [`Real::mass_tol`].
    pub fn from_cdf_values(grid: &[T], values: &[T]) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                got: values.len(),
            });
        }
        let mut atoms = Vec::new();
        let mut cdf: Vec<T> = Vec::new();
        let mut level = T::zero();
        for (&x, &v) in grid.iter().zip(values) {
            let v = v.max(T::zero()).min(T::one()).max(level);
            match atoms.last() {
                Some(&last) if x - last < T::merge_tol() => {
                    *cdf.last_mut().unwrap() = v;
                    level = v;
                }
                _ => {
                    if v - level > T::prune_tol() {
                        atoms.push(x);
                        cdf.push(v);
                        level = v;
                    }
                }
            }
        }
        match cdf.last_mut() {
            Some(last) if (*last - T::one()).abs() <= T::mass_tol() => *last = T::one(),
            Some(last) => {
                return Err(Error::Validation(format!(
                    "step function ends at {last}, not 1"
                )))
            }
            None => return Err(Error::Validation("step function never leaves 0".into())),
        }
        let weights = cdf
            .iter()
            .scan(T::zero(), |prev, &c| {
                let w = c - *prev;
                *prev = c;
                Some(w)
            })
            .collect();
        Ok(Self {
            atoms,
            weights,
            cdf,
        })
    }

    /// Maximum-likelihood empirical measure of a sample.
    pub fn empirical_from_samples(xs: &[T]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::Domain("empirical measure of an empty sample".into()));
        }
        if let Some(x) = xs.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("non-finite sample value {x}")));
        }
        let mut sorted = xs.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = T::lit(xs.len() as f64);
        let mut pairs = Vec::new();
        let mut start = 0;
        while start < sorted.len() {
            let end = start
                + sorted[start..]
                    .iter()
                    .take_while(|&&v| v == sorted[start])
                    .count();
            pairs.push((sorted[start], T::lit((end - start) as f64) / n));
            start = end;
        }
        Self::new(pairs)
    }

    /// Equal-weight quantile grid approximation of a named continuous law.
    pub fn discretize(law: &NamedLaw<T>, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "discretization needs n >= 2, got {n}"
            )));
        }
        law.validate()?;
        let nf = T::lit(n as f64);
        let grid: Vec<T> = (0..n)
            .map(|k| law.quantile((T::lit(k as f64) + T::lit(0.5)) / nf))
            .collect();
        let values: Vec<T> = (1..=n).map(|k| T::lit(k as f64) / nf).collect();
        Self::from_cdf_values(&grid, &values)
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.atoms.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn min_atom(&self) -> T {
        self.atoms[0]
    }

    pub fn max_atom(&self) -> T {
        self.atoms[self.atoms.len() - 1]
    }

    /// `F(x)`: mass of `(-inf, x]`.
    pub fn cdf(&self, x: T) -> T {
        let k = self.atoms.partition_point(|&a| a <= x);
        if k == 0 {
            T::zero()
        } else {
            self.cdf[k - 1]
        }
    }

    /// Left limit `F(x-)`: mass of `(-inf, x)`.
    pub fn cdf_left(&self, x: T) -> T {
        let k = self.atoms.partition_point(|&a| a < x);
        if k == 0 {
            T::zero()
        } else {
            self.cdf[k - 1]
        }
    }

    /// Tail `1 - F(x)`: mass of `(x, inf)`.
    pub fn tail(&self, x: T) -> T {
        T::one() - self.cdf(x)
    }

    /// Generalized inverse `inf { x : F(x) >= u }` for `u` in `(0, 1]`.
    pub fn quantile(&self, u: T) -> Result<T> {
        if !(u > T::zero() && u <= T::one()) {
            return Err(Error::Domain(format!("quantile level {u} outside (0, 1]")));
        }
        let k = self.cdf.partition_point(|&c| c < u);
        Ok(self.atoms[k.min(self.atoms.len() - 1)])
    }

    /// `n` i.i.d. draws by inverse-CDF sampling from a ChaCha stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<T> {
        (0..n)
            .map(|_| {
                let u = T::lit(1.0 - rng.random::<f64>());
                let k = self.cdf.partition_point(|&c| c < u);
                self.atoms[k.min(self.atoms.len() - 1)]
            })
            .collect()
    }

    /// Kolmogorov-Smirnov distance, evaluated at every atom of either measure
    /// and at the left limits there.
    pub fn ks_distance(&self, other: &Self) -> T {
        union_grid(&[self, other])
            .into_iter()
            .map(|x| {
                let at = (self.cdf(x) - other.cdf(x)).abs();
                let left = (self.cdf_left(x) - other.cdf_left(x)).abs();
                at.max(left)
            })
            .fold(T::zero(), T::max)
    }

    /// Kolmogorov-Smirnov distance after identifying atom locations that lie
    /// within `resolution` of each other.
    ///
    /// Atoms of both measures are clustered on the union grid; each CDF is read
    /// at the right end of every cluster and just left of its start. Measures
    /// whose atoms come from numerically computed eigenvalues are compared this way.
    pub fn ks_distance_within(&self, other: &Self, resolution: T) -> T {
        let grid = union_grid(&[self, other]);
        let mut clusters: Vec<(T, T)> = Vec::new();
        for x in grid {
            match clusters.last_mut() {
                Some((_, hi)) if x - *hi <= resolution => *hi = x,
                _ => clusters.push((x, x)),
            }
        }
        clusters
            .into_iter()
            .map(|(lo, hi)| {
                let at = (self.cdf(hi) - other.cdf(hi)).abs();
                let left = (self.cdf_left(lo) - other.cdf_left(lo)).abs();
                at.max(left)
            })
            .fold(T::zero(), T::max)
    }

    pub fn cdf_points(&self) -> Vec<CdfPoint<T>> {
        self.atoms
            .iter()
            .zip(&self.cdf)
            .map(|(&location, &value)| CdfPoint { location, value })
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms[0] >= T::zero()
    }

    pub(crate) fn require_nonnegative(&self, what: &str) -> Result<()> {
        match self.atoms.iter().find(|&&a| a < T::zero()) {
            Some(a) => Err(Error::Domain(format!(
                "{what} requires support in [0, inf); found atom at {a}"
            ))),
            None => Ok(()),
        }
    }

    pub fn mean(&self) -> T {
        self.iter().fold(T::zero(), |acc, (x, w)| acc + x * w)
    }
}

fn running_cdf<T: Real>(weights: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    let mut cdf: Vec<T> = weights
        .iter()
        .map(|&w| {
            acc = acc + w;
            acc.min(T::one())
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = T::one();
    }
    cdf
}

/// Sorted, exactly deduplicated union of the atoms of `measures`.
pub fn union_grid<T: Real>(measures: &[&DiscreteMeasure<T>]) -> Vec<T> {
    let mut grid: Vec<T> = measures
        .iter()
        .flat_map(|m| m.atoms.iter().copied())
        .collect();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

/// Continuous laws available for quantile-grid discretization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedLaw<T> {
    /// Uniform on `[0, 1]`.
    Uniform01,
    /// Exponential with the given rate, conditioned on `[0, cap]`.
    TruncatedExponential { rate: T, cap: T },
}

impl<T: Real> NamedLaw<T> {
    fn validate(&self) -> Result<()> {
        match *self {
            NamedLaw::Uniform01 => Ok(()),
            NamedLaw::TruncatedExponential { rate, cap } => {
                if !(rate > T::zero() && rate.is_finite()) {
                    return Err(Error::Domain(format!(
                        "exponential rate {rate} must be positive"
                    )));
                }
                if !(cap > T::zero() && cap.is_finite()) {
                    return Err(Error::Domain(format!(
                        "truncation cap {cap} must be positive"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn cdf(&self, x: T) -> T {
        match *self {
            NamedLaw::Uniform01 => x.max(T::zero()).min(T::one()),
            NamedLaw::TruncatedExponential { rate, cap } => {
                let x = x.max(T::zero()).min(cap);
                (-rate * x).exp_m1() / (-rate * cap).exp_m1()
            }
        }
    }

    pub fn quantile(&self, u: T) -> T {
        match *self {
            NamedLaw::Uniform01 => u,
            NamedLaw::TruncatedExponential { rate, cap } => {
                -(u * (-rate * cap).exp_m1()).ln_1p() / rate
            }
        }
    }
}

impl<T: Real> FromStr for NamedLaw<T> {
    type Err = Error;

    /// Parses `uniform01` or `truncated_exponential(rate,cap)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "uniform01" {
            return Ok(NamedLaw::Uniform01);
        }
        let args = s
            .strip_prefix("truncated_exponential(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))?;
        let parsed: Vec<f64> = args
            .split(',')
            .map(|a| a.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("bad truncated_exponential parameters: {e}")))?;
        match parsed.as_slice() {
            [rate, cap] => {
                let law = NamedLaw::TruncatedExponential {
                    rate: T::lit(*rate),
                    cap: T::lit(*cap),
                };
                law.validate()?;
                Ok(law)
            }
            _ => Err(Error::Domain(
                "truncated_exponential takes exactly (rate, cap)".into(),
            )),
        }
    }
}

impl<T: Real> fmt::Display for DiscreteMeasure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(x, w)| format!("{w}·δ({x})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> DiscreteMeasure<f64> {
        DiscreteMeasure::new([(0.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    /// Direct summation over atoms, independent of the stored running CDF.
    fn cdf_by_summation(m: &DiscreteMeasure<f64>, x: f64) -> f64 {
        m.iter().filter(|&(a, _)| a <= x).map(|(_, w)| w).sum()
    }

    #[test]
    fn cdf_examples() {
        let d0 = DiscreteMeasure::dirac(0.0);
        assert_eq!(d0.cdf(0.0), 1.0);
        assert_eq!(d0.cdf(-0.5), 0.0);
        assert_eq!(half().cdf(0.5), cdf_by_summation(&half(), 0.5));
        assert_eq!(half().cdf(0.5), 0.5);
    }

    #[test]
    fn tail_examples() {
        let d0 = DiscreteMeasure::dirac(0.0);
        assert_eq!(d0.tail(0.0), 0.0);
        assert_eq!(d0.tail(-1.0), 1.0);
        assert_eq!(half().tail(0.0), 1.0 - cdf_by_summation(&half(), 0.0));
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(DiscreteMeasure::dirac(3.0).quantile(0.7).unwrap(), 3.0);
        assert_eq!(half().quantile(0.5).unwrap(), 0.0);
        assert_eq!(half().quantile(0.51).unwrap(), 1.0);
        assert_eq!(half().quantile(1.0).unwrap(), 1.0);
        assert!(matches!(half().quantile(0.0), Err(Error::Domain(_))));
        assert!(matches!(half().quantile(1.5), Err(Error::Domain(_))));
        assert!(matches!(half().quantile(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn sample_examples() {
        assert_eq!(DiscreteMeasure::dirac(2.0).sample(5, 99), vec![2.0; 5]);
        assert!(half().sample(0, 1).is_empty());
        let xs = half().sample(100_000, 42);
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
        assert_eq!(half().sample(50, 7), half().sample(50, 7));
    }

    #[test]
    fn empirical_examples() {
        let m = DiscreteMeasure::<f64>::empirical_from_samples(&[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(m.atoms(), &[1.0, 2.0]);
        assert!((m.weights()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.weights()[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            DiscreteMeasure::empirical_from_samples(&[5.0]).unwrap(),
            DiscreteMeasure::dirac(5.0)
        );
        assert!(matches!(
            DiscreteMeasure::<f64>::empirical_from_samples(&[]),
            Err(Error::Domain(_))
        ));
        let e = DiscreteMeasure::empirical_from_samples(&half().sample(10_000, 3)).unwrap();
        assert!(e.ks_distance(&half()) < 0.05);
    }

    #[test]
    fn discretize_examples() {
        let u2 = DiscreteMeasure::<f64>::discretize(&NamedLaw::Uniform01, 2).unwrap();
        assert_eq!(u2.atoms(), &[0.25, 0.75]);
        assert_eq!(u2.weights(), &[0.5, 0.5]);
        let u4 = DiscreteMeasure::<f64>::discretize(&NamedLaw::Uniform01, 4).unwrap();
        assert_eq!(u4.atoms(), &[0.125, 0.375, 0.625, 0.875]);
        assert!(u4.weights().iter().all(|&w| w == 0.25));
        assert!(matches!(
            DiscreteMeasure::<f64>::discretize(&NamedLaw::Uniform01, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn discretized_uniform_is_within_half_a_cell() {
        let n = 10_000;
        let m = DiscreteMeasure::<f64>::discretize(&NamedLaw::Uniform01, n).unwrap();
        // sup |F_n - F| is attained at atoms or their left limits
        let ks = m
            .iter()
            .map(|(x, _)| (m.cdf(x) - x).abs().max((m.cdf_left(x) - x).abs()))
            .fold(0.0, f64::max);
        assert!(ks <= 0.5 / n as f64 + 1e-12, "ks {ks}");
    }

    #[test]
    fn truncated_exponential_grid_matches_law() {
        let law: NamedLaw<f64> = "truncated_exponential(2.0, 3.0)".parse().unwrap();
        let m = DiscreteMeasure::discretize(&law, 400).unwrap();
        assert!(m.is_nonnegative() && m.max_atom() <= 3.0);
        for (x, _) in m.iter() {
            assert!((m.cdf(x) - law.cdf(x)).abs() <= 0.5 / 400.0 + 1e-12);
        }
    }

    #[test]
    fn unknown_family_is_a_domain_error() {
        assert!(matches!(
            "gaussian".parse::<NamedLaw<f64>>(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            "truncated_exponential(1)".parse::<NamedLaw<f64>>(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            "truncated_exponential(-1, 2)".parse::<NamedLaw<f64>>(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ks_examples() {
        assert_eq!(half().ks_distance(&half()), 0.0);
        let d0 = DiscreteMeasure::dirac(0.0);
        assert_eq!(d0.ks_distance(&DiscreteMeasure::dirac(1.0)), 1.0);
        assert_eq!(half().ks_distance(&d0), 0.5);
    }

    #[test]
    fn ks_within_resolution_ignores_location_jitter() {
        let a = DiscreteMeasure::new([(0.0, 0.5), (1.0, 0.5)]).unwrap();
        let b = DiscreteMeasure::new([(1e-14, 0.5), (1.0 - 1e-14, 0.5)]).unwrap();
        assert_eq!(a.ks_distance(&b), 0.5);
        assert_eq!(a.ks_distance_within(&b, 1e-9), 0.0);
        let c = DiscreteMeasure::new([(0.0, 0.25), (1.0, 0.75)]).unwrap();
        assert_eq!(a.ks_distance_within(&c, 1e-9), 0.25);
    }

    #[test]
    fn constructor_validation() {
        let err = DiscreteMeasure::new([(0.0, 0.6), (1.0, 0.6)]).unwrap_err();
        assert_eq!(err, Error::Validation("weights sum 1.2".into()));
        assert!(matches!(
            DiscreteMeasure::new([(0.0, -0.5), (1.0, 1.5)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            DiscreteMeasure::new([(f64::NAN, 1.0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            DiscreteMeasure::<f64>::new([]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn close_atoms_merge_and_tiny_weights_prune() {
        let m = DiscreteMeasure::new([(1.0, 0.25), (0.0, 0.5), (1.0 + 1e-13, 0.25)]).unwrap();
        assert_eq!(m.atoms(), &[0.0, 1.0]);
        assert_eq!(m.weights(), &[0.5, 0.5]);
        let m = DiscreteMeasure::new([(0.0, 1.0 - 1e-16), (1.0, 1e-16)]).unwrap();
        assert_eq!(m.atoms(), &[0.0]);
        assert_eq!(m.cdf(0.0), 1.0);
    }

    #[test]
    fn step_function_construction() {
        let m = DiscreteMeasure::from_cdf_values(&[0.0, 1.0, 2.0, 3.0], &[0.0, 0.25, 0.25, 1.0])
            .unwrap();
        assert_eq!(m.atoms(), &[1.0, 3.0]);
        assert_eq!(m.weights(), &[0.25, 0.75]);
        assert!(matches!(
            DiscreteMeasure::from_cdf_values(&[0.0, 1.0], &[0.2, 0.9]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            DiscreteMeasure::from_cdf_values(&[0.0], &[0.0]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn single_precision_works() {
        let m = DiscreteMeasure::<f32>::new([(0.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(m.cdf(0.5), 0.5);
        assert_eq!(m.quantile(0.75).unwrap(), 1.0);
    }
}
