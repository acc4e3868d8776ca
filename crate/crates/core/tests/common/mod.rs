#![allow(dead_code)]

use maxconv::Measure;
use proptest::prelude::*;

/// Raw `(x, w)` pairs with positive weights summing to one; atoms on the
/// quarter lattice in `[-3, 3]` or anywhere in that range.
pub fn pairs(max_atoms: usize, nonnegative: bool) -> impl Strategy<Value = Vec<(f64, f64)>> {
    let (lo, hi) = if nonnegative { (0, 24) } else { (-12, 12) };
    let lattice = prop::collection::vec((lo..=hi).prop_map(|k| k as f64 * 0.25), 1..=max_atoms);
    let span = (lo as f64 * 0.25)..=(hi as f64 * 0.25);
    let continuous = prop::collection::vec(span, 1..=max_atoms);
    prop_oneof![lattice, continuous]
        .prop_flat_map(|xs| {
            let n = xs.len();
            (Just(xs), prop::collection::vec(0.05f64..1.0, n))
        })
        .prop_map(|(xs, ws)| {
            let total: f64 = ws.iter().sum();
            xs.into_iter()
                .zip(ws.into_iter().map(|w| w / total))
                .collect()
        })
}

pub fn measure(max_atoms: usize) -> impl Strategy<Value = Measure> {
    pairs(max_atoms, false).prop_map(|p| Measure::with_mass_tolerance(p, 1e-9).unwrap())
}

pub fn nonneg_measure(max_atoms: usize) -> impl Strategy<Value = Measure> {
    pairs(max_atoms, true).prop_map(|p| Measure::with_mass_tolerance(p, 1e-9).unwrap())
}

/// Mass of `(-inf, x]` summed directly from raw pairs.
pub fn naive_cdf(pairs: &[(f64, f64)], x: f64) -> f64 {
    pairs
        .iter()
        .filter(|&&(a, _)| a <= x)
        .map(|&(_, w)| w)
        .sum()
}

/// Every atom of every measure plus points between and around them.
pub fn probe_points(ms: &[&Measure]) -> Vec<f64> {
    let mut grid: Vec<f64> = ms.iter().flat_map(|m| m.atoms().iter().copied()).collect();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mut out = vec![grid[0] - 1.0];
    for w in grid.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(*grid.last().unwrap());
    out.push(grid.last().unwrap() + 1.0);
    out
}

/// Largest CDF gap at the probe points, left limits included.
pub fn sup_gap(a: &Measure, b: &Measure) -> f64 {
    probe_points(&[a, b])
        .into_iter()
        .map(|x| {
            (a.cdf(x) - b.cdf(x))
                .abs()
                .max((a.cdf_left(x) - b.cdf_left(x)).abs())
        })
        .fold(0.0, f64::max)
}
