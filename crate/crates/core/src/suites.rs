//! Randomized verification suites for the subordination identities, the
//! spectral maximum of a monotone pair and the projection join formula.
//!
//! Every suite is deterministic in `(trials, seed)`: each trial draws from its
//! own ChaCha stream derived from the seed, the suite index and the trial index.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::max_conv::classical_max;
use crate::measure::{union_grid, DiscreteMeasure};
use crate::operator_model::{
    monotone_pair, spectral_distribution, spectral_maximum_distribution, verify_prop_projections,
};
use crate::random::{self, Case};
use crate::scalar::Real;
use crate::subordination::{
    boolean_decomposition, compare_cdfs, verify_composition, verify_decomposition,
    verify_free_distributivity, verify_power, Report,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Decomposition,
    Composition,
    Distributivity,
    Power,
    Boolean,
    SpectralMaximum,
    ProjectionJoin,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Decomposition,
        Suite::Composition,
        Suite::Distributivity,
        Suite::Power,
        Suite::Boolean,
        Suite::SpectralMaximum,
        Suite::ProjectionJoin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Decomposition => "decomposition",
            Suite::Composition => "composition",
            Suite::Distributivity => "distributivity",
            Suite::Power => "power",
            Suite::Boolean => "boolean",
            Suite::SpectralMaximum => "theorem1",
            Suite::ProjectionJoin => "prop-projections",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.parse().map(|suite| vec![suite])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// Aggregate over the trials of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub failures: usize,
    pub max_error: f64,
    pub witness_x: f64,
    /// Index of the trial that produced `max_error`.
    pub worst_trial: usize,
    pub tolerance: f64,
    pub pass: bool,
}

fn trial_rng(seed: u64, suite: Suite, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | trial as u64);
    rng
}

/// Tolerance each suite is held to.
pub fn tolerance<T: Real>(suite: Suite) -> T {
    match suite {
        Suite::SpectralMaximum | Suite::ProjectionJoin => T::eig_tol(),
        _ => T::identity_tol(),
    }
}

fn one_trial(suite: Suite, rng: &mut ChaCha8Rng, trial: usize) -> Result<Report> {
    let case = Case::ALL[trial % Case::ALL.len()];
    match suite {
        Suite::Decomposition => {
            let ms = random::measures::<f64, _>(rng, case, 2, false);
            Ok(verify_decomposition(&ms[0], &ms[1]))
        }
        Suite::Composition => {
            let ms = random::measures::<f64, _>(rng, case, 3, false);
            Ok(verify_composition(&ms[0], &ms[1], &ms[2]))
        }
        Suite::Distributivity => {
            let ms = random::measures::<f64, _>(rng, case, 3, false);
            Ok(verify_free_distributivity(&ms[0], &ms[1], &ms[2]))
        }
        Suite::Power => {
            let ms = random::measures::<f64, _>(rng, case, 2, false);
            let t = if trial.is_multiple_of(11) {
                1.0
            } else {
                rng.random_range(1.0..=5.0)
            };
            verify_power(&ms[0], &ms[1], t)
        }
        Suite::Boolean => {
            let ms = random::measures::<f64, _>(rng, case, 2, true);
            boolean_decomposition(&ms[0], &ms[1]).map(|(_, _, report)| report)
        }
        Suite::SpectralMaximum => spectral_maximum_trial(rng, trial),
        Suite::ProjectionJoin => {
            let pick = |rng: &mut ChaCha8Rng| match rng.random_range(0..6) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.random::<f64>(),
            };
            let (p, q) = (pick(rng), pick(rng));
            let (d1, d2) = (rng.random_range(2..=4), rng.random_range(2..=4));
            verify_prop_projections(rng, p, q, d1, d2)
        }
    }
}

/// Random monotone pair with component dimensions up to 4; compares the law
/// of the spectral maximum with the classical max of the marginal laws.
fn spectral_maximum_trial<R: Rng + ?Sized>(rng: &mut R, trial: usize) -> Result<Report> {
    let (d1, d2) = (rng.random_range(1..=4), rng.random_range(1..=4));
    let (smax, expected) = monotone_pair_laws(rng, d1, d2, trial.is_multiple_of(2))?;
    let tol = f64::eig_tol();
    let ks = smax.ks_distance_within(&expected, tol);
    let witness = compare_cdfs(&smax, &expected, &union_grid(&[&smax, &expected])).witness_x;
    Ok(Report {
        max_error: ks,
        witness_x: witness,
        pass: ks <= tol,
    })
}

/// Builds a random monotone pair on `C^d1 ⊗ C^d2` and returns the law of its
/// spectral maximum together with the classical max of the two marginal laws.
///
/// One operator is positive semidefinite (the first one when `psd_first`),
/// the other has a signed spectrum. When both spectra reach below zero the
/// two laws differ below zero; see `operator_model::signed_pair_cdf_below_zero`.
pub fn monotone_pair_laws<R: Rng + ?Sized>(
    rng: &mut R,
    d1: usize,
    d2: usize,
    psd_first: bool,
) -> Result<(DiscreteMeasure<f64>, DiscreteMeasure<f64>)> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Domain(format!(
            "dimensions must be positive, got {d1},{d2}"
        )));
    }
    let (x, y) = if psd_first {
        (
            random::psd_lattice::<f64, _>(rng, d1),
            random::hermitian_lattice(rng, d2),
        )
    } else {
        (
            random::hermitian_lattice::<f64, _>(rng, d1),
            random::psd_lattice(rng, d2),
        )
    };
    let s1 = random::pointed_space(rng, d1);
    let s2 = random::pointed_space(rng, d2);
    let pair = monotone_pair(&x, &s1, &y, &s2)?;
    let smax = spectral_maximum_distribution(&pair.x, &pair.y, &pair.space)?;
    let law_x = spectral_distribution(&pair.x, &pair.space)?;
    let law_y = spectral_distribution(&pair.y, &pair.space)?;
    Ok((smax, classical_max(&law_x, &law_y)))
}

/// Runs `trials` trials of `suite` from `seed`.
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> SuiteReport {
    let mut out = SuiteReport {
        suite: suite.name().to_string(),
        trials,
        failures: 0,
        max_error: 0.0,
        witness_x: 0.0,
        worst_trial: 0,
        tolerance: tolerance::<f64>(suite),
        pass: true,
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, suite, trial);
        let report = one_trial(suite, &mut rng, trial).unwrap_or(Report {
            max_error: f64::INFINITY,
            witness_x: f64::NAN,
            pass: false,
        });
        if !report.pass {
            out.failures += 1;
        }
        if report.max_error > out.max_error || (trial == 0 && !report.pass) {
            out.max_error = report.max_error;
            out.witness_x = report.witness_x;
            out.worst_trial = trial;
        }
    }
    out.pass = out.failures == 0;
    out
}

/// Report for a selection of suites, as printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

pub fn run_suites(suites: &[Suite], trials: usize, seed: u64) -> VerificationReport {
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, trials, seed)).collect();
    VerificationReport {
        seed,
        pass: reports.iter().all(|r| r.pass),
        suites: reports,
    }
}
