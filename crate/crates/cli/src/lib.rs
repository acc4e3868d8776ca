//! Command-line front end: convolutions, subordination, verification suites,
//! sampling, CDF export and the operator-model demo.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 bad input
//! (unreadable or malformed measure file, domain violation).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use maxconv::io::{cdf_csv, load_measure, to_json};
use maxconv::suites::{monotone_pair_laws, run_suites, Suite};
use maxconv::{free_max_power, subordinate, Error, MaxKind, Measure};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Seed used by stochastic verbs when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Parser)]
#[command(
    name = "maxconv",
    version,
    about = "Max-convolutions of discrete probability measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Max-convolution of two measures.
    Conv {
        #[arg(long, value_parser = parse_kind)]
        kind: MaxKind,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Output JSON file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Free max-convolution power for real t >= 1.
    Power {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subordination measure of `mu` with respect to `sigma`.
    Subordinate {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized identity checks and print a JSON report.
    Verify {
        /// decomposition, composition, distributivity, power, boolean,
        /// theorem1, prop-projections or all.
        #[arg(long, value_parser = parse_suites)]
        suite: Selection,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw i.i.d. samples, one per line.
    Sample {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the CDF step function as CSV.
    EmitCdf {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random monotone pair: spectral-maximum CDF next to the classical max of the marginals.
    OperatorDemo {
        /// Component dimensions as `D1,D2`.
        #[arg(long, value_parser = parse_dims, default_value = "3,2")]
        dims: (usize, usize),
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_kind(s: &str) -> Result<MaxKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Debug)]
struct Selection(Vec<Suite>);

fn parse_suites(s: &str) -> Result<Selection, String> {
    Suite::parse_selection(s)
        .map(Selection)
        .map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected D1,D2, got {s:?}"))?;
    let d1: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension {a:?}"))?;
    let d2: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension {b:?}"))?;
    if d1 == 0 || d2 == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((d1, d2))
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Measure, Failure> {
    load_measure(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", path.display()),
        }),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn seed_or_default(seed: Option<u64>, stderr: &mut dyn Write) -> Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None => {
            writeln!(stderr, "seed: {DEFAULT_SEED}")?;
            Ok(DEFAULT_SEED)
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Conv { kind, a, b, out } => {
            let r = kind.apply(&load(&a)?, &load(&b)?)?;
            emit(&(to_json(&r) + "\n"), out.as_deref(), stdout)?;
        }
        Command::Power { t, a, out } => {
            let r = free_max_power(&load(&a)?, t)?;
            emit(&(to_json(&r) + "\n"), out.as_deref(), stdout)?;
        }
        Command::Subordinate { sigma, mu, out } => {
            let r = subordinate(&load(&sigma)?, &load(&mu)?);
            emit(&(to_json(&r) + "\n"), out.as_deref(), stdout)?;
        }
        Command::Verify {
            suite,
            trials,
            seed,
        } => {
            let seed = seed_or_default(seed, stderr)?;
            let report = run_suites(&suite.0, trials, seed);
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            writeln!(stdout, "{json}")?;
            if !report.pass {
                for r in report.suites.iter().filter(|r| !r.pass) {
                    writeln!(
                        stderr,
                        "{} failed in {} of {} trials; worst error {:e} at x = {} (trial {})",
                        r.suite, r.failures, r.trials, r.max_error, r.witness_x, r.worst_trial
                    )?;
                }
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Sample { a, n, seed } => {
            let seed = seed_or_default(seed, stderr)?;
            let m = load(&a)?;
            let mut text = String::new();
            for x in m.sample(n, seed) {
                text.push_str(&format!("{x}\n"));
            }
            stdout.write_all(text.as_bytes())?;
        }
        Command::EmitCdf { a, out } => {
            emit(&cdf_csv(&load(&a)?), out.as_deref(), stdout)?;
        }
        Command::OperatorDemo {
            dims: (d1, d2),
            seed,
        } => {
            let seed = seed_or_default(seed, stderr)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (smax, expected) = monotone_pair_laws(&mut rng, d1, d2, true)?;
            let mut grid: Vec<f64> = smax
                .atoms()
                .iter()
                .chain(expected.atoms())
                .copied()
                .collect();
            grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
            grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
            let mut text = String::from("x,spectral_max,classical_max\n");
            for x in grid {
                let probe = x + 1e-9;
                text.push_str(&format!(
                    "{x},{},{}\n",
                    smax.cdf(probe),
                    expected.cdf(probe)
                ));
            }
            text.push_str(&format!(
                "# ks {:e}\n",
                smax.ks_distance_within(&expected, 1e-9)
            ));
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}
