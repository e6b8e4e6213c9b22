//! The `gapshift` command line.
//!
//! Exit codes: `0` success, `1` usage or parse error, `2` certification
//! shortfall (a partial enclosure is still printed), `3` internal
//! consistency failure. Verdicts are JSON, tables are CSV; field names are
//! listed in `schema/output.schema.json`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::dynamics::{
    gap_distribution, is_mixing, sample_mme, verify_irreducibility, verify_synchronization, MixingStatus,
};
use crate::entropy::{empirical_entropy_table, solve_entropy, EntropyEnclosure, SolverConfig, TailBoundKind};
use crate::error::Error;
use crate::language::{count_table, enumerate_words_with_budget, DEFAULT_ENUMERATION_BUDGET};
use crate::shift::ShiftSpec;
use crate::spec_file::SpecFile;
use crate::word::format_word;

/// Overrides the solver's maximal truncation depth.
pub const MAX_DEPTH_ENV: &str = "GAPSHIFT_MAX_DEPTH";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

const SYNC_TRIALS: usize = 10_000;
const BRIDGE_TRIALS: usize = 1_000;
const CHECK_WORD_LEN: usize = 12;
const MIXING_PROBE_BOUND: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "gapshift", version, about = "Languages, entropy and dynamics of (S,w)-gap shifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified enclosure of the entropy (JSON).
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tol: Option<f64>,
        /// Report h in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// |B_n| for n = 1..n_max (CSV).
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Cross-check every row against brute-force enumeration.
        #[arg(long)]
        enumerate: bool,
    },
    /// Mixing verdict, synchronization and irreducibility trials (JSON).
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// A sample of the measure of maximal entropy: the word, then JSON stats.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mass_tol: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Complexity φ_w(n) for n = 0..n_max (CSV).
    Complexity {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Empirical entropy (1/n) ln |B_n| against the certified value (CSV).
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        bits: bool,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Shift-spec JSON document.
    pub spec: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Text of a finished command and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Self { code, stdout: String::new(), stderr }
    }
}

/// `lambda_lo, lambda_hi, h_lo, h_hi, truncation_depth, tail_bound_kind`
/// plus the unit of `h` and whether the enclosure is certified at `tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub h_lo: f64,
    pub h_hi: f64,
    pub truncation_depth: usize,
    pub tail_bound_kind: Option<TailBoundKind>,
    pub units: &'static str,
    pub certified: bool,
}

impl EntropyReport {
    fn new(e: &EntropyEnclosure, bits: bool) -> Self {
        let (h_lo, h_hi) = if bits { e.h_bits() } else { (e.h_lo, e.h_hi) };
        Self {
            lambda_lo: e.lambda.lo,
            lambda_hi: e.lambda.hi,
            h_lo,
            h_hi,
            truncation_depth: e.lambda.truncation_depth,
            tail_bound_kind: Some(e.lambda.tail_bound_kind),
            units: if bits { "bits" } else { "nats" },
            certified: true,
        }
    }

    fn partial(lambda_lo: f64, lambda_hi: f64, depth: usize, bits: bool) -> Self {
        let log = |x: f64| if bits { x.log2() } else { x.ln() };
        Self {
            lambda_lo,
            lambda_hi,
            h_lo: log(lambda_lo),
            h_hi: log(lambda_hi),
            truncation_depth: depth,
            tail_bound_kind: None,
            units: if bits { "bits" } else { "nats" },
            certified: false,
        }
    }
}

struct Loaded {
    file: SpecFile,
    spec: ShiftSpec,
}

impl Loaded {
    fn solver_config(&self, tol: Option<f64>) -> Result<SolverConfig, Outcome> {
        let section = self.file.solver();
        let mut cfg = SolverConfig::default();
        if let Some(t) = tol.or(section.tol) {
            cfg.tol = t;
        }
        if let Some(d) = section.max_depth {
            cfg.max_depth = d;
        }
        if let Ok(text) = std::env::var(MAX_DEPTH_ENV) {
            cfg.max_depth = text
                .trim()
                .parse()
                .map_err(|_| Outcome::fail(EXIT_USAGE, format!("{MAX_DEPTH_ENV} must be a positive integer, got `{text}`")))?;
        }
        Ok(cfg)
    }

    fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.file.solver().seed).unwrap_or(1)
    }
}

fn load(common: &Common) -> Result<Loaded, Outcome> {
    let file = SpecFile::load(&common.spec).map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
    let spec = file.to_shift_spec().map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
    Ok(Loaded { file, spec })
}

fn library_failure(e: Error) -> Outcome {
    let code = match e {
        Error::DepthExhausted { .. } => EXIT_UNCERTIFIED,
        Error::SynchronizationViolation { .. } => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    };
    Outcome::fail(code, e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn cmd_entropy(common: &Common, tol: Option<f64>, bits: bool) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let cfg = loaded.solver_config(tol)?;
    match solve_entropy(&loaded.spec, &cfg) {
        Ok(e) => Ok(Outcome::ok(to_json(&EntropyReport::new(&e, bits)))),
        Err(Error::DepthExhausted { lambda_lo, lambda_hi, depth }) => Ok(Outcome {
            code: EXIT_UNCERTIFIED,
            stdout: to_json(&EntropyReport::partial(lambda_lo, lambda_hi, depth, bits)),
            stderr: format!("enclosure width {:e} exceeds tol {:e} at depth {depth}\n", lambda_hi - lambda_lo, cfg.tol),
        }),
        Err(e) => Err(library_failure(e)),
    }
}

fn cmd_count(common: &Common, n_max: usize, enumerate: bool) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let counts = count_table(&loaded.spec, n_max).map_err(library_failure)?;
    let budget = loaded.file.solver().enumeration_budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let mut out = String::from(if enumerate { "n,count,empirical_entropy,enumerated_count\n" } else { "n,count,empirical_entropy\n" });
    let rates = empirical_entropy_table(&loaded.spec, n_max).map_err(library_failure)?;
    for (i, count) in counts.iter().enumerate() {
        let n = i + 1;
        write!(out, "{n},{count},{:.12}", rates[i]).unwrap();
        if enumerate {
            let listed = enumerate_words_with_budget(&loaded.spec, n, budget).map_err(library_failure)?.len();
            write!(out, ",{listed}").unwrap();
            if count != &listed.into() {
                out.push('\n');
                return Ok(Outcome {
                    code: EXIT_INCONSISTENT,
                    stdout: out,
                    stderr: format!("n = {n}: counting gives {count}, enumeration gives {listed}\n"),
                });
            }
        }
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

fn cmd_check(common: &Common, seed: Option<u64>) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let spec = &loaded.spec;
    let seed = loaded.seed(seed);
    let probe = spec.gap_set().enumeration_bound().unwrap_or(MIXING_PROBE_BOUND).min(MIXING_PROBE_BOUND);
    let verdict = is_mixing(spec, probe).map_err(library_failure)?;
    let mixing = match verdict.status {
        MixingStatus::Mixing => "yes",
        MixingStatus::NotMixing => "no",
        MixingStatus::UnknownUpTo(_) => "unknown",
    };
    let sync = verify_synchronization(spec, SYNC_TRIALS, CHECK_WORD_LEN, seed).map_err(library_failure)?;
    let irr = verify_irreducibility(spec, BRIDGE_TRIALS, CHECK_WORD_LEN, seed.wrapping_add(1)).map_err(library_failure)?;
    let report = json!({
        "mixing": mixing,
        "gcd": verdict.gcd_witness,
        "certificate": verdict.certificate,
        "probe_bound": probe,
        "synchronization": sync,
        "irreducibility": irr,
    });
    if irr.successes != irr.trials {
        return Ok(Outcome { code: EXIT_INCONSISTENT, stdout: to_json(&report), stderr: "a bridge failed verification\n".into() });
    }
    Ok(Outcome::ok(to_json(&report)))
}

fn cmd_sample(
    common: &Common,
    length: usize,
    seed: Option<u64>,
    mass_tol: Option<f64>,
    tol: Option<f64>,
) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let cfg = loaded.solver_config(tol)?;
    let mass_tol = mass_tol.or(loaded.file.solver().mass_tol).unwrap_or(1e-9);
    let entropy = solve_entropy(&loaded.spec, &cfg).map_err(library_failure)?;
    let dist = gap_distribution(&loaded.spec, &entropy.lambda, mass_tol).map_err(library_failure)?;
    let sample = sample_mme(&loaded.spec, &dist, length, loaded.seed(seed)).map_err(library_failure)?;
    let stats = sample.stats();
    let histogram: BTreeMap<String, usize> = stats.gap_histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let report = json!({
        "length": length,
        "zero_frequency_empirical": stats.zero_frequency_empirical,
        "zero_frequency_kac": dist.zero_frequency,
        "gap_histogram": histogram,
        "truncation_mass": dist.truncation_mass,
    });
    let mut out = format_word(&sample.word);
    out.push('\n');
    out.push_str(&serde_json::to_string(&report).unwrap());
    out.push('\n');
    Ok(Outcome::ok(out))
}

fn cmd_complexity(common: &Common, n_max: usize) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let mut out = String::from("n,complexity\n");
    for n in 0..=n_max {
        let phi = loaded.spec.factor_source().complexity(n).map_err(library_failure)?;
        writeln!(out, "{n},{phi}").unwrap();
    }
    Ok(Outcome::ok(out))
}

fn cmd_compare(common: &Common, n_max: usize, tol: Option<f64>, bits: bool) -> Result<Outcome, Outcome> {
    let loaded = load(common)?;
    let cfg = loaded.solver_config(tol)?;
    let entropy = solve_entropy(&loaded.spec, &cfg).map_err(library_failure)?;
    let scale = if bits { std::f64::consts::LN_2 } else { 1.0 };
    let rates = empirical_entropy_table(&loaded.spec, n_max).map_err(library_failure)?;
    let (h_lo, h_hi) = (entropy.h_lo / scale, entropy.h_hi / scale);
    let mut out = String::from("n,empirical_entropy,h_lo,h_hi,excess\n");
    for (i, rate) in rates.iter().enumerate() {
        let rate = rate / scale;
        writeln!(out, "{},{rate:.12},{h_lo:.12},{h_hi:.12},{:.12}", i + 1, rate - h_hi).unwrap();
    }
    Ok(Outcome::ok(out))
}

/// Runs a parsed command line and captures its output.
pub fn execute(cli: &Cli) -> Outcome {
    let (result, out) = match &cli.command {
        Command::Entropy { common, tol, bits } => (cmd_entropy(common, *tol, *bits), &common.out),
        Command::Count { common, n_max, enumerate } => (cmd_count(common, *n_max, *enumerate), &common.out),
        Command::Check { common, seed } => (cmd_check(common, *seed), &common.out),
        Command::Sample { common, length, seed, mass_tol, tol } => {
            (cmd_sample(common, *length, *seed, *mass_tol, *tol), &common.out)
        }
        Command::Complexity { common, n_max } => (cmd_complexity(common, *n_max), &common.out),
        Command::Compare { common, n_max, tol, bits } => (cmd_compare(common, *n_max, *tol, *bits), &common.out),
    };
    let mut outcome = result.unwrap_or_else(|failure| failure);
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return Outcome::fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
        }
        outcome.stdout.clear();
    }
    outcome
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}
