//! Command-line front end: parses descriptors and options into a
//! [`RunConfig`], runs one computation and writes its report.
//!
//! Exit codes: 0 when every verdict matches, 1 on a mismatch, 2 when a guard
//! or a truncation made the run inconclusive, 64 on a usage error.

mod output;
pub mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use theta_core::pairs::{build_pair, build_seesaw, DualPairDescriptor, Family};
use theta_core::report::Verdict;
use theta_core::spectra::{multiplicity_free_check, theta_character_spectrum, theta_spectrum_oracle, CharacterDatum};
use theta_core::transfer::{euler_sum_check, verify_theorem_e1, verify_theorem_ex2, TransferConfig};
use theta_core::verifier::{
    verify_howe_image, verify_infchar_correspondence, verify_scalar_action, verify_ugk_spans, SliceSpec,
};
use theta_core::weights::KTypeLabel;
use theta_core::Error;

pub use output::{Format, CACHE_ENV};

/// Exit code for usage errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "theta", version, about = "Exact Fock-model computations for real reductive dual pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableChoice {
    All,
    #[value(name = "1")]
    HighestWeight,
    #[value(name = "2")]
    Singular,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    /// Rank of the symplectic group, `n = r + s`; alone it means `r = s = n/2`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
}

impl SplitArgs {
    fn resolve(&self) -> Result<(usize, usize), String> {
        match (self.n, self.r, self.s) {
            (_, Some(r), Some(s)) if self.n.is_none_or(|n| n == r + s) => Ok((r, s)),
            (Some(n), Some(r), None) if r <= n => Ok((r, n - r)),
            (Some(n), None, Some(s)) if s <= n => Ok((n - s, s)),
            (Some(n), None, None) if n % 2 == 0 => Ok((n / 2, n / 2)),
            _ => Err("give --r and --s, or --n with at most one of them (n even if alone)".into()),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The transfer tables evaluated over a grid.
    Tables {
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Bound on r, s and n.
        #[arg(long, default_value_t = 4)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableChoice::All)]
        table: TableChoice,
    },
    /// K̃-spectrum of the theta lift of a character of the smaller member.
    ThetaSpectrum {
        pair: DualPairDescriptor,
        /// `trivial`, `det`, `1^{xi,eta}` or `det^t`.
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        /// Also compute the spectrum by brute force and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// `ω(U_k(g))` against the `G′`-invariants of the Weyl algebra.
    VerifyHowe {
        pair: DualPairDescriptor,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// `ω(U_k(g)^H)` against `ω(U_k′(h′)^{G′})` on a Fock slice.
    VerifyUgk {
        #[arg(long)]
        outer: DualPairDescriptor,
        #[arg(long)]
        inner: DualPairDescriptor,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        k_prime: u32,
        #[arg(long, default_value = "0..6", value_parser = parse_slice)]
        slice: SliceSpec,
    },
    /// Scalar action of `U(g)^H` on a lowest `M̃`-type.
    VerifyScalar {
        #[arg(long)]
        outer: DualPairDescriptor,
        #[arg(long)]
        inner: DualPairDescriptor,
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        /// `M̃`-type, e.g. `1/2⊠-1/2` (`x` may replace `⊠`).
        #[arg(long)]
        tau: KTypeLabel,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "0..4", value_parser = parse_slice)]
        slice: SliceSpec,
    },
    /// Central characters matched through the degenerate see-saw.
    VerifyInfchar {
        pair: DualPairDescriptor,
        #[arg(long, default_value_t = 2)]
        k_prime: u32,
        #[arg(long, default_value = "0..5", value_parser = parse_slice)]
        slice: SliceSpec,
    },
    /// `Γ^j θ^{m,0}(det^ε)` against the stable-range lifts.
    TransferE1 {
        #[arg(long, default_value = "C")]
        family: Family,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        eps: i64,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// Singular transfer `U(p,q) ⇝ U(p+r,q−r)`.
    TransferEx2 {
        #[arg(long, default_value = "A")]
        family: Family,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// `Σ_j Γ^j θ^{m,0}` against the sum of all lifts.
    EulerSum {
        #[arg(long, default_value = "C")]
        family: Family,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        eps: i64,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
}

/// `LO..HI` or `LO..=HI`, both inclusive.
fn parse_slice(s: &str) -> Result<SliceSpec, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("slice {s:?} is not LO..HI"))?;
    let hi = hi.trim_start_matches('=');
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("slice bound {t:?}"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty slice {s:?}"));
    }
    Ok(SliceSpec::new(lo, hi))
}

/// A validated command with its output options.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub output: OutputArgs,
}

/// Outcome of one computation: the report and its exit code.
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn verdict_code(report: &Value) -> i32 {
    match report.get("verdict").and_then(Value::as_str) {
        Some("match") | None => 0,
        Some("mismatch") => 1,
        _ => 2,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Config errors are usage errors; truncation artifacts are inconclusive.
fn error_code(e: &Error) -> i32 {
    match e {
        _ if e.is_inconclusive() => 2,
        Error::Parse(_)
        | Error::InvalidDescriptor(_)
        | Error::Hypothesis(_)
        | Error::Unsupported(_)
        | Error::Precondition(_)
        | Error::MissingData(_) => EXIT_USAGE,
        _ => 1,
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tables { .. } => "tables",
            Command::ThetaSpectrum { .. } => "theta-spectrum",
            Command::VerifyHowe { .. } => "verify-howe",
            Command::VerifyUgk { .. } => "verify-ugk",
            Command::VerifyScalar { .. } => "verify-scalar",
            Command::VerifyInfchar { .. } => "verify-infchar",
            Command::TransferE1 { .. } => "transfer-e1",
            Command::TransferEx2 { .. } => "transfer-ex2",
            Command::EulerSum { .. } => "euler-sum",
        }
    }

    /// Canonical description of the inputs, used for cache keys.
    pub fn describe(&self) -> String {
        format!("{self:?}")
    }

    pub fn execute(&self) -> theta_core::Result<Value> {
        Ok(match self {
            Command::Tables { family, r, s, max, .. } => {
                let grid = tables::Grid {
                    families: family.map_or_else(|| vec![Family::A, Family::C, Family::D], |f| vec![f]),
                    r: *r,
                    s: *s,
                    max: *max,
                };
                to_value(&tables::tables(&grid)?)
            }
            Command::ThetaSpectrum { pair, character, cutoff, oracle } => {
                let d = CharacterDatum::parse(*pair, character)?;
                let series = theta_character_spectrum(&d, *cutoff)?;
                let (free, repeated) = multiplicity_free_check(&series);
                let mut report = json!({
                    "kind": "theta_spectrum",
                    "config": { "pair": pair.to_string(), "char": d, "cutoff": cutoff },
                    "horizon": series.horizon(),
                    "series": series,
                    "multiplicity_free": free,
                    "repeated": repeated.iter().map(|(l, m)| json!([l.to_string(), m])).collect::<Vec<_>>(),
                    "verdict": "match",
                });
                if *oracle {
                    let slow = theta_spectrum_oracle(&d, *cutoff)?;
                    let diff = series.difference(&slow);
                    report["verdict"] = json!(if diff.is_empty() { "match" } else { "mismatch" });
                    report["oracle_difference"] = to_value(&diff);
                }
                report
            }
            Command::VerifyHowe { pair, k } => to_value(&verify_howe_image(&build_pair(pair)?, *k)?),
            Command::VerifyUgk { outer, inner, k, k_prime, slice } => {
                to_value(&verify_ugk_spans(&build_seesaw(outer, inner)?, *k, *k_prime, *slice)?)
            }
            Command::VerifyScalar { outer, inner, character, tau, k, slice } => {
                let d = CharacterDatum::parse(*outer, character)?;
                to_value(&verify_scalar_action(&build_seesaw(outer, inner)?, &d, tau, *k, *slice)?)
            }
            Command::VerifyInfchar { pair, k_prime, slice } => {
                to_value(&verify_infchar_correspondence(pair, *k_prime, *slice)?)
            }
            Command::TransferE1 { family, split, m, eps, j, cutoff } => {
                let (r, s) = split.resolve().map_err(Error::Parse)?;
                let cfg = TransferConfig::E1 { family: *family, m: *m, r, s, eps: *eps, j: *j, cutoff: *cutoff };
                to_value(&verify_theorem_e1(&cfg)?)
            }
            Command::TransferEx2 { family, p, q, k, r, cutoff } => {
                let cfg = TransferConfig::Ex2 { family: *family, p: *p, q: *q, k: *k, r: *r, cutoff: *cutoff };
                to_value(&verify_theorem_ex2(&cfg)?)
            }
            Command::EulerSum { family, split, m, eps, cutoff } => {
                let (r, s) = split.resolve().map_err(Error::Parse)?;
                let cfg = TransferConfig::E1 { family: *family, m: *m, r, s, eps: *eps, j: 0, cutoff: *cutoff };
                to_value(&euler_sum_check(&cfg)?)
            }
        })
    }
}

/// Runs one command; errors become a report with the matching exit code.
pub fn run_config(cfg: &RunConfig) -> Outcome {
    let cached = output::cache_lookup(&cfg.command);
    let hit = cached.is_some();
    let result = match cached {
        Some(v) => Ok(v),
        None => cfg.command.execute(),
    };
    match result {
        Ok(report) => {
            if !hit {
                output::cache_store(&cfg.command, &report);
            }
            Outcome { exit_code: verdict_code(&report), report }
        }
        Err(e) => {
            let code = error_code(&e);
            let verdict = if code == 2 { Verdict::Inconclusive } else { Verdict::Mismatch };
            let report = json!({
                "kind": "error",
                "command": cfg.command.name(),
                "error": e.to_string(),
                "verdict": if code == EXIT_USAGE { json!(null) } else { to_value(&verdict) },
            });
            Outcome { report, exit_code: code }
        }
    }
}

/// Full entry point: parse, run, write. Returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = RunConfig { command: cli.command, output: cli.output };
    if let Err(msg) = output::validate(&cfg) {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let outcome = run_config(&cfg);
    if outcome.exit_code == EXIT_USAGE {
        eprintln!("error: {}", outcome.report["error"].as_str().unwrap_or("invalid input"));
        return EXIT_USAGE;
    }
    match output::emit(&cfg, &outcome) {
        Ok(()) => outcome.exit_code,
        Err(e) => {
            eprintln!("error: cannot write the report: {e}");
            1
        }
    }
}
