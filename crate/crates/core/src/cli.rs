//! The `fermat` command-line tool.
//!
//! Exit codes: 0 success, 1 verification or consistency mismatch, 2 invalid
//! input, 3 numeric or resource failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arrangement::{fermat_lines, singular_points, ArrangementError};
use crate::invariants::{
    abelianization, count_homomorphisms, fingerprint_compare, tietze_simplify, torsion_u64, InvariantError,
};
use crate::monodromy::{numeric_presentation, verify_alpha, verify_gamma, MonodromyConfig, MonodromyError, VerificationReport};
use crate::presentation::{
    build, check_expansions, def_g_discrepancy, gamma0_certificate, remark_table, semidirect_check, ExportFormat,
    Presentation, PresentationError, PresentationName,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fermat", version, about = "Fundamental groups of Fermat line arrangement complements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a presentation.
    Present(PresentArgs),
    /// Compare numerical braid monodromy with the closed-form actions.
    Verify(VerifyArgs),
    /// Abelianization and homomorphism counts of a presentation.
    Invariants(InvariantsArgs),
    /// Lines and singular points of the arrangement.
    Arrangement(ArrangementArgs),
    /// Expansion checks, product-order comparison and the semidirect check.
    CheckConsistency(ConsistencyArgs),
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.02)]
    pub delta: f64,
    /// Maximum number of samples along one loop.
    #[arg(long, default_value_t = 1 << 20)]
    pub steps: usize,
}

impl NumericArgs {
    /// The validated configuration.
    pub fn config(&self) -> Result<MonodromyConfig, MonodromyError> {
        let base = MonodromyConfig::default();
        let cfg = MonodromyConfig {
            epsilon: self.epsilon,
            delta: self.delta,
            max_steps: self.steps,
            initial_steps: base.initial_steps.min(self.steps.max(1)),
            rotation: base.rotation,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value = "main")]
    pub group: String,
    #[arg(long, default_value = "txt")]
    pub format: String,
    /// Apply Tietze simplification before printing.
    #[arg(long)]
    pub simplify: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: u32,
    /// `0..n`, `alpha` or `all`.
    #[arg(long = "loop", default_value = "all")]
    pub loop_id: String,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value = "main")]
    pub group: String,
    /// Only report the abelianization.
    #[arg(long)]
    pub abelianization: bool,
    /// Count homomorphisms into these targets (`S2`, `S3`, `S4`, `S5`).
    #[arg(long, value_delimiter = ',')]
    pub homs: Vec<String>,
    /// Also compare fingerprints with this group.
    #[arg(long)]
    pub compare: Option<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct ArrangementArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<MonodromyError> for Failure {
    fn from(e: MonodromyError) -> Self {
        let code = match e {
            MonodromyError::InvalidParameters(_)
            | MonodromyError::InvalidLoop(_)
            | MonodromyError::Arrangement(_)
            | MonodromyError::Presentation(_) => EXIT_INVALID,
            MonodromyError::StepBudget { .. } | MonodromyError::Certification(_) => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        let code = match e {
            InvariantError::UnsupportedTarget(_) => EXIT_INVALID,
            InvariantError::TooLarge { .. } => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Output text of a subcommand and whether it found a mismatch.
pub struct Outcome {
    pub text: String,
    pub mismatch: bool,
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let (report, result) = dispatch(&cli.command);
    match result {
        Ok(outcome) => {
            let written = match report {
                Some(path) => fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => writeln!(out, "{}", outcome.text.trim_end()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INVALID;
            }
            if outcome.mismatch {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: &Command) -> (Option<&PathBuf>, Result<Outcome, Failure>) {
    match cmd {
        Command::Present(a) => (a.report.as_ref(), present(a)),
        Command::Verify(a) => (a.report.as_ref(), verify(a)),
        Command::Invariants(a) => (a.report.as_ref(), invariants(a)),
        Command::Arrangement(a) => (a.report.as_ref(), arrangement(a)),
        Command::CheckConsistency(a) => (a.report.as_ref(), check_consistency(a)),
    }
}

fn check_n(n: u32) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::invalid("n must be at least 1"));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}

fn load_group(name: &str, n: u32, numeric: &NumericArgs) -> Result<Presentation, Failure> {
    check_n(n)?;
    let parsed = PresentationName::parse(name).ok_or_else(|| {
        let known: Vec<&str> = PresentationName::ALL.iter().map(|p| p.as_str()).filter(|s| *s != "custom").collect();
        Failure::invalid(format!("unknown group `{name}` (expected one of {})", known.join(", ")))
    })?;
    match parsed {
        PresentationName::Numeric => Ok(numeric_presentation(n, &numeric.config()?)?),
        other => Ok(build(other, n)?),
    }
}

fn present(a: &PresentArgs) -> Result<Outcome, Failure> {
    let format = ExportFormat::parse(&a.format).ok_or_else(|| Failure::invalid(format!("unknown format `{}`", a.format)))?;
    let mut p = load_group(&a.group, a.n, &a.numeric)?;
    if a.simplify {
        p = tietze_simplify(&p);
    }
    Ok(Outcome { text: format.render(&p), mismatch: false })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    check_n(a.n)?;
    let cfg = a.numeric.config()?;
    let loops: Vec<Option<u32>> = match a.loop_id.as_str() {
        "all" => (0..=a.n).map(Some).chain(std::iter::once(None)).collect(),
        "alpha" => vec![None],
        s => {
            let k: u32 = s.strip_prefix("gamma").unwrap_or(s).parse().map_err(|_| Failure::invalid(format!("bad loop `{s}`")))?;
            if k > a.n {
                return Err(Failure::invalid(format!("loop {k} exceeds n = {}", a.n)));
            }
            vec![Some(k)]
        }
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for l in loops {
        reports.push(match l {
            Some(k) => verify_gamma(a.n, k, &cfg)?,
            None => verify_alpha(a.n, &cfg)?,
        });
    }
    let mismatch = reports.iter().any(|r| !r.permutation_match || !r.artin_identity);
    let text = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
    Ok(Outcome { text, mismatch })
}

fn parse_target(s: &str) -> Result<usize, Failure> {
    match s.trim().to_ascii_uppercase().as_str() {
        "S1" => Ok(1),
        "S2" => Ok(2),
        "S3" => Ok(3),
        "S4" => Ok(4),
        "S5" => Ok(5),
        _ => Err(Failure::invalid(format!("unknown target `{s}`"))),
    }
}

fn invariants(a: &InvariantsArgs) -> Result<Outcome, Failure> {
    let p = load_group(&a.group, a.n, &a.numeric)?;
    let targets = a.homs.iter().map(|s| parse_target(s)).collect::<Result<Vec<_>, _>>()?;
    let ab = abelianization(&p);
    let mut hom_counts = BTreeMap::new();
    if !a.abelianization {
        for m in targets {
            hom_counts.insert(format!("S{m}"), count_homomorphisms(&p, m)?.count);
        }
    }
    let mut report = json!({
        "n": a.n,
        "group": p.name.as_str(),
        "generators": p.generators.len(),
        "relators": p.relators.len(),
        "free_rank": ab.free_rank,
        "torsion": torsion_u64(&ab),
        "hom_counts": hom_counts,
    });
    if matches!(p.name, PresentationName::Main | PresentationName::Numeric) {
        // A complement of d lines in the plane has first homology Z^{d-1}.
        let classical = 3 * a.n as usize - 1;
        report["rank_check"] = json!({
            "computed": ab.free_rank,
            "classical_line_complement": classical,
            "discrepancy": ab.free_rank != classical,
        });
    }
    let mut mismatch = false;
    if let Some(other) = &a.compare {
        let q = load_group(other, a.n, &a.numeric)?;
        let cmp = fingerprint_compare(&p, &q)?;
        mismatch = !cmp.consistent();
        report["compare"] = json!({ "group": q.name.as_str(), "report": cmp });
    }
    Ok(Outcome { text: to_json(&report), mismatch })
}

fn arrangement(a: &ArrangementArgs) -> Result<Outcome, Failure> {
    check_n(a.n)?;
    let lines = fermat_lines(a.n)?;
    let points = singular_points(a.n)?;
    let mut by_mult: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &points {
        *by_mult.entry(p.multiplicity()).or_default() += 1;
    }
    let pairs: usize = points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum();
    let d = lines.len();
    let report = json!({
        "n": a.n,
        "lines": lines.iter().map(|l| json!({
            "tag": l.tag.to_string(),
            "coefficients": l.coefficients.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "singular_points": points.iter().map(|p| json!({
            "coords": p.location.coords.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "lines": p.incident_lines.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "multiplicity": p.multiplicity(),
        })).collect::<Vec<_>>(),
        "multiplicity_counts": by_mult,
        "pair_count": pairs,
        "expected_pair_count": d * (d - 1) / 2,
    });
    Ok(Outcome { text: to_json(&report), mismatch: pairs != d * (d - 1) / 2 })
}

fn check_consistency(a: &ConsistencyArgs) -> Result<Outcome, Failure> {
    check_n(a.n)?;
    let n = a.n;
    let expansions = check_expansions(n)?;
    let semidirect = semidirect_check(n)?;
    let gamma0 = gamma0_certificate(n)?;
    let discrepancy = def_g_discrepancy(n)?;
    let remark = remark_table(n)?;
    let mismatch = !expansions.passed() || !semidirect.passed || gamma0.iter().any(|c| !c.equal_mod_cyclic);
    let report = json!({
        "n": n,
        "expansions": expansions,
        "gamma0_simplification": gamma0,
        "semidirect": semidirect,
        "definition_vs_main_product_order": discrepancy,
        "listed_commutators": remark,
    });
    Ok(Outcome { text: to_json(&report), mismatch })
}
