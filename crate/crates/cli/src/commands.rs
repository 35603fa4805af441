//! Subcommands and the exit-code contract: 0 pass, 1 semantic failure,
//! 2 input error, 3 budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crystal_core::axioms::{check_all, Report};
use crystal_core::builder::{
    build_isomorphism, synthesize_with, verify_reversal_involution, BuildError, SynthesisOptions,
};
use crystal_core::oracle::{
    hw_grid, lemma_reports, membership_pinning, merge_reports, verify_kakunin1, verify_kakunin2, verify_kakunin3,
    ClosedForms, VerificationReport,
};
use crystal_core::pbw::{generate_with, GenerateOptions, PbwError};
use crystal_core::{Color, ColoredGraph, Gcm, HighestWeightB2, IndexSet, MembershipRule, PairingVector};

use crate::document::{DocumentError, GraphDocument, LoadedGraph};
use crate::dot::to_dot;

/// Environment variable overriding the vertex budget of `gen`.
pub const BUDGET_VAR: &str = "CRYSTAL_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "crystal", version, about = "Build, check and compare crystal graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a highest-weight crystal and write it as JSON.
    Gen(GenArgs),
    /// Run every local axiom check on a graph document.
    Check(CheckArgs),
    /// Construct the isomorphism between two documents.
    Iso(IsoArgs),
    /// Write a graph document as Graphviz DOT.
    ExportDot(DotArgs),
    /// Re-verify the transition-map identities and local structure results.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Pbw,
    Axioms,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// `b2`, `b3` or `custom:<path>` to a JSON matrix.
    #[arg(long, default_value = "b2")]
    pub gcm: String,
    /// Highest weight as comma-separated pairings, e.g. `1,1`.
    #[arg(long)]
    pub hw: String,
    #[arg(long, value_enum, default_value = "pbw")]
    pub method: Method,
    /// Output path; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Expected `phi` at the maximum, comma-separated.
    #[arg(long)]
    pub hw: Option<String>,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Write the mapping as `[[first_id, second_id], ...]`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Highest weights range over `[0, max_hw]^2`.
    #[arg(long, default_value_t = 3)]
    pub max_hw: u32,
    /// Lusztig data range over `[0, max_box]^4`.
    #[arg(long, default_value_t = 8)]
    pub max_box: u32,
    /// Write all reports as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub inject_bug: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PbwError> for CliError {
    fn from(e: PbwError) -> Self {
        match e {
            PbwError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::BudgetExceeded { .. } | BuildError::Pbw(PbwError::BudgetExceeded(_)) => {
                CliError::Budget(e.to_string())
            }
            BuildError::InvalidInput(_) | BuildError::Cartan(_) => CliError::Input(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn from_bool(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Iso(a) => cmd_iso(&a, out),
        Command::ExportDot(a) => cmd_export_dot(&a, out),
        Command::VerifyPaper(a) => cmd_verify_paper(&a, out),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| CliError::Input(e.to_string()))
}

fn load(path: &Path) -> Result<LoadedGraph, CliError> {
    let doc =
        GraphDocument::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    doc.load()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn budget() -> Result<Option<usize>, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{BUDGET_VAR}={v:?} is not a vertex count"))),
        Err(_) => Ok(None),
    }
}

pub fn parse_weight(text: &str, rank: usize) -> Result<PairingVector, CliError> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input(format!("highest weight {text:?} is not a comma-separated integer list")))?;
    if values.len() != rank {
        return Err(CliError::Input(format!(
            "highest weight {text:?} has {} entries, the matrix has rank {rank}",
            values.len()
        )));
    }
    let w = PairingVector(values);
    if !w.is_dominant() {
        return Err(CliError::Input(format!("highest weight {text:?} is not dominant")));
    }
    Ok(w)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare(Vec<Vec<i64>>),
    Indexed {
        index_set: Option<Vec<Color>>,
        cartan: Vec<Vec<i64>>,
    },
}

pub fn parse_gcm(name: &str) -> Result<Gcm, CliError> {
    match name {
        "b2" => Ok(Gcm::b2()),
        "b3" => Ok(Gcm::b3()),
        _ => {
            let Some(path) = name.strip_prefix("custom:") else {
                return Err(CliError::Input(format!(
                    "unknown matrix {name:?}; use b2, b3 or custom:<path>"
                )));
            };
            let path = Path::new(path);
            let parsed: MatrixFile =
                serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let (index, rows) = match parsed {
                MatrixFile::Bare(rows) => (IndexSet::standard(rows.len()), rows),
                MatrixFile::Indexed {
                    index_set: Some(ix),
                    cartan,
                } => (IndexSet::new(ix).map_err(|e| CliError::Input(e.to_string()))?, cartan),
                MatrixFile::Indexed {
                    index_set: None,
                    cartan,
                } => (IndexSet::standard(cartan.len()), cartan),
            };
            Gcm::new(index, rows).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
    }
}

fn write_graph(g: &ColoredGraph, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = GraphDocument::from_graph(g)?.to_json();
    text.push('\n');
    emit(path, &text, out)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let a = parse_gcm(&args.gcm)?;
    let phi0 = parse_weight(&args.hw, a.rank())?;
    let budget = budget()?;
    let g = match args.method {
        Method::Pbw => {
            if a != Gcm::b2() {
                return Err(CliError::Input("the pbw method supports only the b2 matrix".into()));
            }
            let lam = HighestWeightB2::new(phi0.0[0] as u32, phi0.0[1] as u32);
            let mut opts = GenerateOptions::default();
            if let Some(b) = budget {
                opts.max_vertices = b;
            }
            generate_with(lam, &opts)?
        }
        Method::Axioms => {
            let mut opts = SynthesisOptions::default();
            if let Some(b) = budget {
                opts.max_vertices = b;
            }
            synthesize_with(&a, &phi0, opts)?
        }
    };
    write_graph(&g, args.out.as_deref(), out)?;
    Ok(Status::Pass)
}

fn summarize(r: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    if r.pass {
        return say(out, "PASS");
    }
    say(out, format!("FAIL: {} violation(s)", r.violations.len()))?;
    for v in r.violations.iter().take(20) {
        say(out, format!("  {v}"))?;
    }
    if r.violations.len() > 20 {
        say(out, format!("  ... {} more", r.violations.len() - 20))?;
    }
    Ok(())
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let l = load(&args.input)?;
    let expected = args
        .hw
        .as_deref()
        .map(|t| parse_weight(t, l.cartan().rank()))
        .transpose()?;
    let r = check_all(&l.graph, l.cartan(), expected.as_ref());
    if let Some(p) = &args.report {
        let text = serde_json::to_string_pretty(&r).expect("reports always serialize");
        fs::write(p, text + "\n").map_err(|e| io_err(p, e))?;
    }
    summarize(&r, out)?;
    Ok(Status::from_bool(r.pass))
}

pub fn cmd_iso(args: &IsoArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let x = load(&args.first)?;
    let y = load(&args.second)?;
    for (path, l) in [(&args.first, &x), (&args.second, &y)] {
        let r = check_all(&l.graph, l.cartan(), None);
        if !r.pass {
            let first = r.violations.first().map_or(String::new(), |v| format!(", first: {v}"));
            return Err(CliError::Input(format!(
                "{} does not pass check ({} violations{first})",
                path.display(),
                r.violations.len()
            )));
        }
    }
    match build_isomorphism(&x.graph, &y.graph) {
        Ok(w) => {
            let pairs: Vec<[u64; 2]> = w.pairs().map(|(u, v)| [x.id(u), y.id(v)]).collect();
            if let Some(p) = &args.out {
                let text = serde_json::to_string(&pairs).expect("pairs serialize");
                fs::write(p, text + "\n").map_err(|e| io_err(p, e))?;
            }
            say(out, format!("isomorphic: {} vertices", pairs.len()))?;
            Ok(Status::Pass)
        }
        Err(e) => {
            say(out, format!("not isomorphic: {e}"))?;
            Ok(Status::Fail)
        }
    }
}

pub fn cmd_export_dot(args: &DotArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let l = load(&args.input)?;
    emit(args.out.as_deref(), &to_dot(&l.graph, &l.ids), out)?;
    Ok(Status::Pass)
}

/// All reports run by `verify-paper`, in table order.
pub fn verification_reports(
    max_hw: u32,
    max_box: u32,
    forms: &ClosedForms,
) -> Result<Vec<VerificationReport>, CliError> {
    let mut reports = lemma_reports(max_box, forms);
    let grid = hw_grid(max_hw);
    let range = format!("lambda in [0,{max_hw}]^2");
    type Suite = fn(HighestWeightB2) -> Result<VerificationReport, PbwError>;
    let suites: [(&str, Suite); 3] = [
        ("Delta = (1,2) structure", verify_kakunin1),
        ("eps_1 >= 2, Delta = (1,1) structure", verify_kakunin2),
        ("Delta = (0,2) structure", verify_kakunin3),
    ];
    for (name, suite) in suites {
        let parts = grid.iter().map(|&lam| suite(lam)).collect::<Result<Vec<_>, _>>()?;
        reports.push(merge_reports(format!("{name}, {range}"), parts));
    }
    let mut rev = VerificationReport {
        claim: format!("reversal is an involutive isomorphism, {range}"),
        domain_size: 0,
        counterexamples: Vec::new(),
    };
    for &lam in &grid {
        rev.domain_size += 1;
        if !verify_reversal_involution(lam)? {
            rev.counterexamples.push(format!("B{lam}"));
        }
    }
    reports.push(rev);
    let pins = membership_pinning(max_hw)?;
    let (_, dim) = pins
        .into_iter()
        .find(|(rule, _)| *rule == MembershipRule::DEFAULT)
        .expect("the default rule is always scanned");
    reports.push(dim);
    Ok(reports)
}

pub fn cmd_verify_paper(args: &VerifyArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let forms = if args.inject_bug {
        ClosedForms::with_injected_bug()
    } else {
        ClosedForms::reference()
    };
    let reports = verification_reports(args.max_hw, args.max_box, &forms)?;
    let width = reports.iter().map(|r| r.claim.len()).max().unwrap_or(0).max(5);
    say(out, format!("{:<width$}  {:>8}  result", "claim", "domain"))?;
    for r in &reports {
        let status = if r.pass() { "PASS" } else { "FAIL" };
        say(out, format!("{:<width$}  {:>8}  {status}", r.claim, r.domain_size))?;
    }
    for r in reports.iter().filter(|r| !r.pass()) {
        say(
            out,
            format!("{}: {} counterexample(s)", r.claim, r.counterexamples.len()),
        )?;
        for c in r.counterexamples.iter().take(5) {
            say(out, format!("  {c}"))?;
        }
    }
    if let Some(p) = &args.json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        fs::write(p, text + "\n").map_err(|e| io_err(p, e))?;
    }
    Ok(Status::from_bool(reports.iter().all(VerificationReport::pass)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(parse_weight("1, 2", 2).unwrap(), PairingVector(vec![1, 2]));
        for bad in ["1", "1,x", "-1,0", ""] {
            assert_eq!(parse_weight(bad, 2).unwrap_err().exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_gcm("b2").unwrap(), Gcm::b2());
        assert_eq!(parse_gcm("b3").unwrap(), Gcm::b3());
        assert_eq!(parse_gcm("g2").unwrap_err().exit_code(), 2);
        assert_eq!(parse_gcm("custom:/nonexistent.json").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(PbwError::BudgetExceeded(3)).exit_code(), 3);
        let e = BuildError::BudgetExceeded {
            max_vertices: 1,
            max_layers: 1,
        };
        assert_eq!(CliError::from(e).exit_code(), 3);
        assert_eq!(CliError::from(BuildError::InvalidInput("x".into())).exit_code(), 2);
        assert_eq!(
            CliError::from(BuildError::SynthesisInconsistency("x".into())).exit_code(),
            1
        );
    }

    #[test]
    fn verification_reports_small() {
        let r = verification_reports(1, 2, &ClosedForms::reference()).unwrap();
        assert!(r.iter().all(VerificationReport::pass));
        let r = verification_reports(0, 2, &ClosedForms::with_injected_bug()).unwrap();
        assert!(!r.iter().all(VerificationReport::pass));
    }
}
