//! Command-line front end.
//!
//! Every payload on standard output is JSON; human-readable tables and
//! diagnostics go to standard error. Exit codes: 0 success, 1 expectation
//! mismatch, 2 input or validation error, 3 exact-solver limit exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms::{all_cases, property_matrix, registry_case_with, ExpectedTable, RegistryOptions};
use crate::error::{Error, Result};
use crate::io::{
    load_matrix, load_points, read_raw_matrix, save_points, to_json_string, write_json, MatrixKind, Report,
};
use crate::matrix::{validate_distance_matrix, validate_similarity_matrix};
use crate::measures::{Input, Kernel, Kind, Measure, MeasureHandle, Params};
use crate::optimize::{corner_mass, maximize, to_svg, SearchConfig};
use crate::points::{distances_from_points, Space};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "diversity", version, about = "Diversity measures, axiom audits and optimization runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one measure on a matrix or point file.
    Compute(ComputeArgs),
    /// Check that a matrix file is a valid distance or similarity matrix.
    Validate(ValidateArgs),
    /// Audit measures against the axioms and compare with the bundled table.
    Axioms(AxiomsArgs),
    /// Recompute the counterexample registry.
    Reproduce(ReproduceArgs),
    /// Hill-climb a point configuration to maximize a measure.
    Optimize(OptimizeArgs),
    /// Evaluate every applicable measure on one input.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Distance,
    Similarity,
    Points,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    Cosine,
    Rbf,
}

#[derive(Args, Debug)]
struct KernelArgs {
    /// Kernel turning distances into similarities (similarity-based measures only).
    #[arg(long, value_enum)]
    kernel: Option<KernelArg>,
    /// Bandwidth of the rbf kernel.
    #[arg(long)]
    sigma: Option<f64>,
}

impl KernelArgs {
    fn kernel(&self) -> Result<Option<Kernel>> {
        match (self.kernel, self.sigma) {
            (None, None) => Ok(None),
            (None, Some(_)) | (Some(KernelArg::Cosine), Some(_)) => {
                Err(Error::InvalidParameter("--sigma only applies to --kernel rbf".into()))
            }
            (Some(KernelArg::Cosine), None) => Ok(Some(Kernel::Cosine)),
            (Some(KernelArg::Rbf), None) => Err(Error::InvalidParameter("--kernel rbf needs --sigma".into())),
            (Some(KernelArg::Rbf), Some(sigma)) => {
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
                }
                Ok(Some(Kernel::Rbf { sigma }))
            }
        }
    }
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    measure: String,
    /// Energy exponent.
    #[arg(long)]
    gamma: Option<f64>,
    /// Species order.
    #[arg(long)]
    q: Option<f64>,
    /// Circles threshold.
    #[arg(long)]
    t: Option<f64>,
    #[command(flatten)]
    kernel: KernelArgs,
}

impl MeasureArgs {
    fn params(&self) -> Params {
        Params { gamma: self.gamma, q: self.q, t: self.t }
    }

    fn handle(&self) -> Result<MeasureHandle> {
        let measure = Measure::from_name(&self.measure, self.params())?;
        let kernel = self.kernel.kernel()?;
        if kernel.is_some() && measure.kind() == Kind::DistanceBased {
            return Err(Error::InvalidParameter(format!("`{}` is distance-based and takes no kernel", measure)));
        }
        let mut h = MeasureHandle::new(measure);
        h.kernel = kernel;
        Ok(h)
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: InputKind,
    #[command(flatten)]
    measure: MeasureArgs,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: InputKind,
    /// Entries at or below this count as zero (distance matrices).
    #[arg(long, default_value_t = 0.0)]
    zero_tol: f64,
    /// Allowed negative eigenvalue slack (similarity matrices).
    #[arg(long, default_value_t = 1e-9)]
    eps_psd: f64,
}

#[derive(Args, Debug)]
struct AxiomsArgs {
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    measure: Option<String>,
    /// All sixteen tabulated measures.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 500)]
    budget: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, requires = "measure")]
    gamma: Option<f64>,
    #[arg(long, requires = "measure")]
    q: Option<f64>,
    #[arg(long, requires = "measure")]
    t: Option<f64>,
    /// Where to write the full verdicts with witnesses.
    #[arg(long, default_value = "witnesses.json")]
    witnesses: PathBuf,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    case: Option<String>,
    #[arg(long)]
    all: bool,
    /// Scan species orders in steps of 0.001 instead of 0.1.
    #[arg(long)]
    full_species: bool,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long)]
    space: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20_000)]
    iters: usize,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Initial jitter scale; defaults to a tenth of the space diameter.
    #[arg(long)]
    scale: Option<f64>,
    /// Directory for trajectory.csv, final_points.json and final.svg.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: InputKind,
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Error(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Validate(a) => validate(a, out),
        Command::Axioms(a) => axioms(a, out, err),
        Command::Reproduce(a) => reproduce(a, out, err),
        Command::Optimize(a) => optimize(a, out),
        Command::Report(a) => report(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InstanceTooLarge { .. } => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn emit<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> Result<()> {
    Ok(out.write_all(to_json_string(v).as_bytes())?)
}

fn load_input(path: &Path, kind: InputKind) -> Result<Input> {
    match kind {
        InputKind::Distance => load_matrix(path, MatrixKind::Distance),
        InputKind::Similarity => load_matrix(path, MatrixKind::Similarity),
        InputKind::Points => Ok(Input::Distance(distances_from_points(&load_points(path)?))),
    }
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> CmdResult {
    let h = a.measure.handle()?;
    let input = load_input(&a.input, a.kind)?;
    if let (Input::Similarity(_), Kind::DistanceBased) = (&input, h.kind()) {
        return Err(Error::InvalidParameter(format!("`{}` needs distance input", h.name())).into());
    }
    let report = Report::new(&h.measure, h.evaluate(&input)?);
    if let Some(p) = &a.out {
        write_json(&report, p)?;
    }
    emit(out, &report)?;
    Ok(())
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let raw = read_raw_matrix(&a.input)?;
    let payload = match a.kind {
        InputKind::Distance => {
            let d = validate_distance_matrix(raw, a.zero_tol)?;
            let classes: Vec<Vec<usize>> =
                d.duplicate_classes().classes().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
            json!({"valid": true, "kind": "distance", "n": d.n(), "duplicate_classes": classes})
        }
        InputKind::Similarity => {
            let s = validate_similarity_matrix(raw, a.eps_psd)?;
            json!({"valid": true, "kind": "similarity", "n": s.n(), "min_eigenvalue": s.min_eigenvalue()})
        }
        InputKind::Points => {
            return Err(Error::InvalidParameter("validate takes --kind distance or similarity".into()).into())
        }
    };
    emit(out, &payload)?;
    Ok(())
}

fn axioms(a: AxiomsArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let measures = match &a.measure {
        Some(name) => vec![Measure::from_name(name, Params { gamma: a.gamma, q: a.q, t: a.t })?],
        None => Measure::table(),
    };
    if a.budget == 0 {
        return Err(Error::InvalidParameter("--budget must be >= 1".into()).into());
    }
    let handles: Vec<MeasureHandle> = measures.into_iter().map(MeasureHandle::new).collect();
    let matrix = property_matrix(&handles, a.budget, a.seed);
    let mismatches = matrix.mismatches(&ExpectedTable::bundled());
    write_json(&matrix, &a.witnesses)?;

    let _ = write!(err, "{}", matrix.to_text());
    for m in &mismatches {
        let _ = writeln!(
            err,
            "mismatch: {} {}: expected {}, found {}",
            m.measure,
            m.axiom.name(),
            if m.expected_holds { "✓" } else { "✗" },
            if m.found_holds { "✓" } else { "✗" }
        );
    }
    let rows: Vec<Value> = matrix
        .rows
        .iter()
        .map(|r| {
            let [mono, uniq, cont] = r.pattern();
            json!({"measure": r.measure, "monotonicity": mono, "uniqueness": uniq, "continuity": cont})
        })
        .collect();
    emit(
        out,
        &json!({
            "budget": a.budget,
            "seed": a.seed,
            "rows": rows,
            "mismatches": mismatches,
            "witnesses": a.witnesses,
        }),
    )?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn reproduce(a: ReproduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = RegistryOptions { species_full_resolution: a.full_species };
    let cases = match &a.case {
        Some(id) => vec![registry_case_with(id, opts)?],
        None => all_cases(opts),
    };
    let mut rows = Vec::new();
    let mut all_pass = true;
    for case in &cases {
        let rep = case.run()?;
        all_pass &= rep.pass;
        let _ = writeln!(err, "{:<4} {:<28} {}", if rep.pass { "PASS" } else { "FAIL" }, rep.id, rep.summary(4));
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
        for c in &failed {
            let _ = writeln!(err, "     {}: computed {:?}, expected {}", c.label, c.computed, c.expected);
        }
        rows.push(json!({
            "id": rep.id,
            "claim": rep.claim,
            "pass": rep.pass,
            "checks": rep.checks.len(),
            "failed": failed,
            "computed": rep.checks.iter().take(8).map(|c| &c.computed).collect::<Vec<_>>(),
        }));
    }
    emit(out, &json!({"pass": all_pass, "cases": rows}))?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn optimize(a: OptimizeArgs, out: &mut dyn Write) -> CmdResult {
    let h = a.measure.handle()?;
    let space: Space = a.space.parse()?;
    let cfg = SearchConfig {
        measure: h,
        space,
        n: a.n,
        iterations: a.iters,
        proposal_scale: a.scale,
        restarts: a.restarts,
        seed: a.seed,
    };
    let t = maximize(&cfg)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(Error::from)?;
        t.write_csv(&dir.join("trajectory.csv"))?;
        save_points(&t.final_config, &dir.join("final_points.json"))?;
        std::fs::write(dir.join("final.svg"), to_svg(&t.final_config)).map_err(Error::from)?;
    }
    let mass = match space {
        Space::UnitSquare => Some(corner_mass(&t.final_config, 0.05)?),
        _ => None,
    };
    emit(
        out,
        &json!({
            "measure": h.name(),
            "params": h.measure.params_json(),
            "space": space,
            "n": a.n,
            "iterations": a.iters,
            "restarts": a.restarts,
            "seed": a.seed,
            "best_restart": t.restart,
            "accepted_steps": t.steps.len(),
            "value": t.final_value,
            "corner_mass": mass,
        }),
    )?;
    Ok(())
}

fn report(a: ReportArgs, out: &mut dyn Write) -> CmdResult {
    let input = load_input(&a.input, a.kind)?;
    let kernel = a.kernel.kernel()?;
    let mut entries = Vec::new();
    for name in Measure::names() {
        let m: Measure = name.parse()?;
        let entry = match (&input, m.kind(), kernel) {
            (Input::Similarity(_), Kind::DistanceBased, _) => continue,
            (Input::Distance(_), Kind::SimilarityBased, None) => continue,
            _ => {
                let mut h = MeasureHandle::new(m);
                h.kernel = kernel.filter(|_| m.kind() == Kind::SimilarityBased);
                match h.evaluate(&input) {
                    Ok(v) => serde_json::to_value(Report::new(&m, v)).expect("reports serialize"),
                    Err(e) => json!({"measure": m.name(), "params": m.params_json(), "error": e.to_string()}),
                }
            }
        };
        entries.push(entry);
    }
    let payload = json!({"n": input.n(), "kernel": kernel, "reports": entries});
    if let Some(p) = &a.out {
        write_json(&payload, p)?;
    }
    emit(out, &payload)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("diversity").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_flag_is_an_error() {
        let (code, out, err) = call(&["compute", "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }

    #[test]
    fn reproduce_unknown_case() {
        let (code, out, err) = call(&["reproduce", "--case", "nonsense"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.is_empty());
        assert!(err.contains("nonsense"));
    }

    #[test]
    fn optimize_needs_two_points() {
        let (code, _, _) = call(&["optimize", "--measure", "average", "--space", "unit_square", "--n", "1"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn kernel_flags() {
        let k = |kernel, sigma| KernelArgs { kernel, sigma }.kernel();
        assert_eq!(k(None, None).unwrap(), None);
        assert_eq!(k(Some(KernelArg::Rbf), Some(0.5)).unwrap(), Some(Kernel::Rbf { sigma: 0.5 }));
        assert!(k(Some(KernelArg::Rbf), None).is_err());
        assert!(k(Some(KernelArg::Cosine), Some(1.0)).is_err());
        assert!(k(Some(KernelArg::Rbf), Some(-1.0)).is_err());
    }
}
