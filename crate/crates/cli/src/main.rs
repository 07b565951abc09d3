//! `symcell`: validate cell data and compute dual bases, the ideal `I`, the
//! Jacobson radical and semisimplicity flags from the command line.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use symcell::algebra::random_symmetrizing_trace;
use symcell::analysis::{selftest, Analysis, Options};
use symcell::radical::semisimplicity_battery;
use symcell::workbench::{load_workbench, validate_instance, Expected};
use symcell::{Element, Error, FieldSpec, GeneratorSpec, Instance, Report, SubspaceBasis};

const SCHEMA: &str = "symcell-output/1";

#[derive(Parser)]
#[command(name = "symcell", version, about = "Workbench for symmetric cellular algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra, trace and cell datum axioms.
    Validate(SourceArgs),
    /// Per-cell table with strata, k, dim rad A and dim I.
    Report(SourceArgs),
    /// The dual cellular basis in the original basis.
    Dualbasis(SourceArgs),
    /// The ideal I with its per-cell pieces.
    Ideal(SourceArgs),
    /// The Jacobson radical and the bounds relating it to I.
    Radical(SourceArgs),
    /// The five semisimplicity flags and the verdict.
    Semisimple(SourceArgs),
    /// Every property suite over every built-in instance.
    Selftest(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Clone)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Tuples per cell for the C D C D = k C D check.
    #[arg(long, default_value_t = symcell::dual::DEFAULT_QUADRUPLE_CAP)]
    quadruple_cap: usize,
    /// Random traces for the trace-independence check.
    #[arg(long, default_value_t = 5)]
    traces: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Workbench file (JSON).
    #[arg(conflicts_with = "gen", required_unless_present = "gen")]
    path: Option<PathBuf>,
    /// Built-in generator: paper-s3, group-s3, matrix:N, dual-numbers,
    /// direct-sum:<a>+<b>.
    #[arg(long = "gen")]
    gen: Option<String>,
    /// Field for --gen: Q or GF(p).
    #[arg(long)]
    field: Option<String>,
    /// `canonical` or `random:<seed>`.
    #[arg(long, default_value = "canonical")]
    trace: String,
    #[command(flatten)]
    common: CommonArgs,
}

/// Errors that map to exit code 2.
struct Usage(String);

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_)
            | Error::Parse(_)
            | Error::UnknownGenerator(_)
            | Error::UnsupportedField { .. }
            | Error::InvalidField(_) => Failure::Usage(e.to_string()),
            Error::Validation(r) => Failure::Check(format!("{}\n{r}", r.summary())),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn load(src: &SourceArgs) -> Result<(Instance, Expected), Failure> {
    let (mut inst, expected) = match (&src.path, &src.gen) {
        (Some(path), None) => {
            if src.field.is_some() {
                return Err(Usage("--field only applies to --gen".into()).into());
            }
            if !path.exists() {
                return Err(Usage(format!("{}: no such file", path.display())).into());
            }
            load_workbench(path)?
        }
        (None, Some(spec)) => {
            let spec: GeneratorSpec = spec.parse()?;
            let field = match &src.field {
                Some(f) => f.parse::<FieldSpec>()?,
                None => spec.default_field(),
            };
            (spec.build(field)?, Expected::default())
        }
        _ => return Err(Usage("give exactly one of a file path or --gen".into()).into()),
    };
    match src.trace.as_str() {
        "canonical" => {}
        t => {
            let seed = t
                .strip_prefix("random:")
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| Usage(format!("--trace: expected canonical or random:<seed>, got `{t}`")))?;
            inst.trace = random_symmetrizing_trace(&inst.algebra, seed)?;
        }
    }
    Ok((inst, expected))
}

fn options(c: &CommonArgs) -> Options {
    Options { quadruple_cap: c.quadruple_cap, traces: c.traces, seed: c.seed }
}

fn render_space(space: &SubspaceBasis, labels: &[String]) -> String {
    let mut s = String::new();
    if space.is_zero() {
        s.push_str("  (zero)\n");
    }
    for v in space.vectors() {
        let _ = writeln!(s, "  {}", Element::from_coeffs(v).display_with(labels));
    }
    s
}

/// Text and structured renderings of one command's result.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

fn envelope(command: &str, inst: &Instance, body: impl Serialize) -> serde_json::Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "instance": inst.name,
        "field": inst.algebra.field().to_string(),
        "result": body,
    })
}

fn cmd_validate(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, expected) = match (&src.path, src.field.is_none()) {
        // a file that fails validation should still produce its report
        (Some(path), true) if path.exists() => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            let file: symcell::WorkbenchFile = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
            (file.to_instance()?, file.expected.clone())
        }
        _ => load(src)?,
    };
    let mut reports = vec![validate_instance(&inst)];
    if reports[0].passed() && !expected.is_empty() {
        let a = Analysis::run(&inst)?;
        reports.push(a.expected_report(&expected));
    }
    let ok = reports.iter().all(Report::passed);
    let mut text = String::new();
    for r in &reports {
        let _ = write!(text, "{r}");
    }
    let _ = writeln!(text, "{}", if ok { "valid" } else { "invalid" });
    let json = envelope("validate", &inst, json!({ "passed": ok, "reports": reports }));
    Ok(Output { text, json, ok })
}

fn cmd_report(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, _) = load(src)?;
    let a = Analysis::run(&inst)?;
    let s = a.summary();
    let mut text = String::new();
    let _ = writeln!(text, "{} over {}, dimension {}", s.name, s.field, s.dim);
    let width = s.cells.iter().map(|c| c.label.chars().count()).max().unwrap_or(4).max(4);
    let _ = writeln!(text, "{:<width$}  {:>3}  {:>4}  {:>7}  {:>5}  {:>6}  strata", "cell", "n", "rank", "dim rad", "dim L", "k");
    for c in &s.cells {
        let dl = c.dim_simple.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(
            text,
            "{:<width$}  {:>3}  {:>4}  {:>7}  {:>5}  {:>6}  {}",
            c.label,
            c.n,
            c.rank,
            c.dim_rad,
            dl,
            c.k,
            c.strata.join(",")
        );
    }
    for (name, set) in [
        ("Λ0", &s.strata.lambda0),
        ("Λ1", &s.strata.lambda1),
        ("Λ2", &s.strata.lambda2),
        ("Λ3", &s.strata.lambda3),
        ("Λ4", &s.strata.lambda4),
    ] {
        let _ = writeln!(text, "{name} = {{{}}}", set.join(", "));
    }
    let _ = writeln!(text, "dim rad A = {}", s.dim_rad);
    let _ = writeln!(text, "dim I = {}", s.dim_i);
    let _ = writeln!(text, "I = rad A: {}", if s.i_equals_rad { "yes" } else { "no" });
    let _ = writeln!(text, "semisimple: {}", if s.semisimple { "yes" } else { "no" });
    let json = envelope("report", &inst, &s);
    Ok(Output { text, json, ok: true })
}

fn cmd_dualbasis(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, _) = load(src)?;
    let a = Analysis::run(&inst)?;
    let entries = a.dual_view();
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(text, "D[{}]({},{}) = {}", e.lambda, e.u, e.v, e.element);
    }
    let json = envelope("dualbasis", &inst, json!({ "basis": inst.algebra.labels(), "dual": entries }));
    Ok(Output { text, json, ok: true })
}

fn cmd_ideal(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, _) = load(src)?;
    let a = Analysis::run(&inst)?;
    let view = a.ideal_view();
    let mut text = String::new();
    for c in &view.cells {
        let _ = writeln!(
            text,
            "{}: k {}, dim I^λ = {}, dim I_D^λ = {}",
            c.label,
            if c.k_zero { "= 0" } else { "≠ 0" },
            c.dim_c_side,
            c.dim_d_side
        );
    }
    let _ = writeln!(text, "dim I = {}", view.total.dim);
    text.push_str(&render_space(&a.ideal_ambient(), inst.algebra.labels()));
    let json = envelope("ideal", &inst, &view);
    Ok(Output { text, json, ok: true })
}

fn cmd_radical(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, _) = load(src)?;
    let a = Analysis::run(&inst)?;
    let rr = a.radical_report(&options(&src.common))?;
    let rad = a.rad_ambient();
    let mut text = String::new();
    let _ = writeln!(text, "dim rad A = {}", rr.dim_rad);
    text.push_str(&render_space(&rad, inst.algebra.labels()));
    let _ = writeln!(text, "dim I = {}", rr.dim_i);
    let _ = writeln!(text, "I ⊆ rad A: {}", rr.i_contained);
    let _ = writeln!(text, "I = rad A: {}", rr.i_equal);
    let b = &rr.bounds;
    let _ = writeln!(text, "dim I ≥ bound: {} ≥ {}", b.bound3_lhs, b.bound3_rhs);
    let _ = writeln!(text, "inequality: {} ≤ {}", b.bound4_lhs, b.bound4_rhs);
    let same = rr.trace_independence.iter().filter(|&&x| x).count();
    let _ = writeln!(text, "I unchanged under {same} of {} sampled traces", rr.trace_independence.len());
    let _ = write!(text, "{}", rr.report);
    let ok = rr.report.passed();
    let json = envelope(
        "radical",
        &inst,
        json!({ "radical": symcell::linalg::SubspaceView::from(&rad), "checks": rr }),
    );
    Ok(Output { text, json, ok })
}

fn cmd_semisimple(src: &SourceArgs) -> Result<Output, Failure> {
    let (inst, _) = load(src)?;
    let a = Analysis::run(&inst)?;
    let b = semisimplicity_battery(&a.ca, &a.dcb, &a.rad, &a.kdata)?;
    let names = [
        "rad A = 0",
        "all k_λ ≠ 0",
        "C_ST D_TT form a basis",
        "each cell has some (C_ST D_TS)² ≠ 0",
        "every (C_ST D_TS)² ≠ 0",
    ];
    let mut text = String::new();
    for (name, flag) in names.iter().zip(b.flags()) {
        let _ = writeln!(text, "{name}: {flag}");
    }
    let _ = writeln!(text, "semisimple: {}", if b.verdict() { "yes" } else { "no" });
    let json = envelope("semisimple", &inst, json!({ "flags": &b, "semisimple": b.verdict() }));
    Ok(Output { text, json, ok: true })
}

fn cmd_selftest(c: &CommonArgs) -> Result<Output, Failure> {
    let reports = selftest(&options(c));
    let ok = reports.iter().all(Report::passed);
    let mut text = String::new();
    for r in &reports {
        let _ = write!(text, "{r}");
    }
    let json = json!({ "schema": SCHEMA, "command": "selftest", "passed": ok, "reports": reports });
    Ok(Output { text, json, ok })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, result) = match &cli.command {
        Command::Validate(s) => (s.common.format, cmd_validate(s)),
        Command::Report(s) => (s.common.format, cmd_report(s)),
        Command::Dualbasis(s) => (s.common.format, cmd_dualbasis(s)),
        Command::Ideal(s) => (s.common.format, cmd_ideal(s)),
        Command::Radical(s) => (s.common.format, cmd_radical(s)),
        Command::Semisimple(s) => (s.common.format, cmd_semisimple(s)),
        Command::Selftest(c) => (c.format, cmd_selftest(c)),
    };
    match result {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text,
                Format::Structured => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("symcell: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("symcell: {m}");
            ExitCode::from(1)
        }
    }
}
