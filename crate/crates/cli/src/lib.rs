//! Command-line front end: verification reports, value tables and matrices.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use metaracah::algebra::{self, build_transposes, casimir, check_casimir, Generators};
use metaracah::eigenbases::{build_basis, eigen_residual};
use metaracah::matrixreps::{coeffs_on_d, coeffs_on_dstar, coeffs_on_z, coeffs_v_on_f, coeffs_x_on_e, coeffs_z_on_e};
use metaracah::racahpoly::{racah_table, RacahOverlaps, RacahParams};
use metaracah::rational::{int, parse_rational, to_decimal_string, to_exact_string};
use metaracah::rationalfns::{cal_u_table, cal_u_tilde_table, dual_hahn, RationalOverlaps};
use metaracah::report::Status;
use metaracah::suites::{parse_suites, run_suites, selection_name};
use metaracah::{validate_params, BasisLabel, Error, FParams, Params, RationalMatrix, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Default output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "METARACAH_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "metaracah", version, about = "Exact verification of meta Racah algebra identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
    /// Emit the full (m, n) grid of a special function.
    Table(TableArgs),
    /// Emit a matrix or coefficient set as JSON.
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long = "N", default_value_t = 4)]
    pub nmax: usize,
    #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "1/5", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long, default_value = "1/7", allow_hyphen_values = true)]
    pub zeta: String,
    #[arg(long, default_value = "1/13", allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Decimal digits in csv output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: u32,
    /// Add the exact "p/q" column to csv output.
    #[arg(long)]
    pub exact: bool,
    /// Output file; relative paths resolve inside the default output
    /// directory when one is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated subset of algebra, bases, matrixreps, racah, rational, model, or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Additional random parameter sets.
    #[arg(long, default_value_t = 0)]
    pub sweeps: usize,
    /// Perturb X before a relation check to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    #[value(name = "racah")]
    Racah,
    #[value(name = "S")]
    S,
    #[value(name = "Stilde")]
    STilde,
    #[value(name = "calU")]
    CalU,
    #[value(name = "calUtilde")]
    CalUTilde,
    #[value(name = "U")]
    U,
    #[value(name = "Utilde")]
    UTilde,
    #[value(name = "dualHahn")]
    DualHahn,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub which: TableKind,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub common: Common,
    /// X, V, Z, Xt, Vt, Zt, C, basis:<label> or coeffs:<basis>.
    #[arg(long)]
    pub which: String,
}

/// Rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::DegenerateParameters(_) => EXIT_DEGENERATE,
            Error::Parse(_) | Error::PreconditionViolated(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Self { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn parse_point(c: &Common) -> Result<(Params, FParams), Error> {
    let p = Params::new(c.nmax, parse_rational(&c.alpha)?, parse_rational(&c.beta)?, parse_rational(&c.zeta)?)?;
    Ok((p, FParams::new(parse_rational(&c.rho)?)))
}

fn params_json(p: &Params, fp: Option<&FParams>) -> Value {
    let mut m = Map::new();
    for (k, v) in p.describe(fp) {
        let value = if k == "N" { json!(p.nmax) } else { json!(v) };
        m.insert(k, value);
    }
    Value::Object(m)
}

fn ser<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

/// JSON or CSV rendering of a verification report.
pub fn render_report(report: &VerificationReport, p: &Params, fp: &FParams, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({
            "suite": report.suite,
            "params": params_json(p, Some(fp)),
            "checks": report.checks,
        })),
        Format::Csv => csv_string(|w| {
            w.write_record(["id", "paperRef", "status", "detail"])?;
            for c in &report.checks {
                let status = serde_json::to_value(c.status).expect("status");
                w.write_record([&c.id, &c.paper_ref, status.as_str().unwrap_or_default(), &c.detail])?;
            }
            Ok(())
        }),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(VerificationReport, Params, FParams), Error> {
    let suites = parse_suites(&args.suite)?;
    let (p, fp) = parse_point(&args.common)?;
    let mut report = run_suites(&suites, &p, &fp, args.seed, args.sweeps)?;
    if args.inject_fault {
        let mut g = Generators::new(&p);
        g.x[(0, 0)] += int(1);
        for mut c in algebra::check_defining_relations_of(&g, &p).checks {
            c.id = format!("injected.{}", c.id);
            report.checks.push(c);
        }
        report.sort();
    }
    report.suite = selection_name(&suites);
    Ok((report, p, fp))
}

/// Row `m`, column `n` of the requested function.
pub fn table_values(which: TableKind, p: &Params, fp: &FParams) -> Result<RationalMatrix, Error> {
    let needs_rho = matches!(which, TableKind::Racah | TableKind::S | TableKind::STilde);
    validate_params(p, needs_rho.then_some(fp))?;
    match which {
        TableKind::Racah => racah_table(&RacahParams::new(p, fp)),
        TableKind::S => Ok(RacahOverlaps::new(p, fp)?.s),
        TableKind::STilde => Ok(RacahOverlaps::new(p, fp)?.s_tilde),
        TableKind::CalU => cal_u_table(p),
        TableKind::CalUTilde => cal_u_tilde_table(p),
        TableKind::U => Ok(RationalOverlaps::new(p)?.u),
        TableKind::UTilde => Ok(RationalOverlaps::new(p)?.u_tilde),
        TableKind::DualHahn => RationalMatrix::try_from_fn(p.dim(), p.dim(), |m, n| dual_hahn(m, n, p)),
    }
}

pub fn render_table(which: TableKind, t: &RationalMatrix, p: &Params, fp: &FParams, c: &Common) -> String {
    match c.format {
        Format::Json => {
            let name = which.to_possible_value().expect("named").get_name().to_string();
            let needs_rho = matches!(which, TableKind::Racah | TableKind::S | TableKind::STilde);
            to_json(&json!({
                "table": name,
                "params": params_json(p, needs_rho.then_some(fp)),
                "values": t,
            }))
        }
        Format::Csv => csv_string(|w| {
            let mut header = vec!["m", "n", "value"];
            if c.exact {
                header.push("exact");
            }
            w.write_record(&header)?;
            for m in 0..t.rows() {
                for n in 0..t.cols() {
                    let v = &t[(m, n)];
                    let mut row = vec![m.to_string(), n.to_string(), to_decimal_string(v, c.precision as usize)];
                    if c.exact {
                        row.push(to_exact_string(v));
                    }
                    w.write_record(&row)?;
                }
            }
            Ok(())
        }),
    }
}

fn fail(msg: String) -> Error {
    Error::Mismatch { what: msg, left: String::new(), right: String::new() }
}

/// JSON for `matrix --which`. Emitted data is revalidated first.
pub fn matrix_json(which: &str, p: &Params, fp: &FParams) -> Result<Value, Error> {
    let plain = |m: RationalMatrix| Ok(serde_json::to_value(m).expect("serializable"));
    let g = || Generators::new(p);
    if let Some(label) = which.strip_prefix("basis:") {
        let label: BasisLabel = label.parse()?;
        validate_params(p, Some(fp))?;
        let fam = build_basis(p, fp, label)?;
        let res = eigen_residual(p, fp, &fam);
        if let Some((i, j, v)) = res.first_nonzero() {
            return Err(fail(format!("basis {label}: eigen residual {v} at ({i}, {j})")));
        }
        return plain(fam.vectors);
    }
    if let Some(basis) = which.strip_prefix("coeffs:") {
        let label: BasisLabel = basis.parse()?;
        validate_params(p, (label == BasisLabel::F).then_some(fp))?;
        return Ok(match label {
            BasisLabel::E => json!({ "z": ser(&coeffs_z_on_e(p)?), "x": ser(&coeffs_x_on_e(p)?) }),
            BasisLabel::F => json!({ "v": ser(&coeffs_v_on_f(p, fp)?) }),
            BasisLabel::D => ser(&coeffs_on_d(p)?),
            BasisLabel::DStar => ser(&coeffs_on_dstar(p)?),
            BasisLabel::Z => ser(&coeffs_on_z(p)?),
            other => return Err(Error::Parse(format!("no coefficient formulas for basis {other}"))),
        });
    }
    validate_params(p, None)?;
    match which {
        "X" => plain(g().x),
        "V" => plain(g().v),
        "Z" => plain(g().z),
        "Zt" => plain(build_transposes(p).0),
        "Vt" => plain(build_transposes(p).1),
        "Xt" => plain(build_transposes(p).2),
        "C" => {
            let r = check_casimir(p);
            if let Some(c) = r.failures().next() {
                return Err(fail(format!("{}: {}", c.id, c.detail)));
            }
            plain(casimir(p))
        }
        other => Err(Error::Parse(format!("unknown matrix {other:?}"))),
    }
}

fn emit(stdout: String, out: Option<&PathBuf>, default_name: &str) -> Result<String, String> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let target = match (out, dir) {
        (Some(o), Some(d)) if o.is_relative() => Some(d.join(o)),
        (Some(o), _) => Some(o.clone()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    };
    match target {
        None => Ok(stdout),
        Some(path) => {
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
            }
            let mut f = std::fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            f.write_all(stdout.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(String::new())
        }
    }
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn finish(body: String, code: i32, c: &Common, default_name: String) -> Outcome {
    match emit(body, c.out.as_ref(), &default_name) {
        Ok(stdout) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Execute a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => match cmd_verify(a) {
            Ok((report, p, fp)) => {
                let code = if report.failures().next().is_some() { EXIT_FAIL } else { EXIT_PASS };
                let mut out = finish(
                    render_report(&report, &p, &fp, a.common.format),
                    code,
                    &a.common,
                    format!("verify-{}.{}", report.suite.replace(',', "-"), ext(a.common.format)),
                );
                if let Some(c) = report.failures().next() {
                    out.stderr.push_str(&format!("FAIL {}: {}\n", c.id, c.detail));
                }
                let skipped = report.count(Status::SkippedDegenerate);
                if skipped > 0 {
                    out.stderr.push_str(&format!("{skipped} checks skipped as degenerate\n"));
                }
                out
            }
            Err(e) => Outcome::from_error(e),
        },
        Command::Table(a) => {
            let run = || {
                let (p, fp) = parse_point(&a.common)?;
                let t = table_values(a.which, &p, &fp)?;
                Ok::<_, Error>(render_table(a.which, &t, &p, &fp, &a.common))
            };
            match run() {
                Ok(body) => {
                    let name = a.which.to_possible_value().expect("named").get_name().to_string();
                    finish(body, EXIT_PASS, &a.common, format!("table-{name}.{}", ext(a.common.format)))
                }
                Err(e) => Outcome::from_error(e),
            }
        }
        Command::Matrix(a) => {
            if a.common.format == Format::Csv {
                return Outcome::usage("error: matrix output is JSON only\n");
            }
            let run = || {
                let (p, fp) = parse_point(&a.common)?;
                matrix_json(&a.which, &p, &fp)
            };
            match run() {
                Ok(v) => finish(format!("{v}\n"), EXIT_PASS, &a.common, format!("matrix-{}.json", a.which.replace(':', "-"))),
                Err(e) => Outcome::from_error(e),
            }
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}
