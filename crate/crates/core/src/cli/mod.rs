//! Command-line front end: `eval`, `verify`, `scan`, `limit` and `list`.
//!
//! [`run`] takes the argument vector and returns the rendered output and
//! exit code, so the whole surface can be exercised from tests.

mod functions;
mod grid;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::context::QContext;
use crate::error::QError;
use crate::literal::format_real;
use crate::verify::registry::{self, IdentityEntry};
use crate::verify::{expand_grid, parse_qgrid, LimitScan, Manifest, ManifestError, ParamPoint, VerificationReport, TAIL_LEN};

pub use functions::{function, functions, FunctionEntry};
pub use grid::{parse_axis, parse_grid, parse_point};
pub use table::{Cell, Column, OutputFormat, ScanTable};

/// Exit code when every check passes.
pub const EXIT_PASS: i32 = 0;
/// Exit code when some check fails its tolerance.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage, configuration and domain errors.
pub const EXIT_ERROR: i32 = 2;

/// q-series functions, q-Borel/q-Laplace resummation and identity checks.
///
/// Parameters are given as name=value with values written as real or
/// complex literals such as 0.3, 5i or -4+3i (no spaces).
/// Exit status: 0 when all checks pass, 1 when some check fails, 2 on usage,
/// configuration or domain errors.
#[derive(Debug, Parser)]
#[command(name = "qresum", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
    /// Pass threshold applied to every check, overriding the manifest.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Truncation budget for series and products.
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    /// Initial trapezoid node count for second-kind q-Laplace integrals.
    #[arg(long, global = true)]
    pub quad_points: Option<usize>,
    /// Tolerance manifest (TOML) laid over the built-in one.
    #[arg(long, env = "QRESUM_CONFIG", global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a function at one point, e.g. `eval theta x=-1 q=0.5`.
    Eval {
        function: String,
        params: Vec<String>,
    },
    /// Check an identity at one point or on its default grid.
    Verify {
        identity: String,
        /// Use the manifest's default grid, skipping inadmissible points.
        #[arg(long)]
        default_grid: bool,
        params: Vec<String>,
    },
    /// Check an identity on a grid: name=start:stop:count, name=v1,v2,... or name=v.
    Scan {
        identity: String,
        grid: Vec<String>,
    },
    /// Run a q -> 1 limit study; the q grid is qgrid=dyadic:k1:k2.
    Limit {
        label: String,
        /// Use the manifest's default points.
        #[arg(long)]
        default_grid: bool,
        params: Vec<String>,
    },
    /// List functions, identities and limit studies with their parameters.
    List,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("UnknownLabel: {0:?}")]
    UnknownLabel(String),
    #[error("ParameterMissing: {label} needs {param}")]
    ParameterMissing { label: String, param: String },
    #[error("MalformedGrid: {0}")]
    MalformedGrid(String),
    #[error("MalformedParam: {0}")]
    MalformedParam(String),
    #[error("Config: {0}")]
    Config(#[from] ManifestError),
    #[error("{name}: {0}", name = .0.name())]
    Numeric(#[from] QError),
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_ERROR }
            };
        }
    };
    match execute(&cli) {
        Ok((table, code)) => Outcome { stdout: table.render(cli.output), stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_ERROR },
    }
}

struct Session<'a> {
    cli: &'a Cli,
    manifest: Manifest,
    ctx: QContext,
}

impl Session<'_> {
    fn tolerance(&self, label: &str) -> f64 {
        self.cli.tol.or_else(|| self.manifest.tolerance(label)).unwrap_or(f64::NAN)
    }

    fn meta(&self, command: &str, label: &str, args: &[String]) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("command".into(), command.into());
        m.insert("label".into(), label.into());
        m.insert("params".into(), args.join(" "));
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        m.insert("max_terms".into(), self.ctx.max_terms().to_string());
        m.insert("quad_points".into(), self.ctx.quad_points().to_string());
        if let Some(t) = self.cli.tol {
            m.insert("tol".into(), format_real(t));
        }
        if let Some(p) = &self.cli.config {
            m.insert("config".into(), p.display().to_string());
        }
        m
    }
}

fn execute(cli: &Cli) -> Result<(ScanTable, i32), CliError> {
    if let Some(t) = cli.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::MalformedParam(format!("--tol {t} must be positive")));
        }
    }
    let manifest = match &cli.config {
        Some(path) => Manifest::load(path)?,
        None => Manifest::builtin().clone(),
    };
    let mut ctx = QContext::new(0.5)?;
    if let Some(n) = cli.max_terms {
        ctx = ctx.with_max_terms(n)?;
    }
    if let Some(n) = cli.quad_points {
        ctx = ctx.with_quad_points(n)?;
    }
    let s = Session { cli, manifest, ctx };
    match &cli.command {
        Command::Eval { function, params } => run_eval(&s, function, params),
        Command::Verify { identity, default_grid, params } => run_verify(&s, identity, *default_grid, params),
        Command::Scan { identity, grid } => run_scan(&s, identity, grid),
        Command::Limit { label, default_grid, params } => run_limit(&s, label, *default_grid, params),
        Command::List => Ok((run_list(), EXIT_PASS)),
    }
}

fn fill(
    label: &str,
    params: &[&'static str],
    defaults: &[(&'static str, f64)],
    point: &ParamPoint,
) -> Result<ParamPoint, CliError> {
    let mut p = point.clone();
    for (k, v) in defaults {
        p.entry((*k).to_string()).or_insert(num_complex::Complex64::new(*v, 0.0));
    }
    if let Some(k) = params.iter().find(|k| !p.contains_key(**k)) {
        return Err(CliError::ParameterMissing { label: label.into(), param: (*k).into() });
    }
    if let Some(k) = p.keys().find(|k| !params.contains(&k.as_str())) {
        return Err(CliError::MalformedParam(format!("{label} takes no parameter {k}")));
    }
    Ok(p)
}

fn param_columns<'a>(points: impl Iterator<Item = &'a ParamPoint>) -> Vec<String> {
    let keys: BTreeSet<String> = points.flat_map(|p| p.keys().cloned()).collect();
    keys.into_iter().collect()
}

fn param_cells(keys: &[String], p: &ParamPoint) -> Vec<Cell> {
    keys.iter().map(|k| p.get(k).map_or(Cell::Empty, |&v| Cell::Complex(v))).collect()
}

fn run_eval(s: &Session, name: &str, args: &[String]) -> Result<(ScanTable, i32), CliError> {
    let f = function(name).ok_or_else(|| CliError::UnknownLabel(name.into()))?;
    let (point, _) = parse_point(args, &[])?;
    let point = fill(name, f.params, f.defaults, &point)?;
    let v = f.eval(&point, &s.ctx)?;
    let keys = param_columns(std::iter::once(&point));
    let mut columns = vec![Column::real("function")];
    columns.extend(keys.iter().map(|k| Column::complex(k)));
    columns.extend([Column::complex("value"), Column::real("err_estimate"), Column::real("terms_used")]);
    let mut row = vec![Cell::Text(name.into())];
    row.extend(param_cells(&keys, &point));
    row.extend([Cell::Complex(v.value), Cell::Real(v.err_estimate), Cell::Int(v.terms_used as i64)]);
    Ok((ScanTable { meta: s.meta("eval", name, args), columns, rows: vec![row] }, EXIT_PASS))
}

enum Row {
    Report(VerificationReport),
    Error(ParamPoint, QError),
}

/// Runs `entry` at each point and applies the session's tolerance.
fn check_points(s: &Session, entry: &IdentityEntry, points: &[ParamPoint]) -> Vec<Row> {
    let tol = s.tolerance(entry.label);
    let mut rows = Vec::new();
    for p in points {
        match entry.run(p, &s.ctx) {
            Ok(reports) => rows.extend(reports.into_iter().map(|mut r| {
                r.tolerance = tol;
                r.pass = r.residual <= tol;
                Row::Report(r)
            })),
            Err(e) => rows.push(Row::Error(p.clone(), e)),
        }
    }
    rows
}

fn report_table(meta: BTreeMap<String, String>, label: &str, rows: &[Row]) -> (ScanTable, i32) {
    let keys = param_columns(rows.iter().map(|r| match r {
        Row::Report(r) => &r.point,
        Row::Error(p, _) => p,
    }));
    let mut columns = vec![Column::real("identity")];
    columns.extend(keys.iter().map(|k| Column::complex(k)));
    columns.extend([
        Column::complex("lhs"),
        Column::complex("rhs"),
        Column::real("residual"),
        Column::real("tolerance"),
        Column::real("pass"),
        Column::real("terms_used"),
        Column::real("error"),
    ]);
    let (mut pass, mut fail, mut errors) = (0, 0, 0);
    let table_rows = rows
        .iter()
        .map(|row| match row {
            Row::Report(r) => {
                if r.pass {
                    pass += 1;
                } else {
                    fail += 1;
                }
                let mut cells = vec![Cell::Text(r.identity.clone())];
                cells.extend(param_cells(&keys, &r.point));
                cells.extend([
                    Cell::Complex(r.lhs),
                    Cell::Complex(r.rhs),
                    Cell::Real(r.residual),
                    Cell::Real(r.tolerance),
                    Cell::Bool(r.pass),
                    Cell::Int(r.terms_used as i64),
                    Cell::Empty,
                ]);
                cells
            }
            Row::Error(p, e) => {
                errors += 1;
                let mut cells = vec![Cell::Text(label.into())];
                cells.extend(param_cells(&keys, p));
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Bool(false), Cell::Empty]);
                cells.push(Cell::Text(format!("{}: {e}", e.name())));
                cells
            }
        })
        .collect();
    let mut meta = meta;
    meta.insert("summary".into(), format!("{pass} pass, {fail} fail, {errors} error"));
    let code = if errors > 0 {
        EXIT_ERROR
    } else if fail > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    };
    (ScanTable { meta, columns, rows: table_rows }, code)
}

fn describe(p: &ParamPoint) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={}", crate::literal::format_complex(*v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_verify(s: &Session, label: &str, default_grid: bool, args: &[String]) -> Result<(ScanTable, i32), CliError> {
    let entry = registry::identity(label).ok_or_else(|| CliError::UnknownLabel(label.into()))?;
    let mut meta = s.meta("verify", label, args);
    let points = if default_grid {
        if !args.is_empty() {
            return Err(CliError::MalformedParam("--default-grid takes no parameters".into()));
        }
        let grid = s.manifest.entry(label).map(|e| e.points.clone()).unwrap_or_default();
        let mut admitted = Vec::new();
        let mut skipped = Vec::new();
        for p in &grid {
            let p = fill(label, entry.params, entry.defaults, p)?;
            match entry.admissible(&p, &s.ctx) {
                Ok(()) => admitted.push(p),
                Err(e) => skipped.push(format!("{} ({})", describe(&p), e.name())),
            }
        }
        meta.insert("grid".into(), "default".into());
        let note = if skipped.is_empty() {
            "0".to_string()
        } else {
            format!("{}: {}", skipped.len(), skipped.join("; "))
        };
        meta.insert("skipped".into(), note);
        admitted
    } else {
        let (point, _) = parse_point(args, &[])?;
        vec![fill(label, entry.params, entry.defaults, &point)?]
    };
    Ok(report_table(meta, label, &check_points(s, entry, &points)))
}

fn run_scan(s: &Session, label: &str, args: &[String]) -> Result<(ScanTable, i32), CliError> {
    let entry = registry::identity(label).ok_or_else(|| CliError::UnknownLabel(label.into()))?;
    let axes = parse_grid(args)?;
    let points = expand_grid(&axes)
        .iter()
        .map(|p| fill(label, entry.params, entry.defaults, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report_table(s.meta("scan", label, args), label, &check_points(s, entry, &points)))
}

fn run_limit(s: &Session, label: &str, default_grid: bool, args: &[String]) -> Result<(ScanTable, i32), CliError> {
    let entry = registry::limit(label).ok_or_else(|| CliError::UnknownLabel(label.into()))?;
    let (point, extra) = parse_point(args, &["qgrid"])?;
    let manifest_entry = s.manifest.entry(label);
    let qspec = extra
        .get("qgrid")
        .cloned()
        .or_else(|| manifest_entry.and_then(|e| e.qgrid.clone()))
        .unwrap_or_else(|| "dyadic:3:10".into());
    let q_grid = parse_qgrid(&qspec).ok_or_else(|| CliError::MalformedGrid(format!("qgrid={qspec}")))?;
    let points = if default_grid {
        if !point.is_empty() {
            return Err(CliError::MalformedParam("--default-grid takes no parameters besides qgrid".into()));
        }
        manifest_entry.map(|e| e.points.clone()).unwrap_or_default()
    } else {
        vec![point]
    };
    let points = points
        .iter()
        .map(|p| fill(label, entry.params, entry.defaults, p))
        .collect::<Result<Vec<_>, _>>()?;
    let tol = s.tolerance(label);
    let scans: Vec<(ParamPoint, LimitScan)> = points
        .into_iter()
        .map(|p| entry.run(&p, &q_grid, &s.ctx).map(|scan| (p, scan)))
        .collect::<Result<_, _>>()?;

    let keys = param_columns(scans.iter().map(|(p, _)| p));
    let mut columns = vec![Column::real("label")];
    columns.extend(keys.iter().map(|k| Column::complex(k)));
    columns.extend([
        Column::real("q"),
        Column::complex("lhs"),
        Column::complex("target"),
        Column::real("error"),
    ]);
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    let mut all = true;
    for (p, scan) in &scans {
        for i in 0..scan.q_values.len() {
            let mut cells = vec![Cell::Text(scan.label.clone())];
            cells.extend(param_cells(&keys, p));
            cells.extend([
                Cell::Real(scan.q_values[i]),
                Cell::Complex(scan.lhs_values[i]),
                Cell::Complex(scan.target),
                Cell::Real(scan.errors[i]),
            ]);
            rows.push(cells);
        }
        let ok = scan.final_error() <= tol && scan.tail_non_increasing(TAIL_LEN);
        all &= ok;
        summaries.push(format!(
            "{}: final_error={} tail_non_increasing={} pass={ok}",
            describe(p),
            format_real(scan.final_error()),
            scan.tail_non_increasing(TAIL_LEN)
        ));
    }
    let mut meta = s.meta("limit", label, args);
    meta.insert("qgrid".into(), qspec);
    meta.insert("tolerance".into(), format_real(tol));
    meta.insert("scans".into(), summaries.join("; "));
    Ok((ScanTable { meta, columns, rows }, if all { EXIT_PASS } else { EXIT_FAIL }))
}

fn run_list() -> ScanTable {
    let mut rows = Vec::new();
    for f in functions() {
        rows.push(("eval", f.name, f.params, f.description));
    }
    for e in registry::identities() {
        rows.push(("verify", e.label, e.params, e.description));
    }
    for l in registry::limits() {
        rows.push(("limit", l.label, l.params, l.description));
    }
    ScanTable {
        meta: BTreeMap::from([("version".to_string(), env!("CARGO_PKG_VERSION").to_string())]),
        columns: vec![Column::real("command"), Column::real("label"), Column::real("params"), Column::real("description")],
        rows: rows
            .into_iter()
            .map(|(c, l, p, d)| vec![Cell::Text(c.into()), Cell::Text(l.into()), Cell::Text(p.join(",")), Cell::Text(d.into())])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("qresum").chain(args.iter().copied()))
    }

    #[test]
    fn eval_examples() {
        let o = run_args(&["eval", "theta", "x=-1", "q=0.5", "--output", "json"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        let value = &v["rows"][0][3];
        assert!(value["re"].as_f64().unwrap().abs() < 1e-12);
        let o = run_args(&["eval", "qgamma", "x=2", "q=0.5", "--output", "csv"]);
        assert_eq!(o.code, 0);
        let row: Vec<String> = o.stdout.lines().nth(1).unwrap().split(',').map(String::from).collect();
        assert!((row[5].parse::<f64>().unwrap() - 1.0).abs() < 1e-14);
        let o = run_args(&["eval", "theorem1_rhs", "a=0.4", "lambda=0.7", "x=5", "q=0.3", "--output", "json"]);
        assert_eq!(o.code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        let re = v["rows"][0][5]["re"].as_f64().unwrap();
        assert!((re - 5.174_990_797_189_576).abs() < 1e-12);
    }

    #[test]
    fn eval_errors() {
        let o = run_args(&["eval", "nope", "x=1"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("UnknownLabel"));
        let o = run_args(&["eval", "theta", "x=1"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("ParameterMissing"));
        let o = run_args(&["eval", "qgamma", "x=0", "q=0.5"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("PoleAtNonPositiveInteger"));
        let o = run_args(&["eval", "theta", "x=1", "q=0.5", "y=2"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn verify_single_points() {
        let o = run_args(&["verify", "ramanujan", "a=0.5", "b=0.1", "q=0.3", "z=0.5"]);
        assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
        let o = run_args(&["verify", "theorem1", "x=-0.7", "lambda=0.7", "a=0.4", "q=0.3"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout.contains("SpiralSingularity"));
        let o = run_args(&["verify", "theorem1", "a=0.4", "x=5", "q=0.3", "--tol", "1e-300"]);
        assert_eq!(o.code, 1, "{}", o.stdout);
    }

    #[test]
    fn verify_default_grid_is_deterministic() {
        let a = run_args(&["verify", "theorem1", "--default-grid", "--output", "json"]);
        let b = run_args(&["verify", "theorem1", "--default-grid", "--output", "json"]);
        assert_eq!(a.code, 0, "{}", a.stdout);
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["meta"]["skipped"], "0");
        assert_eq!(v["rows"].as_array().unwrap().len(), 36);
        let o = run_args(&["verify", "bqua2", "--default-grid", "--output", "json"]);
        assert_eq!(o.code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert!(v["meta"]["skipped"].as_str().unwrap().starts_with("17:"));
        assert_eq!(v["rows"].as_array().unwrap().len(), 57);
    }

    #[test]
    fn scan_grids() {
        let o = run_args(&["scan", "theorem1", "x=2:8:4", "a=0.8", "lambda=0.7", "q=0.3", "--output", "csv"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(o.stdout.lines().count(), 5);
        let o = run_args(&["scan", "theorem1", "x=2:8:0", "a=0.8", "q=0.3"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("MalformedGrid"));
        let o = run_args(&["scan", "theorem1", "x=2:8:4", "a=0.4", "q=0.3"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn limit_runs() {
        let o = run_args(&["limit", "theorem2", "alpha=0.3", "x=2", "qgrid=dyadic:3:10", "--output", "json"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 8);
        let err: Vec<f64> = rows.iter().map(|r| r[r.as_array().unwrap().len() - 1].as_f64().unwrap()).collect();
        assert!(err[4..].windows(2).all(|w| w[1] <= w[0]));
        let o = run_args(&["limit", "theorem2", "alpha=0.3", "x=2", "qgrid=dyadic:3"]);
        assert_eq!(o.code, 2);
        let o = run_args(&["limit", "qgamma", "--default-grid"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[]).code, 2);
        assert_eq!(run_args(&["verify", "theorem1", "--output", "xml"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
        assert_eq!(run_args(&["list"]).code, 0);
    }
}
