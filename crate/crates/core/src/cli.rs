//! `gts` command line: `interp`, `rational` and `rolle` subcommands.
//!
//! Exit codes: 0 success, 2 syntax or usage error, 3 numeric failure
//! (singular, degenerate or inconsistent systems), 4 domain violation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::func::{parse, Expr};
use crate::interp::{c_witness, osculate, osculate_refined, HermiteData, TaylorBound};
use crate::modulus::{verify_rolle_numeric, zero_count_table, NodeSet};
use crate::poly::Polynomial;
use crate::ratapprox::{
    rational_eval, rational_fit, rational_fit_refined, RationalApproximant, RationalBound,
    RationalValue,
};
use crate::scalar::{format_f64, parse_rational, Rational, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Above this many interpolation conditions the float backend is warned about.
pub const LARGE_N: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "gts",
    version,
    about = "Osculating polynomial and rational approximation with remainder bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Osculating polynomial g with deg g < n matching f^(k)(x_i), k < m_i
    Interp(InterpArgs),
    /// Rational approximant u/v with f v - u = 0 mod h and v(0) = 1
    Rational(RationalArgs),
    /// Guaranteed zero counts of h^(k) and a numeric confirmation
    Rolle(RolleArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Node list `x:m,x:m,...` (x as integer, p/q or decimal)
    #[arg(long, allow_hyphen_values = true)]
    nodes: String,
    /// Interval `a:b` for bounds; defaults to [min node, max node]
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Also write every result as a JSON object to this path
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Table {
    /// Evaluate at a single point
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    eval: Option<String>,
    /// Evaluate on N equally spaced points of the interval (CSV table)
    #[arg(long)]
    grid: Option<usize>,
    /// Write the grid table here instead of standard output
    #[arg(long, requires = "grid")]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InterpArgs {
    /// Function of x, e.g. "exp(x)" or "1/(1+x^2)"
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    table: Table,
    /// Report the mean-value point c for this x
    #[arg(long, allow_hyphen_values = true)]
    witness: Option<String>,
}

#[derive(Args, Debug)]
struct RationalArgs {
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    table: Table,
    #[arg(long)]
    deg_num: usize,
    #[arg(long)]
    deg_den: usize,
}

#[derive(Args, Debug)]
struct RolleArgs {
    #[arg(long, allow_hyphen_values = true)]
    nodes: String,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

/// Everything a run was asked to do, echoed into the JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub function: Option<String>,
    pub nodes: String,
    pub interval: Option<(f64, f64)>,
    pub interval_defaulted: bool,
    pub eval: Option<f64>,
    pub grid: Option<usize>,
    pub deg_num: Option<usize>,
    pub deg_den: Option<usize>,
    pub witness: Option<f64>,
    pub backend: Backend,
    pub csv: Option<PathBuf>,
    pub json_out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::InvalidNodeSet(_) | Error::DuplicateNode(_) => EXIT_PARSE,
            Error::Domain(_) | Error::Pole(_) | Error::InvalidArgument(_) => EXIT_DOMAIN,
            _ => EXIT_NUMERIC,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_DOMAIN, format!("i/o: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line given as `args` (program name first), writing
/// results to `out` and warnings and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { EXIT_OK } else { EXIT_PARSE };
        }
    };
    let result = match &cli.command {
        Command::Interp(a) => cmd_interp(a, out, err),
        Command::Rational(a) => cmd_rational(a, out, err),
        Command::Rolle(a) => cmd_rolle(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main_exit_code() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn parse_expr(text: &str) -> CliResult<Expr> {
    parse(text).map_err(|e| {
        let mut message = e.to_string();
        if let Error::Syntax { offset, .. } = e {
            message.push_str(&format!("\n  {text}\n  {}^", " ".repeat(offset)));
        }
        Failure::new(EXIT_PARSE, message)
    })
}

fn parse_number(text: &str, what: &str) -> CliResult<Rational> {
    parse_rational(text)
        .map_err(|_| Failure::new(EXIT_PARSE, format!("{what}: not a number: {text:?}")))
}

/// `x:m,x:m,...` into exact nodes; a bare `x` has multiplicity 1.
pub fn parse_nodes(text: &str) -> crate::Result<NodeSet<Rational>> {
    let mut pairs = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let (x, m) = match item.rsplit_once(':') {
            Some((x, m)) => {
                let m: usize = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidNodeSet(format!("bad multiplicity in {item:?}")))?;
                (x, m)
            }
            None => (item, 1),
        };
        let x =
            parse_rational(x).map_err(|_| Error::InvalidNodeSet(format!("bad node {item:?}")))?;
        pairs.push((x, m));
    }
    NodeSet::new(pairs)
}

fn to_float_nodes(ns: &NodeSet<Rational>) -> CliResult<NodeSet<f64>> {
    Ok(ns.map_domain(Scalar::to_f64)?)
}

/// Resolves `--domain` against the nodes: explicit intervals must contain
/// every node; a missing one becomes `[min node, max node]` with a warning.
fn resolve_interval(
    domain: Option<&str>,
    ns: &NodeSet<Rational>,
    needed: bool,
    err: &mut dyn Write,
) -> CliResult<Option<(Rational, Rational, bool)>> {
    if let Some(text) = domain {
        let (a, b) = text.split_once(':').ok_or_else(|| {
            Failure::new(EXIT_PARSE, format!("--domain expects a:b, got {text:?}"))
        })?;
        let (a, b) = (parse_number(a, "--domain")?, parse_number(b, "--domain")?);
        if a >= b {
            return Err(Failure::new(
                EXIT_DOMAIN,
                format!("empty interval [{a}, {b}]"),
            ));
        }
        if let Some(node) = ns.nodes().iter().find(|n| n.x < a || n.x > b) {
            return Err(Failure::new(
                EXIT_DOMAIN,
                format!("node {} lies outside [{a}, {b}]", node.x),
            ));
        }
        return Ok(Some((a, b, false)));
    }
    if !needed {
        return Ok(None);
    }
    let (a, b) = (ns.min_x().clone(), ns.max_x().clone());
    if a == b {
        return Err(Failure::new(
            EXIT_DOMAIN,
            "--domain is required when all nodes coincide at one point",
        ));
    }
    writeln!(
        err,
        "warning: --domain not given; using [{a}, {b}] for bounds"
    )?;
    Ok(Some((a, b, true)))
}

fn warn_large(n: usize, backend: Backend, err: &mut dyn Write) -> CliResult<()> {
    if n > LARGE_N && backend == Backend::Float {
        writeln!(
            err,
            "warning: n = {n} conditions; float results may be ill-conditioned, consider --backend exact"
        )?;
    }
    Ok(())
}

fn check_inside(x: &Rational, interval: &(Rational, Rational, bool), flag: &str) -> CliResult<()> {
    if x < &interval.0 || x > &interval.1 {
        return Err(Failure::new(
            EXIT_DOMAIN,
            format!("{flag} {x} lies outside [{}, {}]", interval.0, interval.1),
        ));
    }
    Ok(())
}

fn grid_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|j| if j == n - 1 { b } else { a + step * j as f64 })
        .collect()
}

fn coeff_line<S: Scalar>(name: &str, p: &Polynomial<S>) -> String {
    let coeffs = p.to_strings();
    if coeffs.is_empty() {
        format!("{name} = [0]")
    } else {
        format!("{name} = [{}]", coeffs.join(", "))
    }
}

fn coeff_json<S: Scalar>(p: &Polynomial<S>) -> Value {
    let coeffs = p.to_strings();
    if coeffs.is_empty() {
        json!(["0"])
    } else {
        json!(coeffs)
    }
}

fn rolle_json(ns: &NodeSet<f64>) -> CliResult<Value> {
    let rows = zero_count_table(ns)
        .into_iter()
        .enumerate()
        .map(|(k, count)| {
            Ok(json!({"k": k, "count": count, "numeric": verify_rolle_numeric(ns, k)?}))
        })
        .collect::<CliResult<Vec<Value>>>()?;
    Ok(Value::Array(rows))
}

fn write_json(path: Option<&PathBuf>, value: &Value) -> CliResult<()> {
    if let Some(path) = path {
        let mut file = File::create(path)?;
        serde_json::to_writer_pretty(&mut file, value)
            .map_err(|e| Failure::new(EXIT_DOMAIN, e.to_string()))?;
        file.write_all(b"\n")?;
    }
    Ok(())
}

fn table_writer<'a>(
    path: Option<&PathBuf>,
    out: &'a mut dyn Write,
) -> CliResult<csv::Writer<Box<dyn Write + 'a>>> {
    let sink: Box<dyn Write + 'a> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(out),
    };
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink))
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::new(EXIT_DOMAIN, format!("csv: {e}"))
}

fn osculant_coeffs(
    f: &Expr,
    ns: &NodeSet<Rational>,
    backend: Backend,
) -> CliResult<(String, Value, Option<Polynomial<Rational>>)> {
    match backend {
        Backend::Exact => {
            let g = osculate(&HermiteData::from_expr(f, ns)?)?.g().clone();
            Ok((coeff_line("g", &g), coeff_json(&g), Some(g)))
        }
        Backend::Float => {
            let g = osculate_refined(&HermiteData::from_expr(f, &to_float_nodes(ns)?)?)?
                .g()
                .clone();
            Ok((coeff_line("g", &g), coeff_json(&g), None))
        }
    }
}

fn cmd_interp(args: &InterpArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let f = parse_expr(&args.f)?;
    let ns = parse_nodes(&args.common.nodes)?;
    let eval_x = args
        .table
        .eval
        .as_deref()
        .map(|t| parse_number(t, "--eval"))
        .transpose()?;
    let witness_x = args
        .witness
        .as_deref()
        .map(|t| parse_number(t, "--witness"))
        .transpose()?;
    if args.table.grid.is_some_and(|n| n < 2) {
        return Err(Failure::new(EXIT_PARSE, "--grid needs at least 2 points"));
    }
    let needs_interval = eval_x.is_some() || witness_x.is_some() || args.table.grid.is_some();
    let interval = resolve_interval(args.common.domain.as_deref(), &ns, needs_interval, err)?;
    warn_large(ns.n(), args.common.backend, err)?;

    let mut config = RunConfig {
        subcommand: "interp",
        function: Some(args.f.clone()),
        nodes: ns.to_string(),
        interval: interval.as_ref().map(|(a, b, _)| (a.to_f64(), b.to_f64())),
        interval_defaulted: interval.as_ref().is_some_and(|i| i.2),
        eval: eval_x.as_ref().map(Scalar::to_f64),
        grid: args.table.grid,
        deg_num: None,
        deg_den: None,
        witness: witness_x.as_ref().map(Scalar::to_f64),
        backend: args.common.backend,
        csv: args.table.csv.clone(),
        json_out: args.common.json_out.clone(),
    };

    let (line, coeffs, exact_g) = osculant_coeffs(&f, &ns, config.backend)?;
    writeln!(out, "{line}")?;

    let fns = to_float_nodes(&ns)?;
    let mut table = Vec::new();
    let mut witness = Value::Null;
    if let Some(iv) = &interval {
        let (a, b) = (iv.0.to_f64(), iv.1.to_f64());
        let tb = TaylorBound::new(&f, &fns, a, b)?;
        if let Some(x) = &eval_x {
            check_inside(x, iv, "--eval")?;
            let v = tb.at(x.to_f64())?;
            writeln!(out, "x = {}", format_f64(v.x))?;
            writeln!(out, "f(x) = {}", format_f64(v.f))?;
            match &exact_g {
                Some(g) => writeln!(out, "g(x) = {}", g.eval(x))?,
                None => writeln!(out, "g(x) = {}", format_f64(v.g))?,
            }
            writeln!(out, "abs_err = {}", format_f64(v.abs_err))?;
            writeln!(out, "bound = {}", format_f64(v.bound))?;
            table.push(
                json!({"x": v.x, "f": v.f, "g": v.g, "abs_err": v.abs_err, "bound": v.bound}),
            );
        }
        if let Some(x) = &witness_x {
            check_inside(x, iv, "--witness")?;
            let w = c_witness(&f, &fns, x.to_f64(), a, b)?;
            writeln!(out, "witness x = {}", format_f64(x.to_f64()))?;
            writeln!(out, "c = {}", format_f64(w.c))?;
            writeln!(out, "f^(n)(c) target = {}", format_f64(w.q))?;
            writeln!(out, "residual = {}", format_f64(w.residual))?;
            witness = json!({"x": x.to_f64(), "c": w.c, "q": w.q, "residual": w.residual});
        }
        if let Some(n) = args.table.grid {
            let mut wtr = table_writer(args.table.csv.as_ref(), out)?;
            wtr.write_record(["x", "f", "g", "abs_err", "bound"])
                .map_err(csv_failure)?;
            for x in grid_points(a, b, n) {
                let v = tb.at(x)?;
                wtr.write_record([v.x, v.f, v.g, v.abs_err, v.bound].map(format_f64))
                    .map_err(csv_failure)?;
                table.push(
                    json!({"x": v.x, "f": v.f, "g": v.g, "abs_err": v.abs_err, "bound": v.bound}),
                );
            }
            wtr.flush()?;
        }
    }

    config.nodes = args.common.nodes.clone();
    let doc = json!({
        "config": config,
        "coefficients": {"g": coeffs},
        "table": table,
        "diagnostics": {"witness": witness, "rolle": rolle_json(&fns)?},
    });
    write_json(args.common.json_out.as_ref(), &doc)
}

fn fit_coeffs(
    f: &Expr,
    ns: &NodeSet<Rational>,
    deg_u: usize,
    deg_v: usize,
    backend: Backend,
) -> CliResult<(Vec<String>, Value, RationalApproximant<f64>)> {
    let fns = to_float_nodes(ns)?;
    let fit_float = |u: &Polynomial<f64>, v: &Polynomial<f64>| {
        RationalApproximant::new(u.clone(), v.clone(), fns.clone())
    };
    match backend {
        Backend::Exact => {
            let r = rational_fit(&HermiteData::from_expr(f, ns)?, deg_u, deg_v)?;
            let lines = vec![coeff_line("u", r.u()), coeff_line("v", r.v())];
            let json = json!({"u": coeff_json(r.u()), "v": coeff_json(r.v())});
            let to_f = |p: &Polynomial<Rational>| {
                Polynomial::new(p.coeffs().iter().map(Scalar::to_f64).collect())
            };
            let approx = fit_float(&to_f(r.u()), &to_f(r.v()))?;
            Ok((lines, json, approx))
        }
        Backend::Float => {
            let r = rational_fit_refined(&HermiteData::from_expr(f, &fns)?, deg_u, deg_v)?;
            let lines = vec![coeff_line("u", r.u()), coeff_line("v", r.v())];
            let json = json!({"u": coeff_json(r.u()), "v": coeff_json(r.v())});
            Ok((lines, json, r))
        }
    }
}

enum Row {
    Value(RationalValue),
    Pole(f64),
}

fn rational_row_json(v: &RationalValue) -> Value {
    json!({"x": v.x, "f": v.f, "u_over_v": v.r, "abs_err": v.abs_err, "bound": v.bound, "pole": false})
}

/// Roots of `v` strictly between consecutive grid points, by bisection.
fn poles_between(v: &Polynomial<f64>, lo: f64, hi: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (vl, vh) = (v.eval(&lo), v.eval(&hi));
    if vl == 0.0 || vh == 0.0 || vl.signum() == vh.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if v.eval(&mid).signum() == vl.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn cmd_rational(args: &RationalArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let f = parse_expr(&args.f)?;
    let ns = parse_nodes(&args.common.nodes)?;
    let eval_x = args
        .table
        .eval
        .as_deref()
        .map(|t| parse_number(t, "--eval"))
        .transpose()?;
    if args.table.grid.is_some_and(|n| n < 2) {
        return Err(Failure::new(EXIT_PARSE, "--grid needs at least 2 points"));
    }
    let needs_interval = eval_x.is_some() || args.table.grid.is_some();
    let interval = resolve_interval(args.common.domain.as_deref(), &ns, needs_interval, err)?;
    warn_large(ns.n(), args.common.backend, err)?;

    let config = RunConfig {
        subcommand: "rational",
        function: Some(args.f.clone()),
        nodes: args.common.nodes.clone(),
        interval: interval.as_ref().map(|(a, b, _)| (a.to_f64(), b.to_f64())),
        interval_defaulted: interval.as_ref().is_some_and(|i| i.2),
        eval: eval_x.as_ref().map(Scalar::to_f64),
        grid: args.table.grid,
        deg_num: Some(args.deg_num),
        deg_den: Some(args.deg_den),
        witness: None,
        backend: args.common.backend,
        csv: args.table.csv.clone(),
        json_out: args.common.json_out.clone(),
    };

    let (lines, coeffs, approx) = fit_coeffs(&f, &ns, args.deg_num, args.deg_den, config.backend)?;
    for line in lines {
        writeln!(out, "{line}")?;
    }

    let mut table = Vec::new();
    if let Some(iv) = &interval {
        let (a, b) = (iv.0.to_f64(), iv.1.to_f64());
        let rb = RationalBound::new(&f, &approx, a, b)?;
        if let Some(x) = &eval_x {
            check_inside(x, iv, "--eval")?;
            let v = rb.at(x.to_f64())?;
            writeln!(out, "x = {}", format_f64(v.x))?;
            writeln!(out, "f(x) = {}", format_f64(v.f))?;
            writeln!(out, "u/v(x) = {}", format_f64(v.r))?;
            writeln!(out, "abs_err = {}", format_f64(v.abs_err))?;
            writeln!(out, "bound = {}", format_f64(v.bound))?;
            table.push(rational_row_json(&v));
        }
        if let Some(n) = args.table.grid {
            let mut wtr = table_writer(args.table.csv.as_ref(), out)?;
            wtr.write_record(["x", "f", "u_over_v", "abs_err", "bound", "pole"])
                .map_err(csv_failure)?;
            let xs = grid_points(a, b, n);
            let mut rows = Vec::with_capacity(n);
            for (j, &x) in xs.iter().enumerate() {
                match rb.at(x) {
                    Ok(v) => rows.push(Row::Value(v)),
                    Err(Error::Pole(_)) if rational_eval(&approx, &x).is_err() => {
                        rows.push(Row::Pole(x))
                    }
                    Err(e) => return Err(e.into()),
                }
                if let Some(p) = xs
                    .get(j + 1)
                    .and_then(|&next| poles_between(approx.v(), x, next))
                {
                    rows.push(Row::Pole(p));
                }
            }
            for row in rows {
                let (record, value) = match row {
                    Row::Value(v) => {
                        let mut rec = [v.x, v.f, v.r, v.abs_err, v.bound].map(format_f64).to_vec();
                        rec.push(String::new());
                        (rec, rational_row_json(&v))
                    }
                    Row::Pole(x) => {
                        let mut rec = vec![String::new(); 6];
                        rec[0] = format_f64(x);
                        rec[5] = "pole".into();
                        let value = json!({"x": x, "f": null, "u_over_v": null, "abs_err": null, "bound": null, "pole": true});
                        (rec, value)
                    }
                };
                wtr.write_record(&record).map_err(csv_failure)?;
                table.push(value);
            }
            wtr.flush()?;
        }
    }

    let rolle = rolle_json(&to_float_nodes(&ns)?)?;
    let doc = json!({
        "config": config,
        "coefficients": coeffs,
        "table": table,
        "diagnostics": {"witness": null, "rolle": rolle},
    });
    write_json(args.common.json_out.as_ref(), &doc)
}

fn cmd_rolle(args: &RolleArgs, out: &mut dyn Write) -> CliResult<()> {
    let ns = parse_nodes(&args.nodes)?;
    let fns = to_float_nodes(&ns)?;
    let table = zero_count_table(&ns);
    writeln!(out, "k #h^(k) numeric")?;
    for (k, count) in table.iter().enumerate() {
        writeln!(out, "{k} {count} {}", verify_rolle_numeric(&fns, k)?)?;
    }
    let last = *table.last().expect("n >= 1");
    writeln!(out, "#h^(n-1) = {last}")?;
    let doc = json!({
        "config": {"subcommand": "rolle", "nodes": args.nodes},
        "coefficients": {},
        "table": [],
        "diagnostics": {"witness": null, "rolle": rolle_json(&fns)?},
    });
    write_json(args.json_out.as_ref(), &doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("gts").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn node_lists() {
        let ns = parse_nodes("1:2, 0 ,-1/2:3").unwrap();
        assert_eq!(ns.to_string(), "-1/2:3,0:1,1:2");
        assert!(matches!(
            parse_nodes("0:2,0:1"),
            Err(Error::DuplicateNode(_))
        ));
        assert!(matches!(parse_nodes("0:x"), Err(Error::InvalidNodeSet(_))));
        assert!(matches!(parse_nodes(""), Err(Error::InvalidNodeSet(_))));
    }

    #[test]
    fn exact_remainder_of_cube() {
        let (code, out, _) = run_args(&[
            "interp",
            "--f",
            "x^3",
            "--nodes",
            "0:1,1:1,2:1",
            "--domain",
            "0:2",
            "--backend",
            "exact",
        ]);
        assert_eq!((code, out.as_str()), (0, "g = [0, -2, 3]\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_args(&["interp", "--f", "sin(x", "--nodes", "0:1"]).0,
            EXIT_PARSE
        );
        assert_eq!(
            run_args(&["interp", "--f", "x", "--nodes", "0:1,2:1", "--domain", "0:1"]).0,
            EXIT_DOMAIN
        );
        assert_eq!(
            run_args(&[
                "rational",
                "--f",
                "exp(x)",
                "--nodes",
                "0:2,1:2",
                "--deg-num",
                "3",
                "--deg-den",
                "1"
            ])
            .0,
            EXIT_NUMERIC
        );
        assert_eq!(run_args(&["rolle", "--nodes", "0:q"]).0, EXIT_PARSE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_PARSE);
        assert_eq!(
            run_args(&["interp", "--f", "x", "--nodes", "0:1,1:1", "--grid", "1"]).0,
            EXIT_PARSE
        );
    }

    #[test]
    fn missing_domain_is_warned() {
        let (code, _, err) = run_args(&[
            "interp", "--f", "exp(x)", "--nodes", "0:2,1:2", "--eval", "0.5",
        ]);
        assert_eq!(code, 0);
        assert!(err.starts_with("warning: --domain not given; using [0, 1]"));
    }

    #[test]
    fn grid_points_end_exactly() {
        let xs = grid_points(0.0, 1.0, 3);
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
    }
}
