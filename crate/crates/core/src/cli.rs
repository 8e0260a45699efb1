//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 numerical non-convergence.  Output files are written only after the
//! command has succeeded.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::erdos_turan::{et_bound, sup_log_oracle, EtBound, RootSet};
use crate::error::{Error, Result};
use crate::exp_kernel::{eval_l, eval_lhat, eval_m, eval_mhat, majorant_gap, minorant_gap};
use crate::forms::{form_bound, hls_constants, FormBound, HlsConstants, PointSet};
use crate::io::{self, fmt_f64, ser_f64, ser_opt_f64};
use crate::measures::{ExtValue, Measure};
use crate::periodic::{eval_p, g_poly, h_poly, l_poly, m_poly, q_mu, u_poly, TrigPoly};
use crate::superposed::{EntireApprox, Kind, Strategy};
use crate::verify::{self, Check, Suite};

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Band-limited majorants and minorants, sharp form constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a kernel, approximant or transform on a grid.
    Eval(EvalArgs),
    /// Fourier coefficients of a periodic extremal polynomial.
    Coeffs(CoeffsArgs),
    /// Sharp constants and bounds for Hermitian forms and polynomials.
    Bounds(BoundsArgs),
    /// Run self-verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalKind {
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
    #[value(name = "Lhat")]
    Lhat,
    #[value(name = "Mhat")]
    Mhat,
    #[value(name = "p")]
    P,
    #[value(name = "q")]
    Q,
    #[value(name = "G")]
    G,
    #[value(name = "H")]
    H,
    #[value(name = "U")]
    U,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: EvalKind,
    /// `a:b:n`, n points including both ends.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long)]
    lambda: Option<f64>,
    /// haar | power:σ | atomic:file.csv | weight:file.csv
    #[arg(long)]
    measure: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Add target and defect columns.
    #[arg(long)]
    with_target: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffKind {
    #[value(name = "l")]
    L,
    #[value(name = "m")]
    M,
    #[value(name = "g")]
    G,
    #[value(name = "h")]
    H,
    #[value(name = "uN")]
    UN,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[arg(long, value_enum)]
    kind: CoeffKind,
    #[arg(long = "N")]
    n: usize,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    measure: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Hls,
    Form,
    Et,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    kind: BoundKind,
    #[arg(long)]
    sigma: Option<f64>,
    /// Separation; for `form` defaults to the minimal gap of the points.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    measure: Option<String>,
    /// Points CSV: `xi` or `xi,re,im` rows.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Coefficients CSV: `re,im` rows.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Roots CSV: `re,im` rows.
    #[arg(long)]
    roots: Option<PathBuf>,
    #[arg(long = "N", default_value_t = 16)]
    n: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[command(flatten)]
    common: Common,
}

/// Rendered output plus the exit status it implies.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let echo = echo(&args);
    let (res, out) = match &cli.command {
        Command::Eval(a) => (eval(a), a.common.out.as_deref()),
        Command::Coeffs(a) => (coeffs(a), a.common.out.as_deref()),
        Command::Bounds(a) => (bounds(a, &echo), a.common.out.as_deref()),
        Command::Verify(a) => (run_verify(a, &echo), a.common.out.as_deref()),
    };
    match res.and_then(|o| emit(o, out)) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn emit(o: Output, out: Option<&Path>) -> Result<u8> {
    match out {
        Some(p) => std::fs::write(p, &o.text)?,
        None => print!("{}", o.text),
    }
    Ok(o.status)
}

/// The command line without the program name and `--out`, so that reports
/// do not depend on where they are written.
fn echo(args: &[OsString]) -> String {
    let mut parts = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        let s = a.to_string_lossy();
        if skip {
            skip = false;
            continue;
        }
        if s == "--out" {
            skip = true;
            continue;
        }
        if s.starts_with("--out=") {
            continue;
        }
        parts.push(s.into_owned());
    }
    parts.join(" ")
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("{kind} requires {flag}")))
}

fn measure_arg(name: Option<&str>, kind: &str) -> Result<Measure> {
    io::parse_measure(name.ok_or_else(|| Error::Invalid(format!("{kind} requires --measure")))?)
}

// ------------------------------------------------------------------- eval

#[derive(Debug, Serialize)]
struct Row {
    #[serde(serialize_with = "ser_f64")]
    x: f64,
    #[serde(serialize_with = "ser_f64")]
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    defect: Option<f64>,
}

#[derive(Serialize)]
struct EvalReport<'a> {
    kind: &'a str,
    rows: &'a [Row],
}

fn eval(a: &EvalArgs) -> Result<Output> {
    let grid = io::parse_grid(&a.grid)?;
    let name = a.kind.to_possible_value().expect("named").get_name().to_string();
    // U always reports its defect against log|x|
    let with_target = a.with_target || a.kind == EvalKind::U;
    if a.with_target && matches!(a.kind, EvalKind::Lhat | EvalKind::Mhat | EvalKind::P | EvalKind::Q) {
        return Err(Error::Invalid(format!("--with-target is not available for kind {name}")));
    }
    let lambda = || need(a.lambda, "--lambda", &name);
    let row = |x: f64, value: f64, target: f64, defect: f64| Row {
        x,
        value,
        target: with_target.then_some(target),
        defect: with_target.then_some(defect),
    };
    let plain = |x: f64, value: f64| Row { x, value, target: None, defect: None };
    let rows: Vec<Result<Row>> = match a.kind {
        EvalKind::L | EvalKind::M => {
            let l = lambda()?;
            let minor = a.kind == EvalKind::L;
            grid.par_iter()
                .map(|&x| {
                    let (v, d) = if minor {
                        (eval_l(l, x)?.value, minorant_gap(l, x)?)
                    } else {
                        (eval_m(l, x)?.value, majorant_gap(l, x)?)
                    };
                    Ok(row(x, v, (-l * x.abs()).exp(), d))
                })
                .collect()
        }
        EvalKind::Lhat => {
            let l = lambda()?;
            grid.par_iter().map(|&t| Ok(plain(t, eval_lhat(l, t)?.value))).collect()
        }
        EvalKind::Mhat => {
            let l = lambda()?;
            grid.par_iter().map(|&t| Ok(plain(t, eval_mhat(l, t)?.value))).collect()
        }
        EvalKind::P => {
            let l = lambda()?;
            grid.par_iter().map(|&x| Ok(plain(x, eval_p(l, x)?))).collect()
        }
        EvalKind::Q => {
            let m = measure_arg(a.measure.as_deref(), &name)?;
            grid.par_iter().map(|&x| Ok(plain(x, q_mu(&m, x)?.as_f64()))).collect()
        }
        EvalKind::G | EvalKind::H | EvalKind::U => {
            let (m, kind, sign) = match a.kind {
                EvalKind::G => (measure_arg(a.measure.as_deref(), &name)?, Kind::Minorant, 1.0),
                EvalKind::H => (measure_arg(a.measure.as_deref(), &name)?, Kind::Majorant, 1.0),
                _ => (Measure::haar(), Kind::Minorant, -1.0),
            };
            let delta = if a.kind == EvalKind::U { 1.0 } else { a.delta };
            let approx = EntireApprox::new(&m, kind, delta, Strategy::Series)?.with_tol(a.common.tol);
            grid.par_iter()
                .map(|&x| {
                    let v = approx.value(x)?.value;
                    let t = approx.target(x)?;
                    let d = match (t, kind) {
                        (ExtValue::PosInf, _) => f64::INFINITY,
                        (ExtValue::Finite(t), Kind::Minorant) => t - v,
                        (ExtValue::Finite(t), Kind::Majorant) => v - t,
                    };
                    // U = −G approximates log|x| = −f_Haar from above
                    Ok(row(x, sign * v, sign * t.as_f64(), d))
                })
                .collect()
        }
    };
    let rows: Vec<Row> = rows.into_iter().collect::<Result<_>>()?;
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from(if with_target { "x,value,target,defect\n" } else { "x,value\n" });
            for r in &rows {
                s.push_str(&fmt_f64(r.x));
                s.push(',');
                s.push_str(&fmt_f64(r.value));
                if let (Some(t), Some(d)) = (r.target, r.defect) {
                    s.push_str(&format!(",{},{}", fmt_f64(t), fmt_f64(d)));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => json(&EvalReport { kind: &name, rows: &rows }),
    };
    Ok(Output::ok(text))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

// ----------------------------------------------------------------- coeffs

fn coeffs(a: &CoeffsArgs) -> Result<Output> {
    let name = a.kind.to_possible_value().expect("named").get_name().to_string();
    let tol = a.common.tol;
    let poly: TrigPoly = match a.kind {
        CoeffKind::L => l_poly(need(a.lambda, "--lambda", &name)?, a.n)?,
        CoeffKind::M => m_poly(need(a.lambda, "--lambda", &name)?, a.n)?,
        CoeffKind::G => g_poly(&measure_arg(a.measure.as_deref(), &name)?, a.n, tol)?,
        CoeffKind::H => h_poly(&measure_arg(a.measure.as_deref(), &name)?, a.n, tol)?,
        CoeffKind::UN => u_poly(a.n, tol)?,
    };
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => poly.to_csv(),
        Format::Json => {
            let mut s = poly.to_json();
            s.push('\n');
            s
        }
    };
    Ok(Output::ok(text))
}

// ----------------------------------------------------------------- bounds

#[derive(Serialize)]
#[serde(untagged)]
enum BoundResults {
    Hls(HlsConstants),
    Form {
        measure: String,
        delta: f64,
        points: usize,
        #[serde(flatten)]
        bound: FormBound,
    },
    Et {
        #[serde(flatten)]
        bound: EtBound,
        #[serde(serialize_with = "ser_f64")]
        sup_estimate: f64,
    },
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    command: &'a str,
    seed: u64,
    tol: f64,
    results: BoundResults,
    checks: Vec<Check>,
}

fn bounds(a: &BoundsArgs, echo: &str) -> Result<Output> {
    const SLACK: f64 = 1e-9;
    let (results, checks) = match a.kind {
        BoundKind::Hls => {
            let h = hls_constants(need(a.sigma, "--sigma", "hls")?, need(a.delta, "--delta", "hls")?)?;
            (BoundResults::Hls(h), Vec::new())
        }
        BoundKind::Form => {
            let m = measure_arg(a.measure.as_deref(), "form")?;
            let path = a.points.as_deref().ok_or_else(|| Error::Invalid("form requires --points".into()))?;
            let (xi, inline) = io::read_points(path)?;
            let coef = match (&a.coeffs, inline) {
                (Some(c), _) => io::read_complex(c)?,
                (None, Some(c)) => c,
                (None, None) => {
                    return Err(Error::Invalid("form requires --coeffs or a points file with re,im columns".into()))
                }
            };
            let points = PointSet::new(xi, coef, a.delta)?;
            let b = form_bound(&points, &m)?;
            let mut checks =
                vec![Check::at_least("form.lower_slack", (b.form - b.lower) / b.norm2, 0.0, SLACK)];
            if let Some(u) = b.upper {
                checks.push(Check::at_least("form.upper_slack", (u - b.form) / b.norm2, 0.0, SLACK));
            }
            let res = BoundResults::Form { measure: m.name(), delta: points.delta, points: points.len(), bound: b };
            (res, checks)
        }
        BoundKind::Et => {
            let path = a.roots.as_deref().ok_or_else(|| Error::Invalid("et requires --roots".into()))?;
            let roots = RootSet::new(io::read_complex(path)?)?;
            let b = et_bound(&roots, a.n)?;
            let sup = sup_log_oracle(&roots);
            let checks = vec![Check::at_least("et.bound_minus_sup", b.total - sup, 0.0, SLACK)];
            (BoundResults::Et { bound: b, sup_estimate: sup }, checks)
        }
    };
    let status = if checks.iter().all(|c| c.pass) { 0 } else { 1 };
    let report = BoundsReport { command: echo, seed: a.common.seed, tol: a.common.tol, results, checks };
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => {
            let value = serde_json::to_value(&report.results).expect("serialisable");
            let mut s = String::from("key,value\n");
            if let serde_json::Value::Object(map) = value {
                for (k, v) in map {
                    let v = match v {
                        serde_json::Value::Null => String::new(),
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k},{v}\n"));
                }
            }
            for c in &report.checks {
                s.push_str(&format!("{},{}\n", c.name, fmt_f64(c.observed)));
            }
            s
        }
    };
    Ok(Output { text, status })
}

// ----------------------------------------------------------------- verify

fn run_verify(a: &VerifyArgs, echo: &str) -> Result<Output> {
    let report = verify::run_suite(a.suite, a.common.seed, echo);
    let status = if report.pass {
        0
    } else if report.numerical_failure {
        3
    } else {
        1
    };
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("criterion,name,pass,observed,expected,tol\n");
            for c in &report.criteria {
                for k in &c.checks {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        c.criterion,
                        k.name,
                        k.pass,
                        fmt_f64(k.observed),
                        fmt_f64(k.expected),
                        fmt_f64(k.tol)
                    ));
                }
            }
            s
        }
    };
    Ok(Output { text, status })
}
