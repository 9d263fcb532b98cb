//! The `sections` command line: radius queries, (α, β) tables, figure data,
//! bound evaluation, section thresholds and the verification suites.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sections_core::bounds::{
    fig3_radius, s1_value, s2_value, tail_abs_bound, tail_deriv_bound, tail_second_deriv_bound, ThresholdConstants,
};
use sections_core::radii::{aux_psi, radius_of_property_with_tol, Property, RadiusQuery, ROOT_TOL, SCAN_STEP};
use sections_core::verify::{run_suite, Suite, SuiteConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SYNOPSIS: &str = "\
usage: sections [--exploratory] [-o <path>] <command>
  radius --alpha <f> --beta <f> --property convex|starlike|ctc [--tol <f>] [--json]
  table --property P --alpha-min <f> --alpha-max <f> --alpha-step <f> --beta-min <f> --beta-max <f> --beta-step <f>
  figure --id 1|2|3
  bounds --n <int> --alpha <f> --rho <f>
  thresholds [--json]
  verify --suite all|coeffs|radii|tails|sections|rogosinski|monotonicity|thresholds [--seed <int>] [--json]";

#[derive(Debug, Clone, Parser)]
#[command(
    name = "sections",
    version,
    about = "Radii and section bounds for the class G(alpha)"
)]
pub struct CliConfig {
    /// Allow alpha > 1 (outside the proved range), with a warning.
    #[arg(long, global = true)]
    pub exploratory: bool,

    /// Write output to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Convex,
    Starlike,
    Ctc,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Convex => Property::ConvexOrder,
            PropertyArg::Starlike => Property::StarlikeOrder,
            PropertyArg::Ctc => Property::CloseToConvexOrder,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Coeffs,
    Radii,
    Tails,
    Sections,
    Rogosinski,
    Monotonicity,
    Thresholds,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Coeffs => Suite::Coeffs,
            SuiteArg::Radii => Suite::Radii,
            SuiteArg::Tails => Suite::Tails,
            SuiteArg::Sections => Suite::Sections,
            SuiteArg::Rogosinski => Suite::Rogosinski,
            SuiteArg::Monotonicity => Suite::Monotonicity,
            SuiteArg::Thresholds => Suite::Thresholds,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Least positive root of the indicator for one (alpha, beta, property).
    Radius {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Bisection tolerance.
        #[arg(long, default_value_t = ROOT_TOL)]
        tol: f64,
        /// Output is always JSON; accepted for symmetry with other commands.
        #[arg(long)]
        json: bool,
    },
    /// CSV of radii over an (alpha, beta) grid.
    Table {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_step: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta_step: f64,
    },
    /// CSV data behind figures 1-3.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
    },
    /// Tail bounds and S1, S2 at one (n, alpha, rho).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
    },
    /// Least section indices for the closed-disk ctc and starlike results.
    Thresholds {
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites; exits 2 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = sections_core::seeds::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<sections_core::Error> for Failure {
    fn from(e: sections_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// What a command produced and whether every check in it passed.
struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "error: {}\n{SYNOPSIS}", one_line(&e.to_string()));
            1
        }
    }
}

/// The message part of a clap error, without its usage and help trailer,
/// folded onto one line.
fn one_line(rendered: &str) -> String {
    let message = rendered
        .split("\n\nUsage:")
        .next()
        .and_then(|m| m.split("\n\nFor more information").next())
        .unwrap_or(rendered);
    let message = message.strip_prefix("error: ").unwrap_or(message);
    message.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Exit code 0 on success, 1 on usage or I/O errors, 2 when a verification
/// check fails.
pub fn run(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if config.exploratory {
        let _ = writeln!(
            stderr,
            "warning: --exploratory accepts alpha > 1, outside the range where the radius theorems hold"
        );
    }
    let result = execute(config).and_then(|out| {
        match &config.output {
            Some(path) => File::create(path)?.write_all(out.text.as_bytes())?,
            None => stdout.write_all(out.text.as_bytes())?,
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n{SYNOPSIS}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn execute(config: &CliConfig) -> Result<Output, Failure> {
    let exploratory = config.exploratory;
    match config.command {
        Command::Radius {
            alpha,
            beta,
            property,
            tol,
            ..
        } => radius_json(alpha, beta, property.into(), tol, exploratory).map(Output::ok),
        Command::Table {
            property,
            alpha_min,
            alpha_max,
            alpha_step,
            beta_min,
            beta_max,
            beta_step,
        } => {
            let alphas = axis("alpha", alpha_min, alpha_max, alpha_step)?;
            let betas = axis("beta", beta_min, beta_max, beta_step)?;
            table_csv(property.into(), &alphas, &betas, exploratory).map(Output::ok)
        }
        Command::Figure { id } => figure_csv(id).map(Output::ok),
        Command::Bounds { n, alpha, rho } => bounds_json(n, alpha, rho, exploratory).map(Output::ok),
        Command::Thresholds { .. } => Ok(Output::ok(thresholds_json())),
        Command::Verify { suite, seed, json } => verify(suite.into(), seed, json),
    }
}

fn query(alpha: f64, beta: f64, property: Property, exploratory: bool) -> Result<RadiusQuery, Failure> {
    Ok(if exploratory {
        RadiusQuery::exploratory(alpha, beta, property)?
    } else {
        RadiusQuery::new(alpha, beta, property)?
    })
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("tol = {tol} must lie in (0, 1e-3]")))
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values are serializable");
    s.push('\n');
    s
}

fn radius_json(alpha: f64, beta: f64, property: Property, tol: f64, exploratory: bool) -> Result<String, Failure> {
    check_tol(tol)?;
    let q = query(alpha, beta, property, exploratory)?;
    let r = radius_of_property_with_tol(&q, tol);
    Ok(pretty(&json!({
        "query": {"alpha": alpha, "beta": beta, "property": property.name(), "exploratory": exploratory},
        "result": {"rho": r.rho, "residual": r.residual, "converged": r.converged},
        "meta": {"tol": tol, "scanStep": SCAN_STEP, "version": VERSION},
    })))
}

/// `min, min + step, ...` up to `max`, by index so the endpoint is not lost
/// to accumulated rounding.
fn axis(name: &str, min: f64, max: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(step > 0.0 && min <= max && min.is_finite() && max.is_finite()) {
        return Err(Failure::Usage(format!(
            "{name} range needs min <= max and step > 0 (got {min}..{max} step {step})"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize;
    if count > 100_000 {
        return Err(Failure::Usage(format!("{name} range has too many points")));
    }
    Ok((0..=count).map(|i| min + i as f64 * step).collect())
}

/// Formats like C's `%.10g`: ten significant digits, trailing zeros dropped.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if (-5..10).contains(&exp) {
        trim(&format!("{x:.*}", (9 - exp) as usize))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

fn table_csv(property: Property, alphas: &[f64], betas: &[f64], exploratory: bool) -> Result<String, Failure> {
    let mut w = csv_writer();
    w.write_record(["alpha", "beta", "rho", "residual", "converged"])?;
    for &alpha in alphas {
        for &beta in betas {
            let r = radius_of_property_with_tol(&query(alpha, beta, property, exploratory)?, ROOT_TOL);
            w.write_record([
                format_sig(alpha),
                format_sig(beta),
                format_sig(r.rho),
                format_sig(r.residual),
                r.converged.to_string(),
            ])?;
        }
    }
    finish(w)
}

/// Rows of figure `id`: ψ₂ or ψ₆ against α for five β values, or the
/// coefficient-sum radius against n.
fn figure_csv(id: u8) -> Result<String, Failure> {
    let mut w = csv_writer();
    match id {
        1 | 2 => {
            let psi = if id == 1 { 2 } else { 6 };
            w.write_record(["alpha", "beta", &format!("psi{psi}")])?;
            for beta in [0.0, 0.2, 0.4, 0.6, 0.8] {
                for i in 1..=20 {
                    let alpha = i as f64 * 0.05;
                    let v = aux_psi(psi, alpha, beta)?;
                    w.write_record([format_sig(alpha), format_sig(beta), format_sig(v)])?;
                }
            }
        }
        3 => {
            w.write_record(["n", "radius"])?;
            for n in 2..=40usize {
                w.write_record([n.to_string(), format_sig(fig3_radius(n))])?;
            }
        }
        _ => return Err(Failure::Usage(format!("no figure {id}"))),
    }
    finish(w)
}

fn bounds_json(n: usize, alpha: f64, rho: f64, exploratory: bool) -> Result<String, Failure> {
    if !exploratory && alpha > 1.0 {
        return Err(Failure::Usage(format!("alpha = {alpha} is outside (0, 1]")));
    }
    Ok(pretty(&json!({
        "query": {"n": n, "alpha": alpha, "rho": rho, "exploratory": exploratory},
        "result": {
            "tail_abs": tail_abs_bound(alpha, rho)?,
            "tail_deriv": tail_deriv_bound(alpha, rho)?,
            "tail_second_deriv": tail_second_deriv_bound(alpha, rho)?,
            "s1": s1_value(n, rho)?,
            "s2": s2_value(n, rho)?,
        },
        "meta": {"version": VERSION},
    })))
}

pub fn thresholds_json() -> String {
    let p = ThresholdConstants::ROUNDED;
    let ctc = p.threshold_ctc();
    let star = p.threshold_starlike();
    let deg = |x: f64| x.asin().to_degrees();
    let c_row = |n: usize| json!({"n": n, "C_n": p.c_n(n), "asin_deg": if p.c_n(n) <= 1.0 { json!(deg(p.c_n(n))) } else { Value::Null }});
    let ef_row = |n: usize| {
        json!({
            "n": n,
            "E_n": p.e_n(n),
            "F_n": p.f_n(n),
            "angle_sum_deg": p.starlike_angle_deg(n),
        })
    };
    pretty(&json!({
        "ctc_n": ctc,
        "starlike_n": star,
        "ctc": {
            "radius": p.ctc_radius,
            "budget_deg": p.ctc_budget_deg,
            "before": c_row(ctc - 1),
            "at": c_row(ctc),
        },
        "starlike": {
            "radius": p.starlike_radius,
            "budget_deg": p.starlike_budget_deg,
            "before": ef_row(star - 1),
            "at": ef_row(star),
        },
        "meta": {"version": VERSION},
    }))
}

fn verify(suite: Suite, seed: u64, as_json: bool) -> Result<Output, Failure> {
    let reports = run_suite(suite, &SuiteConfig::with_seed(seed)).map_err(|e| Failure::Runtime(e.to_string()))?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let text = if as_json {
        pretty(&json!({
            "suite": suite.name(),
            "seed": seed,
            "pass": failed == 0,
            "reports": reports,
            "meta": {"version": VERSION},
        }))
    } else {
        let mut s = String::new();
        for r in &reports {
            let status = if r.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{status} {} margin={}\n",
                r.check_id,
                format_sig(r.worst_margin)
            ));
            for note in &r.notes {
                s.push_str(&format!("     note: {note}\n"));
            }
        }
        s.push_str(&format!(
            "{} checks, {failed} failed (suite {suite}, seed {seed})\n",
            reports.len()
        ));
        s
    };
    Ok(Output {
        text,
        passed: failed == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_sig_matches_percent_g() {
        assert_eq!(format_sig(0.6321205588285577), "0.6321205588");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.05), "0.05");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-2.5), "-2.5");
        assert_eq!(format_sig(1.234e-7), "1.234e-07");
        assert_eq!(format_sig(0.0001234), "0.0001234");
        assert_eq!(format_sig(12345678901.0), "1.23456789e+10");
        assert_eq!(format_sig(9999999999.6), "1e+10");
        assert_eq!(format_sig(3f64.sqrt() - 1.0), "0.7320508076");
    }

    #[test]
    fn axis_includes_endpoint() {
        let a = axis("alpha", 0.1, 1.0, 0.1).ok().unwrap();
        assert_eq!(a.len(), 10);
        assert!((a[9] - 1.0).abs() < 1e-12);
        assert!(axis("alpha", 1.0, 0.5, 0.1).is_err());
        assert!(axis("alpha", 0.0, 1.0, 0.0).is_err());
    }
}
