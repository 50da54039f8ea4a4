//! gammaforge: evaluate the Gamma function by any route, compare routes
//! over grids, run verification suites, and print the built-in constants.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage or domain
//! error, 3 numerical non-convergence.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use gammaforge::numerics::{c, Complex};
use gammaforge::products::euler_mascheroni;
use gammaforge::verify::{self, GridSpec, VerificationReport};
use gammaforge::{hurwitz, routes, Error, Method};

use output::{format_complex, JsonEval, JsonReport};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "gammaforge", version, about = "Cross-validating Gamma function evaluator")]
struct Cli {
    /// Optional key=value config file overriding default_tol and the grid
    /// (flags override the config).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    re_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    re_max: Option<f64>,
    #[arg(long)]
    re_steps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    im_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    im_max: Option<f64>,
    #[arg(long)]
    im_steps: Option<usize>,
    #[arg(long)]
    pole_exclusion: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one route at a point.
    Eval {
        /// weierstrass | gauss | birkhoff | hankel | recip-hankel |
        /// laplace | euler-integral | euler-log | malmsten | lerch
        #[arg(long)]
        method: String,
        /// Complex argument, "a+bi" or "a,b".
        #[arg(long, allow_negative_numbers = true)]
        s: String,
        #[arg(long)]
        tol: Option<f64>,
        /// Apply the recurrence so restricted-domain routes accept any s
        /// off the poles.
        #[arg(long)]
        reduce: bool,
        /// text | json | csv
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Cross-compare routes over a grid.
    Compare {
        /// Comma-separated route list (at least two).
        #[arg(long, value_delimiter = ',')]
        methods: Vec<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a verification suite and emit its JSON report.
    Verify {
        /// functional | reflection | duplication | residues | conjugate |
        /// strip | convexity | falsifier
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "euler-integral")]
        method: String,
        /// Falsifier family index (falsifier suite).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i32,
        /// Largest pole index (residues suite).
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Sample count for the convexity suite.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        tol: Option<f64>,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print gamma, zeta'(0), Gamma(1/2) and a reflection-formula sample.
    Constants {
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Debug, Default, Clone)]
struct FileConfig {
    default_tol: Option<f64>,
    grid: GridArgs,
}

fn config_field<T: FromStr>(key: &str, value: &str, lineno: usize) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("config line {}: bad value for {key}: {e}", lineno + 1))
}

fn parse_config(path: &PathBuf) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "default_tol" => cfg.default_tol = Some(config_field(key, value, lineno)?),
            "re_min" => cfg.grid.re_min = Some(config_field(key, value, lineno)?),
            "re_max" => cfg.grid.re_max = Some(config_field(key, value, lineno)?),
            "re_steps" => cfg.grid.re_steps = Some(config_field(key, value, lineno)?),
            "im_min" => cfg.grid.im_min = Some(config_field(key, value, lineno)?),
            "im_max" => cfg.grid.im_max = Some(config_field(key, value, lineno)?),
            "im_steps" => cfg.grid.im_steps = Some(config_field(key, value, lineno)?),
            "pole_exclusion_radius" => {
                cfg.grid.pole_exclusion = Some(config_field(key, value, lineno)?)
            }
            other => return Err(format!("config line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(cfg)
}

/// Builtin defaults <- config <- flags.
fn resolve_grid(cfg: &FileConfig, flags: &GridArgs) -> GridSpec {
    let std = GridSpec::standard();
    let pick_f =
        |flag: Option<f64>, conf: Option<f64>, dflt: f64| flag.or(conf).unwrap_or(dflt);
    let pick_u =
        |flag: Option<usize>, conf: Option<usize>, dflt: usize| flag.or(conf).unwrap_or(dflt);
    GridSpec::new(
        pick_f(flags.re_min, cfg.grid.re_min, std.re_min),
        pick_f(flags.re_max, cfg.grid.re_max, std.re_max),
        pick_u(flags.re_steps, cfg.grid.re_steps, std.re_steps),
        pick_f(flags.im_min, cfg.grid.im_min, std.im_min),
        pick_f(flags.im_max, cfg.grid.im_max, std.im_max),
        pick_u(flags.im_steps, cfg.grid.im_steps, std.im_steps),
        pick_f(flags.pole_exclusion, cfg.grid.pole_exclusion, std.pole_exclusion_radius),
    )
}

fn resolve_tol(flag: Option<f64>, cfg: &FileConfig, dflt: f64) -> f64 {
    flag.or(cfg.default_tol).unwrap_or(dflt)
}

/// Accepts "a+bi" / "a-bi" / "bi" / "a" / "a,b".
fn parse_complex(text: &str) -> Result<Complex, String> {
    let t: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some((re, im)) = t.split_once(',') {
        let re: f64 = re.parse().map_err(|_| format!("bad real part '{re}'"))?;
        let im: f64 = im.parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
        return Ok(c(re, im));
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // find the sign splitting re from im, skipping exponent signs
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let re: f64 = if re_part.is_empty() {
            0.0
        } else {
            re_part.parse().map_err(|_| format!("bad real part '{re_part}'"))?
        };
        let im: f64 = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().map_err(|_| format!("bad imaginary part '{other}'"))?,
        };
        return Ok(c(re, im));
    }
    let re: f64 = t.parse().map_err(|_| format!("bad complex literal '{t}'"))?;
    Ok(c(re, 0.0))
}

fn parse_method(name: &str) -> Result<Method, String> {
    Method::from_str(name)
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn eval_error_code(err: &Error) -> ExitCode {
    match err {
        Error::Domain(_) | Error::Pole(_) | Error::NearInteger(_) => ExitCode::from(2),
        Error::Convergence { .. } | Error::DivergentDivisor { .. } | Error::Estimation(_) => {
            ExitCode::from(3)
        }
    }
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("GAMMAFORGE_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(0) | Err(_) => {} // 0 or unparseable = automatic
            Ok(n) => {
                let _ = verify::configure_threads(n);
            }
        }
    }
}

fn cmd_eval(method: &str, s: &str, tol: f64, reduce: bool, format: &str) -> ExitCode {
    let method = match parse_method(method) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    let s = match parse_complex(s) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    match routes::gamma(method, s, tol, reduce) {
        Ok(r) => {
            match format {
                "json" => {
                    let payload = JsonEval::new(method, s, r.value, r.err_estimate, r.work);
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                "csv" => {
                    println!("re,im,value_re,value_im,err_estimate,method");
                    println!(
                        "{},{},{},{},{:e},{}",
                        s.re, s.im, r.value.re, r.value.im, r.err_estimate, method
                    );
                }
                _ => {
                    println!(
                        "method={} s={} value={} err_estimate={:.3e} work={}",
                        method,
                        format_complex(s),
                        format_complex(r.value),
                        r.err_estimate,
                        r.work
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            eval_error_code(&e)
        }
    }
}

fn cmd_compare(methods: &[String], grid: &GridSpec, tol: f64, format: &str) -> ExitCode {
    if methods.len() < 2 {
        return usage_error("compare needs at least two methods");
    }
    let mut parsed = Vec::new();
    for name in methods {
        match parse_method(name) {
            Ok(m) => parsed.push(m),
            Err(e) => return usage_error(&e),
        }
    }
    let report = verify::cross_compare(&parsed, grid, tol);

    match format {
        "json" => {
            println!(
                "{}",
                serde_json::to_string_pretty(&JsonReport::new(&report, grid, TOOL_VERSION))
                    .unwrap()
            );
        }
        "csv" => {
            println!("re,im,value_re,value_im,err_estimate,method");
            let rt = (tol * 1e-2).clamp(2e-13, 1e-8);
            for s in grid.points(verify::Exclusion::NonPositiveIntegers) {
                for &m in &parsed {
                    match routes::gamma(m, s, rt, true) {
                        Ok(r) => println!(
                            "{},{},{},{},{:e},{}",
                            s.re, s.im, r.value.re, r.value.im, r.err_estimate, m
                        ),
                        Err(_) => println!("{},{},nan,nan,inf,{}", s.re, s.im, m),
                    }
                }
            }
        }
        _ => {
            println!(
                "compare {}: {} points, max deviation {:.3e} at {} (tol {:.1e}) -> {}",
                methods.join(","),
                report.points_tested,
                report.max_residual,
                format_complex(report.worst_point),
                tol,
                if report.passed { "PASS" } else { "FAIL" }
            );
            for (pt, res) in report.failures.iter().take(10) {
                println!("  deviation {:.3e} at {}", res, format_complex(*pt));
            }
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    method: &str,
    k: i32,
    n_max: u32,
    steps: usize,
    grid: &GridSpec,
    tol: Option<f64>,
    cfg: &FileConfig,
    report_path: Option<&PathBuf>,
    format: &str,
) -> ExitCode {
    let method = match parse_method(method) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    let pick = |dflt: f64| resolve_tol(tol, cfg, dflt);
    let report: VerificationReport = match suite {
        "functional" => verify::check_functional_eq(method, grid, pick(1e-8)),
        "reflection" => verify::check_reflection(method, grid, pick(1e-9)),
        "duplication" => verify::check_duplication(method, grid, pick(1e-8)),
        "residues" => verify::check_residues(method, n_max, pick(1e-8)),
        "conjugate" => verify::check_conjugate_symmetry(method, grid, pick(1e-9)),
        "strip" => verify::check_strip_bound(method, grid.re_min, grid.re_max, grid.im_max, pick(1e-9)),
        "convexity" => verify::check_log_convexity(method, grid.re_min, grid.re_max, steps),
        "falsifier" => verify::falsifier_report(k, method, grid, pick(1e-8)),
        other => {
            return usage_error(&format!(
                "unknown suite '{other}'; known: functional, reflection, duplication, residues, conjugate, strip, convexity, falsifier"
            ))
        }
    };

    let json = serde_json::to_string_pretty(&JsonReport::new(&report, grid, TOOL_VERSION)).unwrap();
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(path, &json) {
            return usage_error(&format!("cannot write report {}: {e}", path.display()));
        }
    }
    if format == "text" {
        println!(
            "suite {} / {}: {} points, max residual {:.3e} (tol {:.1e}) -> {}",
            report.suite,
            method,
            report.points_tested,
            report.max_residual,
            report.tolerance,
            if report.passed { "PASS" } else { "FAIL" }
        );
        for (pt, res) in report.failures.iter().take(10) {
            println!("  residual {:.3e} at {}", res, format_complex(*pt));
        }
    } else {
        println!("{json}");
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_constants(format: &str) -> ExitCode {
    let gamma_const = euler_mascheroni(1_000_000);
    let gamma_err = 1.0 / (8.0 * 1e12);
    let zp = hurwitz::zeta_prime_0();
    let half = routes::gamma(Method::Hankel, c(0.5, 0.0), 1e-12, false);
    let half = match half {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return eval_error_code(&e);
        }
    };

    // reflection-formula sample: Gamma(s) Gamma(1-s) against pi/sin(pi s)
    let spec_tol = 1e-11;
    let mut table = Vec::new();
    for s in [0.25, 0.5, 0.75] {
        let a = routes::gamma(Method::EulerIntegral, c(s, 0.0), spec_tol, true).unwrap();
        let b = routes::gamma(Method::EulerIntegral, c(1.0 - s, 0.0), spec_tol, true).unwrap();
        let product = (a.value * b.value).re;
        let expect = std::f64::consts::PI / (std::f64::consts::PI * s).sin();
        table.push((s, product, expect));
    }

    match format {
        "json" => {
            let payload = serde_json::json!({
                "euler_mascheroni": { "value": gamma_const, "err_estimate": gamma_err, "method": "harmonic-sum(N=1e6)" },
                "zeta_prime_0": { "value": zp.value.re, "err_estimate": zp.err_estimate, "method": zp.method.name() },
                "gamma_half": { "value": half.value.re, "err_estimate": half.err_estimate, "method": "hankel", "sqrt_pi": std::f64::consts::PI.sqrt() },
                "reflection_table": table.iter().map(|(s, got, expect)| {
                    serde_json::json!({ "s": s, "gamma_product": got, "pi_over_sin": expect })
                }).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        "csv" => {
            println!("name,value,err_estimate,method");
            println!("euler_mascheroni,{gamma_const},{gamma_err:e},harmonic-sum(N=1e6)");
            println!("zeta_prime_0,{},{:e},{}", zp.value.re, zp.err_estimate, zp.method);
            println!("gamma_half,{},{:e},hankel", half.value.re, half.err_estimate);
            for (s, got, expect) in &table {
                println!("reflection@{s},{got},{:e},euler-integral", (got - expect).abs());
            }
        }
        _ => {
            println!(
                "gamma (Euler-Mascheroni) = {gamma_const:.12} +/- {gamma_err:.1e}   [harmonic sum, N = 1e6]"
            );
            println!(
                "zeta'(0)                = {:.12} +/- {:.1e}   [Hurwitz continuation at t = 0]",
                zp.value.re, zp.err_estimate
            );
            println!(
                "Gamma(1/2)              = {:.12} +/- {:.1e}   [hankel]  (sqrt(pi) = {:.12})",
                half.value.re,
                half.err_estimate,
                std::f64::consts::PI.sqrt()
            );
            println!("reflection sample Gamma(s)Gamma(1-s) vs pi/sin(pi s) [euler-integral]:");
            for (s, got, expect) in &table {
                println!("  s = {s:4}: {got:.12} vs {expect:.12}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();

    let cfg = match &cli.config {
        Some(path) => match parse_config(path) {
            Ok(c) => c,
            Err(e) => return usage_error(&e),
        },
        None => FileConfig::default(),
    };

    match &cli.command {
        Command::Eval {
            method,
            s,
            tol,
            reduce,
            format,
        } => cmd_eval(method, s, resolve_tol(*tol, &cfg, 1e-10), *reduce, format),
        Command::Compare {
            methods,
            grid,
            tol,
            format,
        } => cmd_compare(
            methods,
            &resolve_grid(&cfg, grid),
            resolve_tol(*tol, &cfg, 1e-8),
            format,
        ),
        Command::Verify {
            suite,
            method,
            k,
            n_max,
            steps,
            grid,
            tol,
            report,
            format,
        } => cmd_verify(
            suite,
            method,
            *k,
            *n_max,
            *steps,
            &resolve_grid(&cfg, grid),
            *tol,
            &cfg,
            report.as_ref(),
            format,
        ),
        Command::Constants { format } => cmd_constants(format),
    }
}
