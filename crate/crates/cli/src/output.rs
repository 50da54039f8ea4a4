//! JSON payloads and small formatting helpers. The report schema here is
//! the stable machine-readable contract:
//! {suite, method, grid:{...}, points_tested, max_residual,
//!  worst_point:{re,im}, failures:[{re,im,residual}], passed, tool_version}

use serde::Serialize;

use gammaforge::numerics::Complex;
use gammaforge::verify::{GridSpec, VerificationReport};
use gammaforge::Method;

pub fn format_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

// JSON has no Inf; failed evaluations surface as f64::MAX residuals.
fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

#[derive(Serialize)]
pub struct JsonGrid {
    re_min: f64,
    re_max: f64,
    re_steps: usize,
    im_min: f64,
    im_max: f64,
    im_steps: usize,
    pole_exclusion_radius: f64,
}

impl From<&GridSpec> for JsonGrid {
    fn from(g: &GridSpec) -> Self {
        JsonGrid {
            re_min: g.re_min,
            re_max: g.re_max,
            re_steps: g.re_steps,
            im_min: g.im_min,
            im_max: g.im_max,
            im_steps: g.im_steps,
            pole_exclusion_radius: g.pole_exclusion_radius,
        }
    }
}

#[derive(Serialize)]
pub struct JsonPoint {
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct JsonFailure {
    re: f64,
    im: f64,
    residual: f64,
}

#[derive(Serialize)]
pub struct JsonReport {
    suite: String,
    method: String,
    grid: JsonGrid,
    points_tested: u64,
    max_residual: f64,
    worst_point: JsonPoint,
    failures: Vec<JsonFailure>,
    passed: bool,
    tool_version: String,
}

impl JsonReport {
    pub fn new(report: &VerificationReport, grid: &GridSpec, tool_version: &str) -> Self {
        JsonReport {
            suite: report.suite.clone(),
            method: report
                .methods
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(","),
            grid: grid.into(),
            points_tested: report.points_tested,
            max_residual: finite(report.max_residual),
            worst_point: JsonPoint {
                re: report.worst_point.re,
                im: report.worst_point.im,
            },
            failures: report
                .failures
                .iter()
                .map(|(pt, r)| JsonFailure {
                    re: pt.re,
                    im: pt.im,
                    residual: finite(*r),
                })
                .collect(),
            passed: report.passed,
            tool_version: tool_version.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct JsonEval {
    method: String,
    s: JsonPoint,
    value: JsonPoint,
    err_estimate: f64,
    work: u64,
}

impl JsonEval {
    pub fn new(method: Method, s: Complex, value: Complex, err_estimate: f64, work: u64) -> Self {
        JsonEval {
            method: method.name().to_string(),
            s: JsonPoint { re: s.re, im: s.im },
            value: JsonPoint {
                re: value.re,
                im: value.im,
            },
            err_estimate,
            work,
        }
    }
}
