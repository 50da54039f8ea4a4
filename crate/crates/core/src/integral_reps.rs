//! Real-axis integral representations: Euler's integral in both forms,
//! the Binet-Malmsten integral for log Gamma, the Gauss integral for the
//! digamma function, the Frullani integral for log s, and the Gaussian
//! integral.
//!
//! The Malmsten/Gauss/Frullani integrands all have removable
//! singularities at t = 0; below t0 = 1e-3 they are replaced by 4-term
//! Taylor expansions, and the switch point is kept on a panel boundary.
//! Complex s is allowed everywhere (the integrands are entire in s); the
//! domain restrictions are exactly the classical ones.

use crate::error::{Error, Result};
use crate::method::Method;
use crate::numerics::{
    c, integrate, Complex, EvalResult, QuadratureKind, QuadratureSpec,
};

const T0: f64 = 1e-3;

fn sub_spec(spec: &QuadratureSpec, kind: QuadratureKind, abs_tol: f64) -> QuadratureSpec {
    QuadratureSpec::new(kind, spec.level, abs_tol)
}

/// Gamma(s) = int_0^inf t^{s-1} e^{-t} dt for Re s > 0: tanh-sinh on the
/// singular (0,1] piece plus Gauss-Legendre on [1, T], T = 40 + 5|s|,
/// with the e^{-T} T^{Re s} tail folded into the estimate.
pub fn gamma_euler_integral(s: Complex, spec: &QuadratureSpec) -> Result<EvalResult> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "Euler integral needs Re s > 0 (got {}); reduce via the recurrence first",
            s.re
        )));
    }
    let f = |t: f64| (c(t.ln(), 0.0) * (s - 1.0) - t).exp();
    let t_max = 40.0 + 5.0 * s.norm();
    let tail = (-t_max).exp() * t_max.powf(s.re);

    let head = integrate(
        f,
        0.0,
        1.0,
        &sub_spec(spec, QuadratureKind::TanhSinh, spec.abs_tol / 2.0),
    )?;
    let rest = integrate(
        f,
        1.0,
        t_max,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    Ok(EvalResult::new(
        head.value + rest.value,
        head.err_estimate + rest.err_estimate + tail,
        Method::EulerIntegral,
        head.work + rest.work,
    ))
}

/// Gamma(s) = int_0^1 (log(1/t))^{s-1} dt, the log form of Euler's
/// integral; equal to the previous one under u = e^{-t}. Evaluated with
/// the substitution u = 1 - t so the algebraic singularity sits at 0,
/// where tanh-sinh abscissas are exact.
pub fn gamma_euler_log_form(s: Complex, spec: &QuadratureSpec) -> Result<EvalResult> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "log-form Euler integral needs Re s > 0 (got {})",
            s.re
        )));
    }
    let f = |u: f64| {
        // log(1/(1-u)) = -ln(1-u), accurate for u near 0
        let inner = -(-u).ln_1p();
        if inner <= 0.0 {
            return c(0.0, 0.0);
        }
        (c(inner.ln(), 0.0) * (s - 1.0)).exp()
    };
    let r = integrate(
        f,
        0.0,
        1.0,
        &sub_spec(spec, QuadratureKind::TanhSinh, spec.abs_tol),
    )?;
    Ok(EvalResult::new(
        r.value,
        r.err_estimate,
        Method::EulerLog,
        r.work,
    ))
}

// Taylor coefficients (4 terms) of the Malmsten integrand
// (s - (1-e^{-st})/(1-e^{-t})) e^{-t}/t = e^{-t} (a + b t + c t^2 + d t^3 + ...)
fn malmsten_patch(s: Complex) -> [Complex; 4] {
    let a = s * (s - 1.0) / 2.0;
    let b = -s * (s - 1.0) * (s * 2.0 - 1.0) / 12.0;
    let cc = s * s * (s - 1.0) * (s - 1.0) / 24.0;
    let d = -s * (s * s * s * s / 120.0 - s * s * s / 48.0 + s * s / 72.0 - c(1.0 / 720.0, 0.0));
    [a, b, cc, d]
}

fn poly4(coef: &[Complex; 4], t: f64) -> Complex {
    ((coef[3] * t + coef[2]) * t + coef[1]) * t + coef[0]
}

/// log Gamma(s+1) = int_0^inf (s - (1-e^{-st})/(1-e^{-t})) e^{-t}/t dt
/// for Re s > -1.
pub fn log_gamma_malmsten(s: Complex, spec: &QuadratureSpec) -> Result<EvalResult> {
    if s.re <= -1.0 {
        return Err(Error::Domain(format!(
            "Malmsten integral needs Re s > -1 (got {})",
            s.re
        )));
    }
    let patch = malmsten_patch(s);
    let near = |t: f64| poly4(&patch, t) * (-t).exp();
    // exact integrand rearranged so every exponential decays on its own:
    // s e^{-t}/t - (e^{-t} - e^{-(s+1)t}) / ((1-e^{-t}) t)
    let far = |t: f64| {
        let emt = (-t).exp();
        let es1 = (-(s + 1.0) * t).exp();
        (s * emt - (c(emt, 0.0) - es1) / (1.0 - emt)) / t
    };

    let decay = (1.0 + s.re).min(1.0);
    let t_max = (40.0 + 5.0 * s.norm()) / decay;
    let tail = ((-t_max).exp() * (s.norm() + 1.0)
        + (-(1.0 + s.re) * t_max).exp() / (1.0 + s.re))
        / t_max;
    // truncated Taylor term bound on [0, t0]
    let patch_err = (s.norm() + 1.0).powi(6) / 720.0 * T0.powi(5) / 5.0;

    let head = integrate(
        near,
        0.0,
        T0,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    let rest = integrate(
        far,
        T0,
        t_max,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    Ok(EvalResult::new(
        head.value + rest.value,
        head.err_estimate + rest.err_estimate + tail + patch_err,
        Method::Malmsten,
        head.work + rest.work,
    ))
}

// Taylor coefficients of (1 - t e^{-st}/(1-e^{-t})) e^{-t}/t.
fn digamma_patch(s: Complex) -> [Complex; 4] {
    let a = s - 0.5;
    let b = s / 2.0 - s * s / 2.0 - 1.0 / 12.0;
    let cc = s * s * s / 6.0 - s * s / 4.0 + s / 12.0;
    let d = -s * s * s * s / 24.0 + s * s * s / 12.0 - s * s / 24.0 + 1.0 / 720.0;
    [a, b, cc, d]
}

/// psi(s+1) = Gamma'(s+1)/Gamma(s+1)
/// = int_0^inf (1 - t e^{-st}/(1-e^{-t})) e^{-t}/t dt for Re s > -1.
pub fn digamma_gauss(s: Complex, spec: &QuadratureSpec) -> Result<EvalResult> {
    if s.re <= -1.0 {
        return Err(Error::Domain(format!(
            "Gauss digamma integral needs Re s > -1 (got {})",
            s.re
        )));
    }
    let patch = digamma_patch(s);
    let near = |t: f64| poly4(&patch, t) * (-t).exp();
    // e^{-t}/t - e^{-(s+1)t}/(1-e^{-t})
    let far = |t: f64| {
        let emt = (-t).exp();
        let es1 = (-(s + 1.0) * t).exp();
        c(emt / t, 0.0) - es1 / (1.0 - emt)
    };

    let decay = (1.0 + s.re).min(1.0);
    let t_max = (40.0 + 5.0 * s.norm()) / decay;
    let tail = (-t_max).exp() / t_max + (-(1.0 + s.re) * t_max).exp() / (1.0 + s.re);
    let patch_err = (s.norm() + 1.0).powi(5) / 120.0 * T0.powi(5) / 5.0;

    let head = integrate(
        near,
        0.0,
        T0,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    let rest = integrate(
        far,
        T0,
        t_max,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    Ok(EvalResult::new(
        head.value + rest.value,
        head.err_estimate + rest.err_estimate + tail + patch_err,
        Method::DigammaGauss,
        head.work + rest.work,
    ))
}

/// log s = int_0^inf (e^{-t} - e^{-st})/t dt for Re s > 0 (Frullani).
pub fn frullani_log(s: Complex, spec: &QuadratureSpec) -> Result<EvalResult> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "Frullani integral needs Re s > 0 (got {})",
            s.re
        )));
    }
    let near = |t: f64| {
        let patch = [
            s - 1.0,
            -(s * s - 1.0) / 2.0,
            (s * s * s - 1.0) / 6.0,
            -(s * s * s * s - 1.0) / 24.0,
        ];
        poly4(&patch, t)
    };
    let far = |t: f64| (c((-t).exp(), 0.0) - (-s * t).exp()) / t;

    let decay = s.re.min(1.0);
    let t_max = (40.0 + 5.0 * s.norm()) / decay;
    let tail = ((-t_max).exp() + (-s.re * t_max).exp() / s.re) / t_max;
    let patch_err = (s.norm().powi(5) + 1.0) / 120.0 * T0.powi(5) / 5.0;

    let head = integrate(
        near,
        0.0,
        T0,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    let rest = integrate(
        far,
        T0,
        t_max,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol / 2.0),
    )?;
    Ok(EvalResult::new(
        head.value + rest.value,
        head.err_estimate + rest.err_estimate + tail + patch_err,
        Method::FrullaniLog,
        head.work + rest.work,
    ))
}

/// int_0^inf e^{-x^2} dx by direct quadrature. The substitution t = x^2
/// identifies it with Gamma(1/2)/2 = sqrt(pi)/2, half the value the
/// classical corollary is usually quoted with.
pub fn gaussian_integral(spec: &QuadratureSpec) -> Result<EvalResult> {
    let t_max = 9.0f64;
    let tail = (-t_max * t_max).exp() / (2.0 * t_max);
    let r = integrate(
        |x| c((-x * x).exp(), 0.0),
        0.0,
        t_max,
        &sub_spec(spec, QuadratureKind::GaussLegendreComposite, spec.abs_tol),
    )?;
    Ok(EvalResult::new(
        r.value,
        r.err_estimate + tail,
        Method::GaussianIntegral,
        r.work,
    ))
}
