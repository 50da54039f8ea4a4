//! One entry point over every evaluation route, with recurrence-based
//! argument reduction and per-route tolerance plumbing.
//!
//! `tol` is a relative target throughout. Quadrature-backed routes turn
//! it into an absolute budget with a Stirling magnitude estimate, and the
//! oscillatory Euler integrals are always evaluated right of Re s = 4
//! when |Im s| > 2 (the recurrence division is exactly conditioned, while
//! the raw integral loses the e^{-pi |Im s|/2} cancellation factor in
//! absolute terms).

use crate::contours::{self, ContourSpec};
use crate::error::{Error, Result};
use crate::factorization;
use crate::hurwitz;
use crate::integral_reps;
use crate::method::Method;
use crate::numerics::{
    c, principal_log, reduce_to_right, rising_product, Complex, EvalResult, QuadratureSpec,
};
use crate::products;

/// Rough |Gamma(s)| from Stirling, used only to scale tolerances.
fn gamma_magnitude(s: Complex) -> f64 {
    let n = s.norm();
    if n < 0.25 {
        return 1.0 / n.max(1e-8);
    }
    let ls = principal_log(s).expect("nonzero by the norm check");
    let log_mag = ((s - 0.5) * ls - s).re + 0.5 * (2.0 * std::f64::consts::PI).ln();
    log_mag.clamp(-600.0, 600.0).exp()
}

/// Gamma(x) on the positive axis, same Stirling flavor; the integrand
/// mass of the Euler integral, which sets the roundoff floor.
fn real_gamma_magnitude(x: f64) -> f64 {
    if x < 1.5 {
        1.0 / x + 1.0
    } else {
        gamma_magnitude(c(x, 0.0))
    }
}

fn exact_pole(s: Complex) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// Divide out the recurrence product after evaluating at s + n.
fn unwind(r: EvalResult, s: Complex, n: u32, method: Method) -> Result<EvalResult> {
    if n == 0 {
        return Ok(EvalResult::new(r.value, r.err_estimate, method, r.work));
    }
    let p = rising_product(s, n);
    if p.norm() == 0.0 {
        return Err(Error::Pole(s));
    }
    Ok(EvalResult::new(
        r.value / p,
        r.err_estimate / p.norm(),
        method,
        r.work,
    ))
}

fn euler_family(method: Method, s: Complex, tol: f64, reduce: bool) -> Result<EvalResult> {
    if s.re <= 0.0 && !reduce {
        return Err(Error::Domain(format!(
            "{method} needs Re s > 0 (got {}); pass --reduce to apply the recurrence",
            s.re
        )));
    }
    // The log form cannot resolve the e^{-Re s}-wide spike it develops
    // near u = 1 for large Re s, so it always works in a fixed window and
    // unwinds with the exact rising product.
    let down_shift = match method {
        Method::EulerLog => ((s.re - 4.5).ceil()).max(0.0) as u32,
        _ => 0,
    };
    let (sp, n) = if down_shift > 0 {
        (s - down_shift as f64, 0)
    } else if s.re > 0.0 && s.im.abs() <= 2.0 {
        (s, 0)
    } else {
        reduce_to_right(s, if s.im.abs() > 2.0 { 4.0 } else { 0.5 })
    };
    let abs_tol = (tol * gamma_magnitude(sp)).max(1e-13 * real_gamma_magnitude(sp.re));
    let spec = QuadratureSpec::gauss(abs_tol.min(1e-2));
    let r = match method {
        Method::EulerIntegral => integral_reps::gamma_euler_integral(sp, &spec)?,
        Method::EulerLog => integral_reps::gamma_euler_log_form(sp, &spec)?,
        _ => unreachable!("euler_family only handles the Euler forms"),
    };
    if down_shift > 0 {
        // Gamma(s) = Gamma(s - m) * (s - m)(s - m + 1)...(s - 1)
        let p = rising_product(sp, down_shift);
        return Ok(EvalResult::new(
            r.value * p,
            r.err_estimate * p.norm(),
            method,
            r.work,
        ));
    }
    unwind(r, s, n, method)
}

fn malmsten_route(s: Complex, tol: f64, reduce: bool) -> Result<EvalResult> {
    let (sp, n) = if s.re > -0.99 {
        (s, 0)
    } else if reduce {
        reduce_to_right(s, -0.5)
    } else {
        return Err(Error::Domain(format!(
            "malmsten needs Re s > -1 (got {}); pass --reduce to apply the recurrence",
            s.re
        )));
    };
    let spec = QuadratureSpec::gauss((tol / 3.0).clamp(1e-13, 1e-3));
    let lg = integral_reps::log_gamma_malmsten(sp, &spec)?; // log Gamma(sp + 1)
    if sp.re == 0.0 && sp.im == 0.0 {
        return Err(Error::Pole(s));
    }
    let value = lg.value.exp() / sp;
    let r = EvalResult::new(
        value,
        value.norm() * lg.err_estimate,
        Method::Malmsten,
        lg.work,
    );
    unwind(r, s, n, Method::Malmsten)
}

fn lerch_route(s: Complex, tol: f64, reduce: bool) -> Result<EvalResult> {
    let off_cut = s.im != 0.0 || s.re > 0.0;
    let (sp, n) = if off_cut {
        (s, 0)
    } else if reduce {
        reduce_to_right(s, 0.5)
    } else {
        return Err(Error::Domain(format!(
            "lerch needs s off the closed negative real axis (got {s}); pass --reduce"
        )));
    };
    let lg = hurwitz::log_gamma_lerch(sp, (tol / 3.0).clamp(1e-14, 1e-3))?;
    let value = lg.value.exp();
    let r = EvalResult::new(value, value.norm() * lg.err_estimate, Method::Lerch, lg.work);
    unwind(r, s, n, Method::Lerch)
}

fn laplace_route(s: Complex, tol: f64, reduce: bool) -> Result<EvalResult> {
    // the truncated tail decays like Y^{1 - Re s}; with reduction allowed
    // the evaluation always shifts to a comfortably supercritical
    // exponent, otherwise anything right of Re s = 1 runs as-is and may
    // hit the truncation cap
    let (sp, n) = if reduce && s.re < 4.5 {
        reduce_to_right(s, 4.5)
    } else if s.re > 1.0 {
        (s, 0)
    } else {
        return Err(Error::Domain(format!(
            "laplace needs Re s > 1 (got {}); pass --reduce to apply the recurrence",
            s.re
        )));
    };
    let x = 1.0;
    let abs_tol = (tol / gamma_magnitude(sp)).clamp(1e-13, 1e-3);
    let y = contours::laplace_truncation(sp, x, abs_tol);
    let r = contours::recip_gamma_laplace(sp, x, y, &QuadratureSpec::gauss(abs_tol))?;
    if r.value.norm() == 0.0 {
        return Err(Error::Pole(s));
    }
    let value = 1.0 / r.value;
    let inv = EvalResult::new(
        value,
        r.err_estimate / r.value.norm().powi(2),
        Method::Laplace,
        r.work,
    );
    unwind(inv, s, n, Method::Laplace)
}

fn hankel_route(s: Complex) -> Result<EvalResult> {
    match contours::gamma_hankel(s, &ContourSpec::for_gamma(s)) {
        Err(Error::NearInteger(_)) => {
            // serve integers through the entire reciprocal integral,
            // shifted to the window around 1 by the recurrence
            let m = s.re.round() as i64;
            if m >= 1 {
                let steps = (m - 1) as u32;
                let base = s - steps as f64;
                let r = contours::recip_gamma_hankel(base, &ContourSpec::for_recip_gamma(base))?;
                if r.value.norm() == 0.0 {
                    return Err(Error::Pole(s));
                }
                let prod = rising_product(base, steps);
                let value = prod / r.value;
                Ok(EvalResult::new(
                    value,
                    value.norm() * r.err_estimate / r.value.norm(),
                    Method::Hankel,
                    r.work,
                ))
            } else {
                let steps = (1 - m) as u32;
                let lifted = s + steps as f64;
                let r = contours::recip_gamma_hankel(lifted, &ContourSpec::for_recip_gamma(lifted))?;
                if r.value.norm() == 0.0 {
                    return Err(Error::Pole(s));
                }
                let inv = EvalResult::new(
                    1.0 / r.value,
                    r.err_estimate / r.value.norm().powi(2),
                    Method::Hankel,
                    r.work,
                );
                unwind(inv, s, steps, Method::Hankel)
            }
        }
        other => other,
    }
}

fn recip_hankel_route(s: Complex) -> Result<EvalResult> {
    let r = contours::recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s))?;
    if r.value.norm() == 0.0 {
        return Err(Error::Pole(s));
    }
    Ok(EvalResult::new(
        1.0 / r.value,
        r.err_estimate / r.value.norm().powi(2),
        Method::RecipHankel,
        r.work,
    ))
}

/// Evaluates Gamma(s) by the requested route.
///
/// `reduce` permits the recurrence to extend restricted-domain routes
/// (euler-integral, euler-log, malmsten, laplace, lerch) to any s off the
/// poles; the all-plane routes ignore it.
pub fn gamma(method: Method, s: Complex, tol: f64, reduce: bool) -> Result<EvalResult> {
    assert!(tol > 0.0);
    if exact_pole(s) {
        return Err(Error::Pole(s));
    }
    match method {
        Method::Weierstrass => factorization::gamma_weierstrass(s, tol),
        Method::Gauss => products::gamma_gauss(s, tol),
        Method::Birkhoff => {
            let n = (1.0 / (6.0 * tol)).ceil().clamp(64.0, (1u64 << 21) as f64) as u64;
            products::gamma_birkhoff(s, n)
        }
        Method::Hankel => hankel_route(s),
        Method::RecipHankel => recip_hankel_route(s),
        Method::Laplace => laplace_route(s, tol, reduce),
        Method::EulerIntegral | Method::EulerLog => euler_family(method, s, tol, reduce),
        Method::Malmsten => malmsten_route(s, tol, reduce),
        Method::Lerch => lerch_route(s, tol, reduce),
        other => Err(Error::Domain(format!("{other} is not a Gamma route"))),
    }
}

/// log Gamma(w) on the real-axis-anchored branch: the argument is pulled
/// back into the window Re in [1, 2) and the recurrence logs are added.
/// At the exact normalization point Gamma(1) = 1 the result is exactly 0,
/// which keeps the asymptotic diagnostics bit-clean at integer arguments.
pub fn log_gamma(method: Method, w: Complex, tol: f64) -> Result<Complex> {
    let steps = ((w.re - 1.0).floor().max(0.0)) as u64;
    let base = w - steps as f64;
    let mut acc = if base == c(1.0, 0.0) {
        c(0.0, 0.0)
    } else {
        match method {
            Method::Malmsten => {
                let spec = QuadratureSpec::gauss((tol / 3.0).clamp(1e-13, 1e-3));
                integral_reps::log_gamma_malmsten(base - 1.0, &spec)?.value
            }
            Method::Lerch => hurwitz::log_gamma_lerch(base, tol)?.value,
            m => principal_log(gamma(m, base, tol, true)?.value)?,
        }
    };
    for k in 0..steps {
        acc += principal_log(base + k as f64)?;
    }
    Ok(acc)
}

/// log n! accumulated exactly like [`log_gamma`] at integer arguments.
pub fn log_factorial(n: u64) -> Complex {
    let mut acc = c(0.0, 0.0);
    for k in 0..n.saturating_sub(1) {
        acc += principal_log(c(1.0 + (k + 1) as f64, 0.0)).expect("positive argument");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn every_route_hits_sqrt_pi() {
        let target = c(PI.sqrt(), 0.0);
        for (m, tol, budget) in [
            (Method::EulerIntegral, 1e-12, 1e-10),
            (Method::EulerLog, 1e-12, 1e-8),
            (Method::Hankel, 1e-12, 1e-10),
            (Method::Lerch, 1e-12, 1e-10),
            (Method::Malmsten, 1e-12, 1e-10),
            (Method::RecipHankel, 1e-12, 1e-10),
            (Method::Gauss, 1e-8, 1e-6),
            (Method::Weierstrass, 1e-8, 1e-6),
            (Method::Laplace, 1e-8, 1e-6),
            (Method::Birkhoff, 1e-7, 1e-6),
        ] {
            let r = gamma(m, c(0.5, 0.0), tol, true).unwrap();
            assert!(
                rel(r.value, target) < budget,
                "{m}: rel {:e}",
                rel(r.value, target)
            );
        }
    }

    #[test]
    fn hankel_integer_delegation() {
        let r = gamma(Method::Hankel, c(3.0, 0.0), 1e-10, false).unwrap();
        assert!(rel(r.value, c(2.0, 0.0)) < 1e-11);
        let r = gamma(Method::Hankel, c(13.0, 0.0), 1e-10, false).unwrap();
        assert!(rel(r.value, c(479_001_600.0, 0.0)) < 1e-11);
        // near a negative integer the recurrence unwinds through the pole
        let s = c(-2.0 + 1e-9, 0.0);
        let r = gamma(Method::Hankel, s, 1e-10, false).unwrap();
        assert!(r.value.norm() > 1e8);
    }

    #[test]
    fn domain_gates_respect_reduce_flag() {
        assert!(matches!(
            gamma(Method::Laplace, c(0.5, 0.0), 1e-8, false),
            Err(Error::Domain(_))
        ));
        let r = gamma(Method::Laplace, c(0.5, 0.0), 1e-8, true).unwrap();
        assert!(rel(r.value, c(PI.sqrt(), 0.0)) < 1e-6);

        assert!(matches!(
            gamma(Method::EulerIntegral, c(-0.5, 0.0), 1e-10, false),
            Err(Error::Domain(_))
        ));
        let r = gamma(Method::EulerIntegral, c(-0.5, 0.0), 1e-10, true).unwrap();
        assert!(rel(r.value, c(-2.0 * PI.sqrt(), 0.0)) < 1e-9);
    }

    #[test]
    fn poles_rejected_everywhere() {
        for m in Method::REGISTRY {
            assert!(
                matches!(gamma(m, c(-4.0, 0.0), 1e-8, true), Err(Error::Pole(_))),
                "{m}"
            );
        }
    }

    #[test]
    fn oscillatory_arguments_stay_accurate() {
        // cross-check the conditioned Euler integral against the Lerch
        // route high in the strip
        let s = c(0.25, 8.0);
        let a = gamma(Method::EulerIntegral, s, 1e-11, false).unwrap();
        let b = gamma(Method::Lerch, s, 1e-11, false).unwrap();
        assert!(rel(a.value, b.value) < 1e-9, "rel {:e}", rel(a.value, b.value));
    }

    #[test]
    fn log_gamma_window_consistency() {
        // log Gamma(7.5) = log Gamma(1.5) + sum of recurrence logs
        let w = c(7.5, 0.0);
        for m in [Method::Malmsten, Method::Lerch, Method::EulerIntegral] {
            let lg = log_gamma(m, w, 1e-11).unwrap();
            let direct = gamma(m, w, 1e-11, false).unwrap().value;
            assert!((lg.exp() - direct).norm() / direct.norm() < 1e-9, "{m}");
        }
    }

    #[test]
    fn log_factorial_matches_integer_log_gamma() {
        let lg = log_gamma(Method::Malmsten, c(6.0, 0.0), 1e-10).unwrap();
        assert_eq!(lg, log_factorial(5));
    }
}
