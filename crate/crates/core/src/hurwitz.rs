//! Hurwitz zeta: the defining series for Re t > 1, the first-order
//! Euler-McLaurin continuation to Re t > -1, its t-derivative at 0, and
//! the Lerch route log Gamma(s) = d/dt zeta(t,s)|_{t=0} - zeta'(0).
//!
//! The sawtooth integral int_0^inf (u - [u] - 1/2) (u+s)^{-t-1} du is
//! summed interval by interval with fixed 16-node Gauss-Legendre panels;
//! the mean-zero sawtooth makes the k-th interval O((k+|s|)^{-Re t - 2}),
//! and one Richardson step in the variable w = 1/(s+K) removes the
//! leading tail.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::method::Method;
use crate::numerics::{
    c, gauss_legendre_nodes, principal_log, principal_pow, Complex, EvalResult,
};

fn check_s_domain(s: Complex) -> Result<()> {
    if s.im == 0.0 && s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "Hurwitz zeta needs s off the closed negative real axis (got {s})"
        )));
    }
    Ok(())
}

/// Partial sums of the sawtooth integral at K and 2K, extrapolated to
/// K = infinity. Returns (value, error bound on the remainder, work).
fn sawtooth_integral(t: Complex, s: Complex, tol: f64) -> Result<(Complex, f64, u64)> {
    let re_t = t.re;
    let tn = t.norm();
    let coeff = (tn + 1.0) * (tn + 2.0) * (tn + 3.0) / 80.0;
    let k1 = ((coeff / tol).powf(1.0 / (re_t + 3.0)).ceil() as u64).clamp(16, 1 << 22);
    let k2 = 2 * k1;

    let rule = gauss_legendre_nodes(16);
    let exponent = -(t + 1.0);
    let interval = |k: u64| -> Complex {
        let base = s + k as f64;
        let mut acc = c(0.0, 0.0);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let u = 0.5 + 0.5 * x; // interval [k, k+1]
            let saw = u - 0.5;
            acc += principal_pow(base + u, exponent).expect("u + s stays off the cut") * saw * *w;
        }
        acc * 0.5
    };

    let mut s1 = c(0.0, 0.0);
    for k in 0..k1 {
        s1 += interval(k);
    }
    let mut s2 = s1;
    for k in k1..k2 {
        s2 += interval(k);
    }

    // tail(K) = A w^{t+1} + O(w^{t+3}) with w = 1/(s+K); eliminate the
    // leading power with the two partials
    let w1 = 1.0 / (s + k1 as f64);
    let w2 = 1.0 / (s + k2 as f64);
    let p1 = principal_pow(w1, t + 1.0).expect("w off the cut");
    let p2 = principal_pow(w2, t + 1.0).expect("w off the cut");
    let correction = (s2 - s1) * p2 / (p1 - p2);
    let value = s2 + correction;
    let err = 2.0 * coeff * (k2 as f64 + s.re.max(-(k1 as f64) / 2.0)).powf(-(re_t + 3.0))
        + 1e-16 * k2 as f64 * 1e-2;
    Ok((value, err, k2 * 16))
}

/// zeta(t, s) = sum_{k>=0} (s+k)^{-t} for Re t > 1, with the first-order
/// Euler-McLaurin closure at the truncation point: the integral tail
/// (s+K)^{1-t}/(t-1) and half-term (s+K)^{-t}/2 join the partial sum, and
/// the sawtooth remainder bound lands in the error estimate.
pub fn hurwitz_series(t: Complex, s: Complex, tol: f64) -> Result<EvalResult> {
    if t.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Hurwitz series needs Re t > 1 (got {})",
            t.re
        )));
    }
    check_s_domain(s)?;

    let remainder = |k: f64| -> f64 {
        t.norm() * (t + 1.0).norm() / (8.0 * (t.re + 1.0)) * (k + s.re).powf(-(t.re + 1.0))
    };
    let mut k_terms = 16u64;
    while remainder(k_terms as f64) > tol / 2.0 && k_terms < (1 << 24) {
        k_terms *= 2;
    }

    let mut sum = c(0.0, 0.0);
    for k in 0..k_terms {
        sum += principal_pow(s + k as f64, -t)?;
    }
    let edge = s + k_terms as f64;
    sum += principal_pow(edge, 1.0 - t)? / (t - 1.0);
    sum += principal_pow(edge, -t)? / 2.0;

    Ok(EvalResult::new(
        sum,
        remainder(k_terms as f64),
        Method::HurwitzSeries,
        k_terms,
    ))
}

/// The Euler-McLaurin continuation
/// zeta(t,s) = s^{1-t}/(t-1) + s^{-t}/2 - t int_0^inf (u-[u]-1/2)/(u+s)^{t+1} du,
/// valid for Re t > -1, t != 1.
pub fn hurwitz_continued(t: Complex, s: Complex, tol: f64) -> Result<EvalResult> {
    if t.re <= -1.0 {
        return Err(Error::Domain(format!(
            "continuation needs Re t > -1 (got {})",
            t.re
        )));
    }
    if (t - 1.0).norm() < 1e-12 {
        return Err(Error::Pole(t));
    }
    check_s_domain(s)?;

    let closed = principal_pow(s, 1.0 - t)? / (t - 1.0) + principal_pow(s, -t)? / 2.0;
    if t.re == 0.0 && t.im == 0.0 {
        // the integral term carries the factor t
        return Ok(EvalResult::new(closed, 1e-16 * closed.norm(), Method::HurwitzContinued, 0));
    }
    let tn = t.norm();
    let (integral, ierr, work) = sawtooth_integral(t, s, tol / (2.0 * tn))?;
    let value = closed - t * integral;
    Ok(EvalResult::new(
        value,
        tn * ierr + 4e-16 * closed.norm(),
        Method::HurwitzContinued,
        work,
    ))
}

/// d/dt zeta(t,s) at t = 0:
/// (s - 1/2) log s - s - int_0^inf (u-[u]-1/2)/(u+s) du.
pub fn hurwitz_dt_at0(s: Complex, tol: f64) -> Result<EvalResult> {
    check_s_domain(s)?;
    let (integral, ierr, work) = sawtooth_integral(c(0.0, 0.0), s, tol / 2.0)?;
    let closed = (s - 0.5) * principal_log(s)? - s;
    Ok(EvalResult::new(
        closed - integral,
        ierr + 4e-16 * closed.norm().max(1.0),
        Method::HurwitzDt0,
        work,
    ))
}

/// zeta'(0) = [d/dt zeta(t, s)]_{t=0} at s = 1, cached after the first
/// call (write-once; concurrent readers are fine).
pub fn zeta_prime_0() -> EvalResult {
    static CACHE: OnceLock<EvalResult> = OnceLock::new();
    let r = CACHE.get_or_init(|| {
        let r = hurwitz_dt_at0(c(1.0, 0.0), 1e-13).expect("s = 1 is in-domain");
        EvalResult::new(r.value, r.err_estimate, Method::ZetaPrime0, r.work)
    });
    *r
}

/// Lerch's formula: log Gamma(s) = d/dt zeta(t,s)|_{t=0} - zeta'(0),
/// the analytic branch of log Gamma on C - R_-.
pub fn log_gamma_lerch(s: Complex, tol: f64) -> Result<EvalResult> {
    let dt = hurwitz_dt_at0(s, tol / 2.0)?;
    let zp = zeta_prime_0();
    Ok(EvalResult::new(
        dt.value - zp.value,
        dt.err_estimate + zp.err_estimate,
        Method::Lerch,
        dt.work + zp.work,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn series_basel_value() {
        // oracle: direct summation to 10^6 terms plus the 1/K tail
        let mut direct = 0.0f64;
        let big = 1_000_000u64;
        for k in (1..=big).rev() {
            direct += 1.0 / (k as f64 * k as f64);
        }
        direct += 1.0 / big as f64 - 1.0 / (2.0 * (big as f64).powi(2));
        let v = hurwitz_series(c(2.0, 0.0), c(1.0, 0.0), 1e-10).unwrap();
        assert!((v.value.re - direct).abs() < 1e-8);
        assert!((v.value.re - PI * PI / 6.0).abs() < 1e-10);
        assert!(v.value.im.abs() < 1e-14);
    }

    #[test]
    fn series_shift_drops_first_term() {
        let v = hurwitz_series(c(2.0, 0.0), c(2.0, 0.0), 1e-10).unwrap();
        assert!((v.value.re - (PI * PI / 6.0 - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn series_telescoping() {
        // zeta(t,s) - zeta(t,s+1) = s^{-t}
        let t = c(2.5, 0.5);
        let s = c(1.3, 0.0);
        let a = hurwitz_series(t, s, 1e-11).unwrap().value;
        let b = hurwitz_series(t, s + 1.0, 1e-11).unwrap().value;
        let direct = principal_pow(s, -t).unwrap();
        assert!((a - b - direct).norm() < 1e-10);
    }

    #[test]
    fn series_domain_guard() {
        assert!(matches!(
            hurwitz_series(c(0.5, 0.0), c(1.0, 0.0), 1e-8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hurwitz_series(c(2.0, 0.0), c(-1.0, 0.0), 1e-8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn continued_agrees_with_series_in_overlap() {
        let t = c(2.5, 0.0);
        let s = c(1.7, 0.0);
        let a = hurwitz_series(t, s, 1e-11).unwrap().value;
        let b = hurwitz_continued(t, s, 1e-11).unwrap().value;
        assert!((a - b).norm() / b.norm() < 1e-9, "dev {:e}", (a - b).norm());
    }

    #[test]
    fn continued_at_zero_t() {
        // zeta(0, s) = 1/2 - s from the closed terms
        let s = c(1.8, 0.7);
        let v = hurwitz_continued(c(0.0, 0.0), s, 1e-10).unwrap();
        assert!((v.value - (c(0.5, 0.0) - s)).norm() < 1e-14);
    }

    #[test]
    fn continued_pole_behavior_near_one() {
        for dt in [1e-3, -1e-3] {
            let t = c(1.0 + dt, 0.0);
            let v = hurwitz_continued(t, c(1.0, 0.0), 1e-11).unwrap();
            let scaled = v.value * dt;
            assert!((scaled - c(1.0, 0.0)).norm() < 1e-3, "t near 1: {scaled}");
        }
        assert!(matches!(
            hurwitz_continued(c(1.0, 0.0), c(1.0, 0.0), 1e-8),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn conjugate_symmetry() {
        let t = c(1.7, 0.6);
        let s = c(2.0, 1.0);
        let a = hurwitz_continued(t, s, 1e-11).unwrap().value;
        let b = hurwitz_continued(t.conj(), s.conj(), 1e-11).unwrap().value;
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn dt_at0_matches_finite_difference() {
        let s = c(2.3, 0.0);
        let h = 1e-4;
        let plus = hurwitz_continued(c(h, 0.0), s, 1e-12).unwrap().value;
        let minus = hurwitz_continued(c(-h, 0.0), s, 1e-12).unwrap().value;
        let fd = (plus - minus) / (2.0 * h);
        let d = hurwitz_dt_at0(s, 1e-12).unwrap().value;
        assert!((d - fd).norm() < 1e-6, "fd dev {:e}", (d - fd).norm());
    }

    #[test]
    fn zeta_prime_0_value() {
        // -log(2 pi)/2
        let v = zeta_prime_0();
        assert!((v.value.re + 0.9189385332046727).abs() < 1e-9);
        assert!(v.value.im.abs() < 1e-12);
        // exp(-zeta'(0))^2 = 2 pi
        let e = (-v.value.re).exp();
        assert!((e * e - 2.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn dt_functional_equation() {
        // dt0(s+1) - dt0(s) = log s
        for &s in &[c(1.4, 0.0), c(0.7, 1.2), c(3.0, -2.0)] {
            let a = hurwitz_dt_at0(s + 1.0, 1e-12).unwrap().value;
            let b = hurwitz_dt_at0(s, 1e-12).unwrap().value;
            let ls = principal_log(s).unwrap();
            assert!((a - b - ls).norm() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn lerch_log_gamma_values() {
        let zero = log_gamma_lerch(c(1.0, 0.0), 1e-12).unwrap();
        assert!(zero.value.norm() < 1e-10);
        let half = log_gamma_lerch(c(0.5, 0.0), 1e-12).unwrap();
        assert!((half.value.exp() - c(PI.sqrt(), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn lerch_functional_equation() {
        // avoids the branch-wrap region: test points keep both sides on
        // principal determinations
        for &s in &[c(1.7, 0.0), c(2.0, 1.0), c(0.5, 2.0)] {
            let a = log_gamma_lerch(s + 1.0, 1e-12).unwrap().value;
            let b = log_gamma_lerch(s, 1e-12).unwrap().value;
            let ls = principal_log(s).unwrap();
            assert!((a - b - ls).norm() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn dt_growth_is_s_log_s() {
        // |dt0(s)| <= C |s| log |s| on 1 <= |s| <= 50, Re s > 0
        let samples = [c(2.0, 0.0), c(5.0, 5.0), c(0.5, 20.0), c(30.0, -30.0), c(50.0, 1.0)];
        for &s in &samples {
            let v = hurwitz_dt_at0(s, 1e-10).unwrap().value.norm();
            let bound = 3.0 * s.norm() * s.norm().ln().max(1.0);
            assert!(v <= bound, "s={s}: {v} > {bound}");
        }
    }
}
