//! Limit-product evaluation routes: the Euler-Gauss product with Richardson
//! acceleration, Birkhoff's asymptotic-quotient definition, the two
//! asymptotic-limit diagnostics, and the Euler-Mascheroni constant.
//!
//! Every factorial-like quantity here is accumulated in log space so that
//! nothing overflows for |s| <= 50, n <= 2^20.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::method::Method;
use crate::numerics::{c, principal_log, Complex, EvalResult};
use crate::routes;

/// H_N - log N - 1/(2N), compensated summation. The trapezoidal
/// correction tightens the classical bracket to |result - gamma| <= 1/(8 N^2).
pub fn euler_mascheroni(n: u64) -> f64 {
    assert!(n >= 10, "need N >= 10");
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for k in 1..=n {
        let term = 1.0 / k as f64;
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum - (n as f64).ln() - 1.0 / (2.0 * n as f64)
}

/// gamma at N = 10^6, shared by the Weierstrass route. Bracket error
/// <= 1/(8e12), far below every tolerance used in this crate.
pub fn euler_mascheroni_cached() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| euler_mascheroni(1_000_000))
}

/// Error half-width of [`euler_mascheroni_cached`].
pub const EULER_MASCHERONI_CACHED_ERR: f64 = 1.0 / (8.0 * 1e12);

fn exact_nonpositive_integer(s: Complex) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

// log f_n(s) = -log s + s log n - sum_{k=1}^{n} log(1 + s/k). Pairing n!
// against the denominator term by term keeps the running sum O(|s| log n)
// instead of O(n log n), which would cancel away ~9 digits at n = 2^20.
fn log_partial(s: Complex, n: u64) -> Result<Complex> {
    if exact_nonpositive_integer(s) && -s.re <= n as f64 {
        return Err(Error::Pole(s));
    }
    let mut sum = c(0.0, 0.0);
    for k in 1..=n {
        sum += principal_log(c(1.0, 0.0) + s / k as f64)?;
    }
    Ok(s * (n as f64).ln() - principal_log(s)? - sum)
}

/// The exact partial product f_n(s) = n! n^s / (s (s+1) ... (s+n)),
/// evaluated as a running sum of logs.
pub fn gauss_product_partial(s: Complex, n: u64) -> Result<Complex> {
    assert!(n >= 1);
    Ok(log_partial(s, n)?.exp())
}

/// Gamma as the Richardson-accelerated limit of the partial products over
/// n, 2n, 4n, ... Stops once successive extrapolants agree to `tol`
/// relative to the value; caps at n = 2^20.
pub fn gamma_gauss(s: Complex, tol: f64) -> Result<EvalResult> {
    assert!(tol > 0.0);
    if exact_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    const N0: u64 = 128;
    const CAP: u64 = 1 << 20;

    // Neville triangle in the variable 1/n; step ratio 2 cancels one
    // power of 1/n per column.
    let mut prev_row: Vec<Complex> = Vec::new();
    let mut work = 0u64;
    let mut n = N0;
    let mut best = c(0.0, 0.0);
    let mut best_err = f64::INFINITY;

    while n <= CAP {
        let f = gauss_product_partial(s, n)?;
        work += n + 1;
        let mut row = vec![f];
        for k in 1..=prev_row.len() {
            let cur = row[k - 1];
            let below = prev_row[k - 1];
            let weight = (1u64 << k) as f64 - 1.0;
            row.push(cur + (cur - below) / weight);
        }
        if !prev_row.is_empty() {
            let v = *row.last().unwrap();
            let err = (v - *prev_row.last().unwrap()).norm();
            best = v;
            best_err = err;
            if err <= tol * v.norm().max(f64::MIN_POSITIVE) {
                return Ok(EvalResult::new(v, err, Method::Gauss, work));
            }
        }
        prev_row = row;
        n *= 2;
    }
    Err(Error::Convergence {
        value: best,
        err_estimate: best_err,
        work,
    })
}

/// log phi(w) for Birkhoff's comparison function
/// phi(w) = sqrt(2 pi) w^{w - 1/2} e^{-w}.
fn log_phi(w: Complex) -> Result<Complex> {
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(c(half_log_2pi, 0.0) + (w - 0.5) * principal_log(w)? - w)
}

fn birkhoff_log(s: Complex, n: u64) -> Result<Complex> {
    let mut denom = c(0.0, 0.0);
    for k in 0..=n {
        let z = s + k as f64;
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Pole(s));
        }
        denom += principal_log(z)?;
    }
    Ok(log_phi(s + (n as f64 + 1.0))? - denom)
}

/// Birkhoff's quotient phi(s+n+1) / (s (s+1) ... (s+n)) at the given n,
/// a diagnostic route with O(1/n) error. The estimate comes from the
/// n -> 2n difference.
pub fn gamma_birkhoff(s: Complex, n: u64) -> Result<EvalResult> {
    assert!(n >= 1);
    if exact_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    let v = birkhoff_log(s, n)?.exp();
    let v2 = birkhoff_log(s, 2 * n)?.exp();
    Ok(EvalResult::new(v, (v2 - v).norm(), Method::Birkhoff, 3 * n + 3))
}

/// Gamma(s+n) / ((n-1)! n^s), entirely in log space. Tends to 1 as
/// n grows; the chosen route supplies log Gamma at the shifted argument.
pub fn weierstrass_asymptotic_ratio(
    s: Complex,
    n: u64,
    gamma_route: Method,
    tol: f64,
) -> Result<Complex> {
    assert!(n >= 2);
    let log_num = routes::log_gamma(gamma_route, s + n as f64, tol)?;
    let log_fact = routes::log_factorial(n - 1);
    Ok((log_num - log_fact - s * (n as f64).ln()).exp())
}

/// log Gamma(s+n) - log Gamma(n) - s log(n+1); tends to 0 as n grows.
pub fn laugwitz_rodewald_residual(
    s: Complex,
    n: u64,
    gamma_route: Method,
    tol: f64,
) -> Result<Complex> {
    assert!(n >= 2);
    let a = routes::log_gamma(gamma_route, s + n as f64, tol)?;
    let b = routes::log_gamma(gamma_route, c(n as f64, 0.0), tol)?;
    Ok(a - b - s * ((n + 1) as f64).ln())
}
