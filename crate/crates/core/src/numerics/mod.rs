//! Shared numeric conventions: principal branches, argument reduction,
//! polynomial algebra and the quadrature kernels used by every integral
//! representation.
//!
//! All arithmetic is plain binary64. The single branch convention used
//! throughout the crate is arg z in (-pi, pi], with the negative real axis
//! mapped to +i pi (the limit from above).

mod polynomial;
mod quadrature;

pub use polynomial::{poly_shift, Polynomial};
pub use quadrature::{gauss_legendre_nodes, integrate, QuadratureKind, QuadratureSpec};

use crate::error::{Error, Result};
use crate::method::Method;

pub type Complex = num_complex::Complex64;

/// Shorthand for building a complex value.
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Outcome of a single evaluation: value, heuristic absolute error
/// estimate, the route that produced it and the work spent (nodes or
/// terms consumed). The estimate is a refinement difference or a tail
/// bound, not a rigorous bound; the verification suites compare routes
/// against each other rather than trusting it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    pub err_estimate: f64,
    pub method: Method,
    pub work: u64,
}

impl EvalResult {
    pub fn new(value: Complex, err_estimate: f64, method: Method, work: u64) -> Self {
        debug_assert!(err_estimate >= 0.0);
        EvalResult {
            value,
            err_estimate,
            method,
            work,
        }
    }
}

/// Principal branch of the complex logarithm: log|z| + i arg z with
/// arg z in (-pi, pi]. Negative real z (including im = -0.0) maps to
/// log|z| + i pi.
pub fn principal_log(z: Complex) -> Result<Complex> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log of zero".into()));
    }
    // atan2(-0.0, x<0) would give -pi; force the +i pi side of the cut.
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let arg = im.atan2(z.re);
    Ok(c(z.re.hypot(z.im).ln(), arg))
}

/// Principal power z^s = exp(s log z).
///
/// z = 0 is allowed only for Re s > 0 (where the limit is 0); s = 0 gives 1.
pub fn principal_pow(z: Complex, s: Complex) -> Result<Complex> {
    if s.re == 0.0 && s.im == 0.0 {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Domain("0^0".into()));
        }
        return Ok(c(1.0, 0.0));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return if s.re > 0.0 {
            Ok(c(0.0, 0.0))
        } else {
            Err(Error::Domain(format!("0^s with Re s = {} <= 0", s.re)))
        };
    }
    Ok((s * principal_log(z)?).exp())
}

/// Shifts s to the right of `threshold` by the minimal number of unit
/// steps: returns (s + n, n) with Re(s + n) >= threshold, n >= 0.
///
/// The caller owns the recurrence bookkeeping
/// Gamma(s) = Gamma(s + n) / (s (s+1) ... (s+n-1)), including pole
/// handling when the product vanishes.
pub fn reduce_to_right(s: Complex, threshold: f64) -> (Complex, u32) {
    let n = (threshold - s.re).ceil().max(0.0) as u32;
    (c(s.re + n as f64, s.im), n)
}

/// The accumulated recurrence product s (s+1) ... (s+n-1).
pub fn rising_product(s: Complex, n: u32) -> Complex {
    let mut p = c(1.0, 0.0);
    for k in 0..n {
        p *= s + k as f64;
    }
    p
}

/// True if s is within `radius` of a non-positive integer (the poles of
/// Gamma).
pub fn near_pole(s: Complex, radius: f64) -> bool {
    if s.re > radius {
        return false;
    }
    let nearest = s.re.round().min(0.0);
    (s - nearest).norm() < radius
}
