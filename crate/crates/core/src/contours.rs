//! Contour-integral routes: both Hankel integrals for 1/Gamma and Gamma,
//! and the inverse-Laplace line integral for 1/Gamma.
//!
//! The Hankel path runs from Re z = -R below the negative real axis
//! (Im z = -eps), turns around the origin on an arc of radius eps, and
//! returns above the axis, traversed counterclockwise around R_-.

use crate::error::{Error, Result};
use crate::method::Method;
use crate::numerics::{c, gauss_legendre_nodes, principal_log, Complex, EvalResult, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Distance of the horizontal legs from R_- and radius of the turning arc.
    pub eps: f64,
    /// Truncation depth: legs run from Re z = -r to 0.
    pub r: f64,
    pub nodes_per_leg: usize,
    pub nodes_arc: usize,
}

impl ContourSpec {
    pub fn new(eps: f64, r: f64, nodes_per_leg: usize, nodes_arc: usize) -> Self {
        assert!(eps > 0.0 && eps <= 1.0 && r >= 1.0, "need 0 < eps <= 1 <= R");
        assert!(nodes_per_leg >= 16 && nodes_arc >= 16, "node counts >= 16");
        ContourSpec {
            eps,
            r,
            nodes_per_leg,
            nodes_arc,
        }
    }

    /// Default contour for the z^{-s} integrand: eps = 1 and R sized so
    /// that the leg tail e^{-R} R^{max(0, -Re s)} stays below 1e-14.
    pub fn for_recip_gamma(s: Complex) -> Self {
        Self::sized((-s.re).max(0.0), s.im)
    }

    /// Default contour for the z^{s-1} integrand of the second Hankel
    /// integral.
    pub fn for_gamma(s: Complex) -> Self {
        Self::sized((s.re - 1.0).max(0.0), s.im)
    }

    fn sized(growth: f64, im: f64) -> Self {
        // R = 40 + growth * log R, iterated; at growth = 0 this is the
        // plain R = 40 truncation
        let mut r = 40.0 + growth * 40.0f64.ln();
        for _ in 0..3 {
            r = 40.0 + growth * r.ln();
        }
        // legs resolve the e^{-i Im s log|z|} oscillation
        let nodes_per_leg = 256usize.max((48.0 * (1.0 + im.abs())).ceil() as usize);
        let nodes_arc = 64usize.max((16.0 * (1.0 + im.abs())).ceil() as usize);
        ContourSpec::new(1.0, r, nodes_per_leg, nodes_arc)
    }

    fn doubled(&self) -> Self {
        ContourSpec {
            eps: self.eps,
            r: self.r,
            nodes_per_leg: self.nodes_per_leg * 2,
            nodes_arc: self.nodes_arc * 2,
        }
    }
}

/// Quadrature nodes along the Hankel path with weights carrying dz.
/// Traversal: lower leg (-R -> 0 at Im = -eps), arc of radius eps from
/// angle -pi/2 to +pi/2, upper leg (0 -> -R at Im = +eps).
pub fn hankel_nodes(spec: &ContourSpec) -> Vec<(Complex, Complex)> {
    let mut nodes = Vec::with_capacity(2 * spec.nodes_per_leg + spec.nodes_arc);
    let leg = gauss_legendre_nodes(spec.nodes_per_leg);
    let half = spec.r / 2.0;
    let mid = -half;

    // lower leg: z = t - i eps, t from -R to 0
    for (x, w) in leg.0.iter().zip(&leg.1) {
        nodes.push((c(mid + half * x, -spec.eps), c(half * w, 0.0)));
    }
    // arc: z = eps e^{i theta}, theta from -pi/2 to pi/2, dz = i eps e^{i theta} d theta
    let arc = gauss_legendre_nodes(spec.nodes_arc);
    let quarter = std::f64::consts::FRAC_PI_2;
    for (x, w) in arc.0.iter().zip(&arc.1) {
        let theta = quarter * x;
        let z = c(spec.eps * theta.cos(), spec.eps * theta.sin());
        nodes.push((z, c(0.0, 1.0) * z * (quarter * w)));
    }
    // upper leg: z = t + i eps, t from 0 to -R (reversed direction)
    for (x, w) in leg.0.iter().zip(&leg.1) {
        nodes.push((c(mid - half * x, spec.eps), c(-half * w, 0.0)));
    }
    nodes
}

/// Sums f over the contour nodes, also returning the total absolute mass
/// (the roundoff scale of the sum).
fn contour_sum<F>(spec: &ContourSpec, f: F) -> (Complex, f64, u64)
where
    F: Fn(Complex) -> Complex,
{
    let mut acc = c(0.0, 0.0);
    let mut mass = 0.0;
    let nodes = hankel_nodes(spec);
    let work = nodes.len() as u64;
    for (z, w) in nodes {
        let term = f(z) * w;
        acc += term;
        mass += term.norm();
    }
    (acc, mass, work)
}

/// Leg truncation bound from |z^a e^z| <= |z|^a e^{Re z} with
/// a = max(0, power growth along the legs).
fn leg_tail_bound(spec: &ContourSpec, growth: f64, im_factor: f64) -> f64 {
    let r = spec.r;
    let geometric = 1.0 / (1.0 - (growth / r).min(0.9));
    2.0 * im_factor * r.powf(growth) * (-r).exp() * geometric / (2.0 * std::f64::consts::PI)
}

fn refine<F>(spec: &ContourSpec, trunc: f64, f: F) -> Result<(Complex, f64, u64)>
where
    F: Fn(Complex) -> Complex,
{
    let mut cur = *spec;
    let mut work = 0u64;
    let mut prev: Option<Complex> = None;
    let mut best = c(0.0, 0.0);
    let mut best_err = f64::INFINITY;
    for _ in 0..=3 {
        let (v, mass, w) = contour_sum(&cur, &f);
        work += w;
        if let Some(p) = prev {
            let err = (v - p).norm();
            // relative agreement, floored by the roundoff of the node sum
            if err <= (1e-12 * v.norm()).max(1e-14 * mass) {
                return Ok((v, err + trunc, work));
            }
            best = v;
            best_err = err;
        }
        prev = Some(v);
        cur = cur.doubled();
    }
    Err(Error::Convergence {
        value: best,
        err_estimate: best_err + trunc,
        work,
    })
}

/// 1/Gamma(s) = (1/2 pi i) int_eta z^{-s} e^z dz; entire in s, so no
/// precondition. Error estimate from node doubling plus the leg
/// truncation bound.
pub fn recip_gamma_hankel(s: Complex, spec: &ContourSpec) -> Result<EvalResult> {
    let two_pi_i = c(0.0, 2.0 * std::f64::consts::PI);
    let f = |z: Complex| {
        // z - s log z in one exponential keeps intermediates bounded
        let lz = principal_log(z).expect("contour avoids the origin");
        (z - s * lz).exp()
    };
    let trunc = leg_tail_bound(spec, (-s.re).max(0.0), (std::f64::consts::PI * s.im.abs()).exp());
    let (v, err, work) = refine(spec, trunc, f)?;
    Ok(EvalResult::new(v / two_pi_i, err, Method::RecipHankel, work))
}

/// Gamma(s) = (1/(2 i sin pi s)) int_eta z^{s-1} e^z dz. Near-integer s
/// (|sin pi s| < 1e-8) is refused; the reciprocal route or the recurrence
/// covers those points exactly where this formula degenerates.
pub fn gamma_hankel(s: Complex, spec: &ContourSpec) -> Result<EvalResult> {
    let sin_pi_s = (s * std::f64::consts::PI).sin();
    if sin_pi_s.norm() < 1e-8 {
        return Err(Error::NearInteger(s));
    }
    let f = |z: Complex| {
        let lz = principal_log(z).expect("contour avoids the origin");
        (z + (s - 1.0) * lz).exp()
    };
    let trunc = leg_tail_bound(
        spec,
        (s.re - 1.0).max(0.0),
        (std::f64::consts::PI * s.im.abs()).exp(),
    ) / sin_pi_s.norm();
    let (v, err, work) = refine(spec, trunc, f)?;
    let denom = c(0.0, 2.0) * sin_pi_s;
    Ok(EvalResult::new(
        v / denom,
        err / denom.norm(),
        Method::Hankel,
        work,
    ))
}

/// 1/Gamma(s) = (1/2 pi) int_{-Y}^{Y} e^{x+iy} (x+iy)^{-s} dy, for
/// Re s > 1 (absolute convergence) and x > 0. The neglected tail
/// e^x Y^{1-Re s} / ((Re s - 1) pi), scaled by the e^{pi |Im s|/2} growth
/// of |(x+iy)^{-s}|, lands in the error estimate; if it already exceeds
/// the requested tolerance the follow-up is a convergence error carrying
/// the truncated value.
pub fn recip_gamma_laplace(
    s: Complex,
    x: f64,
    y_max: f64,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Laplace route needs Re s > 1 (got {}); reduce via the recurrence first",
            s.re
        )));
    }
    assert!(x > 0.0 && y_max > 1.0);

    let tail = x.exp() * y_max.powf(1.0 - s.re) / ((s.re - 1.0) * std::f64::consts::PI)
        * (std::f64::consts::FRAC_PI_2 * s.im.abs()).exp();

    let f = |y: f64| {
        let z = c(x, y);
        let lz = principal_log(z).expect("x > 0 keeps z off the cut");
        (z - s * lz).exp()
    };

    // 16-node panels on a half-oscillation of e^{iy} are already exact to
    // machine precision; the coarse pass at double width supplies the
    // error estimate. Real s halves the work through the conjugate
    // symmetry of the integrand.
    let rule = gauss_legendre_nodes(16);
    let real_s = s.im == 0.0;
    let sweep = |width: f64, panel_cap: u64| -> (Complex, u64) {
        let lo = if real_s { 0.0 } else { -y_max };
        let panels = (((y_max - lo) / width).ceil() as u64).min(panel_cap);
        let h = (y_max - lo) / panels as f64;
        let mut acc = c(0.0, 0.0);
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            let mut panel = c(0.0, 0.0);
            for (u, w) in rule.0.iter().zip(&rule.1) {
                panel += f(mid + half * u) * *w;
            }
            acc += panel * half;
        }
        if real_s {
            // int_{-Y}^{Y} = 2 Re int_0^{Y} when h(-y) = conj h(y)
            acc = c(2.0 * acc.re, 0.0);
        }
        (acc / (2.0 * std::f64::consts::PI), panels * 16)
    };

    if tail > spec.abs_tol {
        // a full sweep cannot help; report the bound with a cheap value
        let (coarse, work) = sweep(2.0 * std::f64::consts::PI, 100_000);
        return Err(Error::Convergence {
            value: coarse,
            err_estimate: tail,
            work,
        });
    }

    let (coarse, w1) = sweep(std::f64::consts::PI, u64::MAX);
    let (fine, w2) = sweep(std::f64::consts::FRAC_PI_2, u64::MAX);
    let quad_err = (fine - coarse).norm();
    Ok(EvalResult::new(
        fine,
        quad_err + tail,
        Method::Laplace,
        w1 + w2,
    ))
}

/// Truncation depth Y pushing the Laplace tail bound below tol/2 (capped
/// at 2e7; past the cap the evaluation reports a convergence error).
pub fn laplace_truncation(s: Complex, x: f64, tol: f64) -> f64 {
    let growth = x.exp() * (std::f64::consts::FRAC_PI_2 * s.im.abs()).exp();
    let y = (2.0 * growth / (std::f64::consts::PI * (s.re - 1.0) * tol)).powf(1.0 / (s.re - 1.0));
    y.clamp(64.0, 2e7)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_off_contour_has_zero_total_dz() {
        let spec = ContourSpec::new(0.5, 30.0, 64, 32);
        let total: Complex = hankel_nodes(&spec).iter().map(|(_, w)| w).sum();
        // open path contributes 2 i eps; the closing segment at Re = -R
        // contributes exactly -2 i eps
        let closing = c(0.0, -2.0 * spec.eps);
        assert!((total + closing).norm() < 1e-12);
    }

    #[test]
    fn entire_integrand_integrates_to_leg_cancellation() {
        for spec in [
            ContourSpec::new(1.0, 40.0, 256, 64),
            ContourSpec::new(0.5, 30.0, 256, 64),
        ] {
            let total: Complex = hankel_nodes(&spec)
                .iter()
                .map(|(z, w)| z.exp() * w)
                .sum();
            assert!(total.norm() < 1e-12, "got {}", total.norm());
        }
    }

    #[test]
    fn residue_of_inverse_z() {
        // (1/2 pi i) int z^{-1} e^z dz = 1
        let spec = ContourSpec::new(1.0, 40.0, 256, 64);
        let total: Complex = hankel_nodes(&spec)
            .iter()
            .map(|(z, w)| z.exp() / z * w)
            .sum();
        let v = total / c(0.0, 2.0 * PI);
        assert!((v - c(1.0, 0.0)).norm() < 1e-10, "got {v}");
    }

    #[test]
    fn recip_gamma_at_integers() {
        // zeros at the non-positive integers, 1/(n-1)! at positive ones
        for n in 0..=3 {
            let s = c(-(n as f64), 0.0);
            let v = recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s)).unwrap();
            assert!(v.value.norm() < 1e-10, "s={s}: {}", v.value.norm());
        }
        let factorials = [1.0, 1.0, 2.0, 6.0, 24.0];
        for n in 1..=5u32 {
            let s = c(n as f64, 0.0);
            let v = recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s)).unwrap();
            let expect = 1.0 / factorials[(n - 1) as usize];
            assert!(
                (v.value - c(expect, 0.0)).norm() < 1e-12 * expect.max(1.0),
                "n={n}"
            );
        }
    }

    #[test]
    fn recip_gamma_at_half() {
        let s = c(0.5, 0.0);
        let v = recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s)).unwrap();
        let expect = 1.0 / PI.sqrt();
        assert!((v.value.re - expect).abs() < 1e-12);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn gamma_hankel_values() {
        let s = c(0.5, 0.0);
        let v = gamma_hankel(s, &ContourSpec::for_gamma(s)).unwrap();
        assert!((v.value.re - PI.sqrt()).abs() < 1e-11);

        let s = c(2.5, 0.0);
        let v = gamma_hankel(s, &ContourSpec::for_gamma(s)).unwrap();
        let expect = 0.75 * PI.sqrt(); // 1.5 * 0.5 * Gamma(1/2)
        assert!((v.value.re - expect).abs() < 1e-11);
    }

    #[test]
    fn gamma_hankel_refuses_near_integers() {
        assert!(matches!(
            gamma_hankel(c(3.0, 0.0), &ContourSpec::for_gamma(c(3.0, 0.0))),
            Err(Error::NearInteger(_))
        ));
        assert!(matches!(
            gamma_hankel(c(-1.0 + 1e-10, 0.0), &ContourSpec::for_gamma(c(-1.0, 0.0))),
            Err(Error::NearInteger(_))
        ));
    }

    #[test]
    fn hankel_routes_are_mutual_inverses() {
        let s = c(0.3, 2.0);
        let g = gamma_hankel(s, &ContourSpec::for_gamma(s)).unwrap().value;
        let r = recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s))
            .unwrap()
            .value;
        assert!((g * r - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn reflection_through_hankel() {
        for &s in &[c(0.3, 0.0), c(0.5, 1.0), c(-1.3, 0.7)] {
            let a = gamma_hankel(s, &ContourSpec::for_gamma(s)).unwrap().value;
            let b = gamma_hankel(c(1.0, 0.0) - s, &ContourSpec::for_gamma(c(1.0, 0.0) - s))
                .unwrap()
                .value;
            let product = a * b * (s * PI).sin() / PI;
            assert!((product - c(1.0, 0.0)).norm() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn contour_invariance_sample() {
        let s = c(0.3, -2.0);
        let mut values = Vec::new();
        for eps in [0.5, 1.0] {
            for r in [30.0, 40.0] {
                let spec = ContourSpec::new(eps, r, 256, 64);
                values.push(recip_gamma_hankel(s, &spec).unwrap().value);
            }
        }
        for v in &values[1..] {
            assert!((v - values[0]).norm() < 1e-10 * values[0].norm());
        }
    }

    #[test]
    fn laplace_route_basics() {
        let spec = QuadratureSpec::gauss(1e-6);
        // 1/Gamma(2) = 1
        let s = c(2.0, 0.0);
        let v = recip_gamma_laplace(s, 1.0, laplace_truncation(s, 1.0, 1e-6), &spec).unwrap();
        assert!((v.value - c(1.0, 0.0)).norm() < 1e-6, "got {}", v.value);

        // domain guard
        assert!(matches!(
            recip_gamma_laplace(c(0.5, 0.0), 1.0, 100.0, &spec),
            Err(Error::Domain(_))
        ));

        // insufficient truncation surfaces as a convergence error
        assert!(matches!(
            recip_gamma_laplace(c(1.2, 0.0), 1.0, 50.0, &QuadratureSpec::gauss(1e-10)),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn laplace_x_independence() {
        let spec = QuadratureSpec::gauss(1e-9);
        let s = c(2.5, 0.0);
        let vals: Vec<EvalResult> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&x| {
                let y = laplace_truncation(s, x, 1e-9);
                recip_gamma_laplace(s, x, y, &spec).unwrap()
            })
            .collect();
        for pair in vals.windows(2) {
            let budget = (pair[0].err_estimate + pair[1].err_estimate).max(1e-9);
            assert!((pair[0].value - pair[1].value).norm() <= budget);
        }
    }

    #[test]
    fn laplace_matches_hankel() {
        let s = c(3.5, 0.0);
        let y = laplace_truncation(s, 1.0, 1e-8);
        let lap = recip_gamma_laplace(s, 1.0, y, &QuadratureSpec::gauss(1e-8)).unwrap();
        let han = recip_gamma_hankel(s, &ContourSpec::for_recip_gamma(s)).unwrap();
        assert!((lap.value - han.value).norm() < 1e-6);
    }
}
