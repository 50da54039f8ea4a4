//! Weierstrass-product machinery: elementary factors, canonical products
//! over divisors, the Gamma product g(s) = s^{-1} prod (1+s/n)^{-1} e^{s/n},
//! the polynomial difference-equation solver behind the existence proof,
//! and empirical order/genus estimators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::method::Method;
use crate::numerics::{c, principal_log, Complex, EvalResult, Polynomial};
use crate::products::{euler_mascheroni_cached, EULER_MASCHERONI_CACHED_ERR};

/// Zeros (positive multiplicity) and poles (negative multiplicity), with
/// an optional generator for an infinite algebraic tail |rho_n| ~ c n^{1/alpha}.
#[derive(Clone)]
pub struct Divisor {
    entries: Vec<(Complex, i32)>,
    tail: Option<DivisorTail>,
}

#[derive(Clone)]
pub struct DivisorTail {
    /// location of the n-th tail point, n = 1, 2, ...
    pub locations: Arc<dyn Fn(u64) -> Complex + Send + Sync>,
    pub multiplicity: i32,
    /// convergence exponent of the tail: sum |rho_n|^{-beta} converges
    /// exactly for beta > alpha
    pub alpha: f64,
}

impl Divisor {
    pub fn finite(entries: Vec<(Complex, i32)>) -> Self {
        Self::validate(&entries);
        Divisor { entries, tail: None }
    }

    pub fn with_tail(entries: Vec<(Complex, i32)>, tail: DivisorTail) -> Self {
        Self::validate(&entries);
        assert!(tail.alpha > 0.0, "convergence exponent must be positive");
        assert!(tail.multiplicity != 0, "tail multiplicity must be nonzero");
        Divisor {
            entries,
            tail: Some(tail),
        }
    }

    /// The Gamma divisor {-1, -2, -3, ...}, convergence exponent 1.
    pub fn negative_integers() -> Self {
        Divisor::with_tail(
            Vec::new(),
            DivisorTail {
                locations: Arc::new(|n| c(-(n as f64), 0.0)),
                multiplicity: 1,
                alpha: 1.0,
            },
        )
    }

    pub fn entries(&self) -> &[(Complex, i32)] {
        &self.entries
    }

    fn validate(entries: &[(Complex, i32)]) {
        for (i, (loc, mult)) in entries.iter().enumerate() {
            assert!(*mult != 0, "multiplicities must be nonzero");
            for (loc2, _) in &entries[..i] {
                assert!(loc != loc2, "divisor locations must be pairwise distinct");
            }
        }
    }
}

/// Truncated canonical product: value, terms consumed and the bound used
/// to stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuedProductResult {
    pub value: Complex,
    pub terms_used: u64,
    pub tail_estimate: f64,
}

/// Weierstrass elementary factor
/// E_0(w) = 1 - w, E_p(w) = (1 - w) exp(w + w^2/2 + ... + w^p/p).
pub fn elementary_factor(p: u32, w: Complex) -> Complex {
    let head = c(1.0, 0.0) - w;
    if p == 0 {
        return head;
    }
    let mut exponent = c(0.0, 0.0);
    let mut wk = c(1.0, 0.0);
    for j in 1..=p {
        wk *= w;
        exponent += wk / j as f64;
    }
    head * exponent.exp()
}

/// log E_p(w) on the principal branch; `None` at the zero w = 1.
fn log_elementary_factor(p: u32, w: Complex) -> Option<Complex> {
    let head = c(1.0, 0.0) - w;
    if head.re == 0.0 && head.im == 0.0 {
        return None;
    }
    let mut acc = principal_log(head).ok()?;
    let mut wk = c(1.0, 0.0);
    for j in 1..=p {
        wk *= w;
        acc += wk / j as f64;
    }
    Some(acc)
}

/// Truncated canonical product prod E_p(s/rho)^{n_rho} over the divisor.
///
/// Tail terms are appended until the remainder bound
/// |log E_p(w)| <= 2 |w|^{p+1}/(p+1) summed by integral comparison drops
/// below `tol`. A tail with convergence exponent >= p+1 diverges.
pub fn canonical_product(
    d: &Divisor,
    p: u32,
    s: Complex,
    tol: f64,
) -> Result<ContinuedProductResult> {
    assert!(tol > 0.0);
    if let Some(tail) = &d.tail {
        let p_plus_one = (p + 1) as f64;
        if tail.alpha >= p_plus_one {
            return Err(Error::DivergentDivisor {
                exponent: tail.alpha,
                p_plus_one,
            });
        }
    }

    let mut log_acc = c(0.0, 0.0);
    let mut terms = 0u64;

    for &(rho, mult) in &d.entries {
        terms += 1;
        let w = s / rho;
        match log_elementary_factor(p, w) {
            Some(l) => log_acc += l * mult as f64,
            // s sits exactly on this divisor point
            None if mult > 0 => {
                return Ok(ContinuedProductResult {
                    value: c(0.0, 0.0),
                    terms_used: terms,
                    tail_estimate: 0.0,
                })
            }
            None => return Err(Error::Pole(s)),
        }
    }

    let mut tail_estimate = 0.0;
    if let Some(tail) = &d.tail {
        let p1 = (p + 1) as f64;
        let p2 = (p + 2) as f64;
        let mult = tail.multiplicity as f64;
        // plain truncation converges like 1/N; the analytic leading term
        // -mult w^{p+1}/(p+1) sum_{m>n} (n/m)^{(p+1)/alpha} of the log
        // tail (ray-model rho_m = rho_n (m/n)^{1/alpha}) brings the
        // remainder down to the next power
        let q = p1 / tail.alpha;
        const CAP: u64 = 10_000_000;
        let mut n = 1u64;
        loop {
            let rho = (tail.locations)(n);
            let w = s / rho;
            match log_elementary_factor(p, w) {
                Some(l) => log_acc += l * mult,
                None if tail.multiplicity > 0 => {
                    return Ok(ContinuedProductResult {
                        value: c(0.0, 0.0),
                        terms_used: terms + n,
                        tail_estimate: 0.0,
                    })
                }
                None => return Err(Error::Pole(s)),
            }
            let wn = w.norm();
            let next_order = mult.abs() * 2.0 / p2 * wn.powf(p2) * n as f64 * tail.alpha
                / (p2 - tail.alpha);
            let model_slack = mult.abs() / p1 * wn.powf(p1) * q;
            tail_estimate = next_order + model_slack / n as f64;
            if wn <= 0.5 && tail_estimate < tol {
                let mut w_pow = w;
                for _ in 0..p {
                    w_pow *= w;
                }
                log_acc -= w_pow * (mult / p1) * (n as f64 / (q - 1.0) - 0.5);
                terms += n;
                break;
            }
            if n >= CAP {
                return Err(Error::Convergence {
                    value: log_acc.exp(),
                    err_estimate: tail_estimate,
                    work: terms + n,
                });
            }
            n += 1;
        }
    }

    Ok(ContinuedProductResult {
        value: log_acc.exp(),
        terms_used: terms,
        tail_estimate,
    })
}

/// w - log(1 + w) with a series branch to dodge the cancellation for
/// small |w|.
fn log1p_diff(w: Complex) -> Complex {
    if w.norm() < 0.25 {
        // w - log(1+w) = w^2 sum_{j>=0} (-w)^j / (j+2)
        let mut pow = c(1.0, 0.0);
        let mut acc = c(0.0, 0.0);
        for j in 0..60u32 {
            let term = pow / (j + 2) as f64;
            acc += term;
            if term.norm() < 1e-18 {
                break;
            }
            pow *= -w;
        }
        acc * w * w
    } else {
        // 1 + w = 0 only at exact poles, which callers reject upfront
        w - principal_log(c(1.0, 0.0) + w).expect("1 + w nonzero off the poles")
    }
}

/// The meromorphic solution g(s) = s^{-1} prod_{n>=1} (1+s/n)^{-1} e^{s/n}
/// of the existence proof, truncated at N with the analytic leading tail
/// correction s^2/(2N). g(1) = e^gamma.
pub fn gamma_weierstrass_g(s: Complex, tol: f64) -> Result<EvalResult> {
    assert!(tol > 0.0);
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::Pole(s));
    }
    let m = s.norm();
    // residual after the s^2/(2N) correction is ~ (|s|^2/4 + |s|^3/6)/N^2;
    // factor 3 covers the neglected orders
    let budget = 3.0 * (m * m / 4.0 + m * m * m / 6.0);
    let n_terms = ((budget / (0.5 * tol)).sqrt().ceil() as u64).clamp(1_000, 50_000_000);

    let mut acc = c(0.0, 0.0);
    for n in 1..=n_terms {
        acc += log1p_diff(s / n as f64);
    }
    acc += s * s / (2.0 * n_terms as f64);
    let log_g = acc - principal_log(s)?;
    let value = log_g.exp();
    let err = value.norm() * (budget / (n_terms as f64 * n_terms as f64));
    Ok(EvalResult::new(value, err, Method::WeierstrassG, n_terms))
}

/// Gamma(s) = e^{-gamma s} g(s); the constant comes from
/// `euler_mascheroni` and its bracket error is folded into the estimate.
///
/// The gamma bracket puts a hard floor of ~1.25e-13 (1 + |s|) on the
/// relative accuracy this route can promise; tolerances below it come
/// back as a convergence error carrying the best achievable value.
pub fn gamma_weierstrass(s: Complex, tol: f64) -> Result<EvalResult> {
    let floor = EULER_MASCHERONI_CACHED_ERR * (1.0 + s.norm());
    let g = gamma_weierstrass_g(s, tol.max(floor))?;
    let gamma_const = euler_mascheroni_cached();
    let value = (-(s * gamma_const)).exp() * g.value;
    let err = g.err_estimate * (-(s.re * gamma_const)).exp()
        + value.norm() * s.norm() * EULER_MASCHERONI_CACHED_ERR;
    if tol < floor {
        return Err(Error::Convergence {
            value,
            err_estimate: err,
            work: g.work,
        });
    }
    Ok(EvalResult::new(value, err, Method::Weierstrass, g.work))
}

/// The unique Q with Q(0) = 0 and Q(s+1) - Q(s) = P(s), via the
/// triangular system the binomial expansion produces. deg Q = deg P + 1.
pub fn solve_difference_poly(p: &Polynomial) -> Polynomial {
    let Some(d) = p.degree() else {
        return Polynomial::zero();
    };
    let mut q = vec![Complex::default(); d + 2];
    // coefficient of s^j in Q(s+1)-Q(s) is sum_{k>j} C(k,j) q_k
    for j in (0..=d).rev() {
        let mut rhs = p.coeff(j);
        for (k, qk) in q.iter().enumerate().take(d + 2).skip(j + 2) {
            rhs -= qk * binomial(k, j);
        }
        q[j + 1] = rhs / (j as f64 + 1.0);
    }
    Polynomial::new(q)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Least-squares slope of log log M(r) against log r, where M(r) is the
/// max of the sampled |f| over 64 equispaced angles on the circle |s| = r.
///
/// The sampler may decline a point (route failure, restricted domain) by
/// returning `None`. Radii whose max overflows f64 truncate the radius
/// set; radii with max <= 1 are unusable. Fewer than 3 usable radii is an
/// estimation error.
pub fn estimate_order<F>(sample_abs: F, radii: &[f64]) -> Result<f64>
where
    F: Fn(Complex) -> Option<f64>,
{
    if radii.len() < 3 {
        return Err(Error::Estimation("need at least 3 radii".into()));
    }
    assert!(
        radii.windows(2).all(|w| w[0] < w[1]),
        "radii must be increasing"
    );

    const ANGLES: usize = 64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    'radii: for &r in radii {
        let mut max = f64::NEG_INFINITY;
        for k in 0..ANGLES {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / ANGLES as f64;
            let s = c(r * theta.cos(), r * theta.sin());
            if let Some(v) = sample_abs(s) {
                if v.is_infinite() {
                    // overflow: drop this and all larger radii
                    break 'radii;
                }
                if v.is_finite() {
                    max = max.max(v);
                }
            }
        }
        if max > 1.0 {
            points.push((r.ln(), max.ln().ln()));
        }
    }
    if points.len() < 3 {
        return Err(Error::Estimation(format!(
            "only {} usable radii after truncation",
            points.len()
        )));
    }
    // fit over the largest radii when more than 8 survive
    if points.len() > 8 {
        let skip = points.len() - 8;
        points.drain(..skip);
    }

    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Genus of a divisor with convergence exponent `alpha`: the smallest
/// integer p with p + 1 > alpha. At integer alpha the exact algebraic
/// tail makes sum |rho_n|^{-alpha} a harmonic-type divergent series, so
/// the genus is alpha itself (the Gamma divisor: alpha = 1, genus 1).
pub fn divisor_genus(alpha: f64) -> u32 {
    assert!(alpha > 0.0, "convergence exponent must be positive");
    if alpha.fract() == 0.0 {
        alpha as u32
    } else {
        alpha.ceil() as u32 - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::poly_shift;

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn elementary_factor_values() {
        assert_eq!(elementary_factor(0, c(0.5, 0.0)), c(0.5, 0.0));
        for p in [0, 1, 5] {
            assert_eq!(elementary_factor(p, c(0.0, 0.0)), c(1.0, 0.0));
        }
        assert_eq!(elementary_factor(1, c(1.0, 0.0)).norm(), 0.0);
    }

    #[test]
    fn canonical_product_trivial_cases() {
        let d = Divisor::finite(vec![(c(1.0, 0.0), 1)]);
        let zero = canonical_product(&d, 0, c(1.0, 0.0), 1e-10).unwrap();
        assert_eq!(zero.value, c(0.0, 0.0));

        let gamma_div = Divisor::negative_integers();
        let one = canonical_product(&gamma_div, 1, c(0.0, 0.0), 1e-10).unwrap();
        assert!((one.value - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn canonical_product_matches_g() {
        // prod E_1(s/(-n)) = 1 / (s g(s))
        for &s in &[c(1.0, 0.0), c(0.7, 0.4), c(-0.5, 0.0), c(2.0, -1.0)] {
            let prod = canonical_product(&Divisor::negative_integers(), 1, s, 1e-10)
                .unwrap()
                .value;
            let g = gamma_weierstrass_g(s, 1e-10).unwrap().value;
            assert!((prod * s * g - c(1.0, 0.0)).norm() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn canonical_product_divergence_guard() {
        let d = Divisor::negative_integers(); // alpha = 1
        assert!(matches!(
            canonical_product(&d, 0, c(0.5, 0.0), 1e-8),
            Err(Error::DivergentDivisor { .. })
        ));
    }

    #[test]
    fn canonical_product_pole_multiplicity() {
        let d = Divisor::finite(vec![(c(2.0, 0.0), -1)]);
        assert!(matches!(
            canonical_product(&d, 0, c(2.0, 0.0), 1e-8),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn g_at_one_is_exp_gamma() {
        let g1 = gamma_weierstrass_g(c(1.0, 0.0), 1e-10).unwrap();
        // oracle: e^gamma with gamma = H_N - log N + 1/(2N) at N = 10^6
        let e_gamma = euler_mascheroni_cached().exp();
        assert!(rel(g1.value, c(e_gamma, 0.0)) < 3e-10, "err {}", rel(g1.value, c(e_gamma, 0.0)));
    }

    #[test]
    fn g_functional_equation_constant() {
        // g(s+1)/(s g(s)) = e^gamma
        let s = c(0.7, 0.0);
        let num = gamma_weierstrass_g(s + 1.0, 1e-11).unwrap().value;
        let den = gamma_weierstrass_g(s, 1e-11).unwrap().value * s;
        let e_gamma = euler_mascheroni_cached().exp();
        assert!(rel(num / den, c(e_gamma, 0.0)) < 1e-9);
    }

    #[test]
    fn g_finite_off_poles() {
        let v = gamma_weierstrass_g(c(-0.5, 0.0), 1e-10).unwrap();
        assert!(v.value.norm() > 1e-6 && v.value.norm().is_finite());
        // cross-check: Gamma(s) = e^{-gamma s} g(s) against a known value
        let gm = gamma_weierstrass(c(-0.5, 0.0), 1e-10).unwrap();
        let expect = -2.0 * std::f64::consts::PI.sqrt();
        assert!((gm.value.re - expect).abs() < 1e-6);
    }

    #[test]
    fn weierstrass_special_values() {
        let one = gamma_weierstrass(c(1.0, 0.0), 1e-9).unwrap();
        assert!((one.value - c(1.0, 0.0)).norm() < 1e-8);
        let half = gamma_weierstrass(c(0.5, 0.0), 1e-9).unwrap();
        assert!(rel(half.value, c(std::f64::consts::PI.sqrt(), 0.0)) < 1e-8);
        let five = gamma_weierstrass(c(5.0, 0.0), 1e-9).unwrap();
        assert!(rel(five.value, c(24.0, 0.0)) < 1e-7);
    }

    #[test]
    fn weierstrass_functional_equation_region() {
        let tol = 1e-8;
        for &s in &[c(0.25, 0.0), c(1.5, 2.0), c(3.0, -3.0), c(0.4, 3.0)] {
            let a = gamma_weierstrass(s + 1.0, tol).unwrap().value;
            let b = gamma_weierstrass(s, tol).unwrap().value * s;
            assert!(rel(a, b) < 1e-6, "s={s} rel={}", rel(a, b));
        }
    }

    #[test]
    fn weierstrass_conjugate_symmetry_exact() {
        let s = c(1.3, 2.1);
        let a = gamma_weierstrass(s, 1e-8).unwrap().value;
        let b = gamma_weierstrass(s.conj(), 1e-8).unwrap().value;
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn difference_solver_examples() {
        // P = gamma -> Q = gamma s, exactly
        let gamma_const = euler_mascheroni_cached();
        let q = solve_difference_poly(&Polynomial::from_real(&[gamma_const]));
        assert_eq!(q.coeffs(), &[c(0.0, 0.0), c(gamma_const, 0.0)]);

        // P = s -> Q = s(s-1)/2
        let q = solve_difference_poly(&Polynomial::from_real(&[0.0, 1.0]));
        assert_eq!(q, Polynomial::from_real(&[0.0, -0.5, 0.5]));

        // P = s^2 -> Q = s^3/3 - s^2/2 + s/6 (oracle: expand delta Q - P)
        let p = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let q = solve_difference_poly(&p);
        let expect = Polynomial::from_real(&[0.0, 1.0 / 6.0, -0.5, 1.0 / 3.0]);
        assert!(q.max_coeff_distance(&expect) < 1e-15);
        let residual = poly_shift(&q).sub(&q).sub(&p);
        assert!(residual.max_coeff_distance(&Polynomial::zero()) < 1e-15);
    }

    #[test]
    fn difference_solver_random_polynomials() {
        // deterministic LCG; coefficients in [-10, 10], degree <= 6
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 20.0 - 10.0
        };
        for _ in 0..100 {
            let deg = 1 + (next().abs() as usize) % 6;
            let coeffs: Vec<f64> = (0..=deg).map(|_| next()).collect();
            let p = Polynomial::from_real(&coeffs);
            let q = solve_difference_poly(&p);
            assert_eq!(q.coeff(0), c(0.0, 0.0));
            if let Some(dp) = p.degree() {
                assert_eq!(q.degree(), Some(dp + 1));
            }
            let residual = poly_shift(&q).sub(&q).sub(&p);
            assert!(
                residual.max_coeff_distance(&Polynomial::zero()) <= 1e-12,
                "residual {:e}",
                residual.max_coeff_distance(&Polynomial::zero())
            );
        }
    }

    #[test]
    fn order_of_pure_exponentials() {
        let radii = [10.0, 20.0, 40.0];
        let o1 = estimate_order(|s| Some(s.exp().norm()), &radii).unwrap();
        assert!((o1 - 1.0).abs() < 0.1, "got {o1}");
        // e^{s^2} overflows past r ~ 26, so probe smaller circles
        let o2 = estimate_order(|s| Some((s * s).exp().norm()), &[6.0, 10.0, 16.0, 22.0]).unwrap();
        assert!((o2 - 2.0).abs() < 0.1, "got {o2}");
    }

    #[test]
    fn order_estimator_needs_three_radii() {
        assert!(matches!(
            estimate_order(|s| Some(s.exp().norm()), &[5.0, 10.0]),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn order_estimator_truncates_on_overflow() {
        // e^{s^2} overflows past r ~ 27; enough radii must survive
        let radii = [3.0, 6.0, 12.0, 24.0, 48.0, 96.0];
        let o = estimate_order(|s| Some((s * s).exp().norm()), &radii).unwrap();
        assert!((o - 2.0).abs() < 0.1, "got {o}");
    }

    #[test]
    fn genus_examples() {
        assert_eq!(divisor_genus(1.0), 1);
        assert_eq!(divisor_genus(0.5), 0);
        assert_eq!(divisor_genus(2.5), 2);
    }
}
