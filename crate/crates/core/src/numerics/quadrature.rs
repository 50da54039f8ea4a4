use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{c, Complex, EvalResult};
use crate::error::{Error, Result};
use crate::method::Method;

/// Which kernel `integrate` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Composite 16-node Gauss-Legendre panels, refined by bisection.
    GaussLegendreComposite,
    /// Double-exponential transform; required when an endpoint
    /// singularity is declared.
    TanhSinh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub kind: QuadratureKind,
    /// Maximum refinement depth (levels of panel bisection or step halving).
    pub level: u32,
    pub abs_tol: f64,
}

impl QuadratureSpec {
    pub fn new(kind: QuadratureKind, level: u32, abs_tol: f64) -> Self {
        assert!(level >= 1, "level must be >= 1");
        assert!(abs_tol > 0.0, "abs_tol must be positive");
        QuadratureSpec {
            kind,
            level,
            abs_tol,
        }
    }

    pub fn gauss(abs_tol: f64) -> Self {
        QuadratureSpec::new(QuadratureKind::GaussLegendreComposite, 14, abs_tol)
    }

    pub fn tanh_sinh(abs_tol: f64) -> Self {
        QuadratureSpec::new(QuadratureKind::TanhSinh, 12, abs_tol)
    }
}

/// Nodes and weights of a quadrature rule on [-1, 1].
pub type NodeRule = Arc<(Vec<f64>, Vec<f64>)>;

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence and cached per node count.
pub fn gauss_legendre_nodes(n: usize) -> NodeRule {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<usize, NodeRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }

    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        xs[n / 2] = 0.0;
    }
    let arc = Arc::new((xs, ws));
    cache.lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates a complex-valued function over (a, b), b possibly +inf.
///
/// Semi-infinite ranges are mapped by t = a + u/(1-u). The error estimate
/// is the difference between the last two refinement levels; refinement
/// stops once it drops below `spec.abs_tol`, and exceeding the level cap
/// yields a convergence error carrying the best value.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    if b.is_infinite() {
        let g = |u: f64| {
            let om = 1.0 - u;
            f(a + u / om) / (om * om)
        };
        return integrate_finite(&g, 0.0, 1.0, spec);
    }
    integrate_finite(&f, a, b, spec)
}

fn integrate_finite<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    if a == b {
        return Ok(EvalResult::new(c(0.0, 0.0), 0.0, Method::Quadrature, 0));
    }
    match spec.kind {
        QuadratureKind::GaussLegendreComposite => gl_composite(f, a, b, spec),
        QuadratureKind::TanhSinh => tanh_sinh(f, a, b, spec),
    }
}

fn gl_composite<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    let rule = gauss_legendre_nodes(16);
    let (xs, ws) = (&rule.0, &rule.1);
    let mut work = 0u64;
    let mut prev: Option<Complex> = None;
    let mut best = c(0.0, 0.0);
    let mut best_err = f64::INFINITY;

    for level in 1..=spec.level {
        let panels = 1u64 << (level - 1);
        let h = (b - a) / panels as f64;
        let mut acc = c(0.0, 0.0);
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            let mut panel = c(0.0, 0.0);
            for (x, w) in xs.iter().zip(ws) {
                panel += f(mid + half * x) * *w;
            }
            acc += panel * half;
        }
        work += panels * 16;
        if let Some(prev) = prev {
            let err = (acc - prev).norm();
            if err <= spec.abs_tol {
                return Ok(EvalResult::new(acc, err, Method::Quadrature, work));
            }
            best = acc;
            best_err = err;
        }
        prev = Some(acc);
    }
    Err(Error::Convergence {
        value: best,
        err_estimate: best_err,
        work,
    })
}

// Double-exponential abscissa cap: sech^2((pi/2) sinh v) underflows well
// before this, so nodes past it contribute exactly zero.
const TS_V_MAX: f64 = 6.1;

fn tanh_sinh<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> Complex,
{
    debug_assert!(a < b);
    let half = 0.5 * (b - a);
    let pi_half = std::f64::consts::FRAC_PI_2;
    let mut work = 0u64;

    // F(v) dv, the transformed integrand at abscissa v. Nodes are
    // anchored at the nearer endpoint through the cancellation-free
    // distance half * 2 e^{-2|w|}/(1 + e^{-2|w|}); computing them as
    // mid + half tanh(w) would round onto the endpoint and ruin
    // integrable singularities there.
    let eval = |v: f64, work: &mut u64| -> Complex {
        let sh = pi_half * v.sinh();
        let em = (-2.0 * sh.abs()).exp();
        let dist = half * 2.0 * em / (1.0 + em);
        let weight = half * pi_half * v.cosh() * (2.0 / (sh.exp() + (-sh).exp())).powi(2);
        if weight == 0.0 || dist == 0.0 {
            return c(0.0, 0.0);
        }
        let x = if sh <= 0.0 { a + dist } else { b - dist };
        *work += 1;
        let fx = f(x);
        if !fx.re.is_finite() || !fx.im.is_finite() {
            return c(0.0, 0.0);
        }
        fx * weight
    };

    let h0 = 0.5;
    let mut sum = eval(0.0, &mut work);
    let mut k = 1;
    loop {
        let v = k as f64 * h0;
        if v > TS_V_MAX {
            break;
        }
        sum += eval(v, &mut work) + eval(-v, &mut work);
        k += 1;
    }
    let mut prev = sum * h0;

    let mut best = prev;
    let mut best_err = f64::INFINITY;
    for level in 2..=spec.level {
        let h = h0 / (1u64 << (level - 1)) as f64;
        // previous level covered even multiples of h; add the odd ones
        let mut odd = c(0.0, 0.0);
        let mut k = 1u64;
        loop {
            let v = k as f64 * h;
            if v > TS_V_MAX {
                break;
            }
            odd += eval(v, &mut work) + eval(-v, &mut work);
            k += 2;
        }
        let acc = prev * 0.5 + odd * h;
        let err = (acc - prev).norm();
        prev = acc;
        if err <= spec.abs_tol {
            return Ok(EvalResult::new(acc, err, Method::Quadrature, work));
        }
        best = acc;
        best_err = err;
    }
    Err(Error::Convergence {
        value: best,
        err_estimate: best_err,
        work,
    })
}
