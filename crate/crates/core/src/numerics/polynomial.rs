use super::Complex;

/// Polynomial with complex coefficients, index = power. The empty list is
/// the zero polynomial; otherwise the trailing coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c0: Complex) -> Self {
        Polynomial::new(vec![c0])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of s^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, s: Complex) -> Complex {
        let mut acc = Complex::default();
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    /// Largest coefficient modulus of `self - other`; zero when equal.
    pub fn max_coeff_distance(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients of s -> Q(s + 1) by binomial expansion.
pub fn poly_shift(q: &Polynomial) -> Polynomial {
    let n = q.coeffs.len();
    let mut out = vec![Complex::default(); n];
    // Pascal row per source power k: (s+1)^k = sum_j C(k,j) s^j
    for (k, &a) in q.coeffs.iter().enumerate() {
        let mut binom = 1.0f64;
        for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
            *slot += a * binom;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    Polynomial::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    #[test]
    fn shift_square() {
        // s^2 -> s^2 + 2s + 1
        let q = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let shifted = poly_shift(&q);
        assert_eq!(shifted, Polynomial::from_real(&[1.0, 2.0, 1.0]));
    }

    #[test]
    fn shift_constant_and_linear() {
        let q = Polynomial::from_real(&[3.5]);
        assert_eq!(poly_shift(&q), q);
        let lin = Polynomial::from_real(&[0.0, 1.0]);
        assert_eq!(poly_shift(&lin), Polynomial::from_real(&[1.0, 1.0]));
    }

    #[test]
    fn shift_of_zero() {
        assert!(poly_shift(&Polynomial::zero()).is_zero());
    }

    #[test]
    fn difference_drops_degree_by_one() {
        // deg(Q(s+1) - Q(s)) = deg Q - 1 for deg Q >= 1
        for coeffs in [vec![1.0, -2.0, 0.5, 3.0], vec![0.0, 1.0], vec![2.0, 0.0, 7.0]] {
            let q = Polynomial::from_real(&coeffs);
            let delta = poly_shift(&q).sub(&q);
            assert_eq!(delta.degree(), Some(q.degree().unwrap() - 1));
        }
    }

    #[test]
    fn eval_horner() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]);
        let s = c(1.0, 1.0);
        // 1 + i(1+i) + 2(1+i)^2 = 1 + i - 1 + 4i = 4i... check numerically
        let v = p.eval(s);
        let expect = c(1.0, 0.0) + c(0.0, 1.0) * s + c(2.0, 0.0) * s * s;
        assert!((v - expect).norm() < 1e-15);
    }

    #[test]
    fn trailing_zeros_normalized() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(0));
    }
}
