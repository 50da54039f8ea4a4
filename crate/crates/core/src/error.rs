use crate::numerics::Complex;

/// Errors shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Argument outside the documented domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested at (or numerically on top of) a pole.
    #[error("pole at s = {0}")]
    Pole(Complex),

    /// Refinement hit its cap before meeting the tolerance. Carries the
    /// best value computed so far and its estimated error.
    #[error("did not converge (best {value}, est {err_estimate:.3e}, work {work})")]
    Convergence {
        value: Complex,
        err_estimate: f64,
        work: u64,
    },

    /// The divisor tail diverges for the requested elementary-factor degree.
    #[error("divergent divisor: convergence exponent {exponent} >= p + 1 = {p_plus_one}")]
    DivergentDivisor { exponent: f64, p_plus_one: f64 },

    /// `gamma_hankel` refuses near-integer arguments where sin(pi s)
    /// vanishes; callers should switch to the reciprocal integral or
    /// apply the recurrence.
    #[error("s = {0} is within 1e-8 of an integer; use the reciprocal Hankel route or the recurrence")]
    NearInteger(Complex),

    /// Too few usable samples (or similar) for an estimator to run.
    #[error("estimation error: {0}")]
    Estimation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
