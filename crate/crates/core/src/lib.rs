//! gammaforge evaluates the complex Gamma function by several independent
//! computational routes and cross-checks them against each other and
//! against the classical identities (functional equation, reflection,
//! duplication, residues, strip bounds, log-convexity).
//!
//! Module map:
//! - [`numerics`]: branch conventions, polynomials, quadrature kernels.
//! - [`factorization`]: elementary factors, canonical products, the
//!   Weierstrass product for Gamma, the polynomial difference-equation
//!   solver, and order/genus estimators.
//! - [`products`]: Euler-Gauss and Birkhoff limit products, the
//!   Euler-Mascheroni constant, asymptotic-ratio diagnostics.
//! - [`contours`]: Hankel contour integrals and the inverse-Laplace
//!   formula for 1/Gamma.
//! - [`integral_reps`]: Euler, Binet-Malmsten, Gauss digamma, Frullani
//!   and Gaussian integrals on the real axis.
//! - [`hurwitz`]: Hurwitz zeta series, its continuation past t = 0, and
//!   the Lerch route to log Gamma.
//! - [`routes`]: one entry point dispatching over every route.
//! - [`verify`]: grid-based verification suites and cross-route
//!   comparison.

pub mod contours;
pub mod error;
pub mod factorization;
pub mod hurwitz;
pub mod integral_reps;
pub mod method;
pub mod numerics;
pub mod products;
pub mod routes;
pub mod verify;

pub use error::{Error, Result};
pub use method::Method;
pub use numerics::{Complex, EvalResult, Polynomial, QuadratureKind, QuadratureSpec};
