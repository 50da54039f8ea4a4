use std::fmt;
use std::str::FromStr;

/// Identifier attached to every [`EvalResult`](crate::numerics::EvalResult).
///
/// The first ten variants are the Gamma evaluation routes exposed on the
/// command line; the rest tag internal kernels and auxiliary quantities so
/// that results stay self-describing when routes are mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Weierstrass,
    Gauss,
    Birkhoff,
    Hankel,
    RecipHankel,
    Laplace,
    EulerIntegral,
    EulerLog,
    Malmsten,
    Lerch,
    // internal kernels / auxiliary quantities
    Quadrature,
    WeierstrassG,
    HurwitzSeries,
    HurwitzContinued,
    HurwitzDt0,
    ZetaPrime0,
    DigammaGauss,
    FrullaniLog,
    GaussianIntegral,
}

impl Method {
    /// The Gamma evaluation routes accepted by the CLI registry.
    pub const REGISTRY: [Method; 10] = [
        Method::Weierstrass,
        Method::Gauss,
        Method::Birkhoff,
        Method::Hankel,
        Method::RecipHankel,
        Method::Laplace,
        Method::EulerIntegral,
        Method::EulerLog,
        Method::Malmsten,
        Method::Lerch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Weierstrass => "weierstrass",
            Method::Gauss => "gauss",
            Method::Birkhoff => "birkhoff",
            Method::Hankel => "hankel",
            Method::RecipHankel => "recip-hankel",
            Method::Laplace => "laplace",
            Method::EulerIntegral => "euler-integral",
            Method::EulerLog => "euler-log",
            Method::Malmsten => "malmsten",
            Method::Lerch => "lerch",
            Method::Quadrature => "quadrature",
            Method::WeierstrassG => "weierstrass-g",
            Method::HurwitzSeries => "hurwitz-series",
            Method::HurwitzContinued => "hurwitz-continued",
            Method::HurwitzDt0 => "hurwitz-dt0",
            Method::ZetaPrime0 => "zeta-prime-0",
            Method::DigammaGauss => "digamma-gauss",
            Method::FrullaniLog => "frullani-log",
            Method::GaussianIntegral => "gaussian-integral",
        }
    }

    pub fn is_route(self) -> bool {
        Method::REGISTRY.contains(&self)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    /// Parses a registry identifier. Internal kernel names are not accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::REGISTRY
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Method::REGISTRY.iter().map(|m| m.name()).collect();
                format!("unknown method '{s}'; known methods: {}", known.join(", "))
            })
    }
}
