use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A complex time or argument fell outside the region where the
    /// function is analytic.
    #[error("argument {z} lies outside the domain: {domain}")]
    Domain { z: Complex64, domain: String },

    #[error("model `{0}` exposes only a correlation function, no density")]
    NoDensity(String),

    #[error("quadrature stalled at estimated error {achieved:e} (requested {requested:e})")]
    ToleranceNotMet { achieved: f64, requested: f64 },

    #[error("scale must be positive, got {0}")]
    InvalidScale(f64),

    #[error("quadrature order {0} out of range 1..=128")]
    OrderOutOfRange(usize),

    #[error("no valid route: {0}")]
    NoValidRoute(String),

    #[error("invalid annulus: {0}")]
    InvalidAnnulus(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(z: Complex64, domain: impl Into<String>) -> Self {
        Error::Domain {
            z,
            domain: domain.into(),
        }
    }
}
