use thiserror::Error;

use crate::weights::OriginHint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("argument outside its domain: {0}")]
    Domain(String),

    #[error("adaptive quadrature on [{a}, {b}] did not converge (residual error {error:e})")]
    QuadratureDivergence { a: f64, b: f64, error: f64 },

    #[error("integral means decrease between r = {r0} and r = {r1} ({m0} > {m1})")]
    MonotonicityViolation { r0: f64, r1: f64, m0: f64, m1: f64 },

    #[error("no grid radius satisfies the certification inequality (best margin {best_margin:e})")]
    NoCertificate { best_margin: f64 },

    #[error("no counterexample in the epsilon scan (best gap {best_gap:e}; weight near origin: {hint:?})")]
    NoWitnessFound { best_gap: f64, hint: OriginHint },
}

impl Error {
    /// True for outcomes where the computation ran but found nothing.
    pub fn is_negative_result(&self) -> bool {
        matches!(self, Error::NoCertificate { .. } | Error::NoWitnessFound { .. })
    }

    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidWeight(_) | Error::InvalidPolynomial(_) | Error::Domain(_))
    }
}
