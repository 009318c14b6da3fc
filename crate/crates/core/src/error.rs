use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical routines.
///
/// Operations signal instead of returning huge or non-finite values; the CLI
/// maps every variant to exit code 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {at} is within {radius:e} of a pole")]
    PoleProximity {
        function: &'static str,
        at: Complex64,
        radius: f64,
    },

    #[error("{0}")]
    Domain(String),

    #[error("design matrix is ill conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("fit residual {residual:e} exceeds limit {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("|g(sigma)| underflows or vanishes at sigma = {sigma}")]
    SignalTooSmall { sigma: f64 },

    #[error("contour integral around {center} did not converge (last change {change:e} with {nodes} nodes)")]
    ContourFailure {
        center: f64,
        nodes: usize,
        change: f64,
    },

    #[error("measure is not a finite T(d,e) combination: {0}")]
    NotFiniteCombination(String),

    #[error("residue class {residue}: {available} coefficients in window, need {required}")]
    InsufficientWindow {
        residue: f64,
        available: usize,
        required: usize,
    },

    #[error("support meets {found} residue classes modulo 1 (bound {bound})")]
    TooManyClasses { found: usize, bound: usize },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
