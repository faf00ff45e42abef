use thiserror::Error;

/// Errors raised by the numerical kernels and the physics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("|z| = {modulus} exceeds the supported radius {limit} for {function}")]
    UnsupportedRange {
        function: &'static str,
        modulus: f64,
        limit: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root search for level {level} did not converge in [{lo}, {hi}] after {iterations} iterations")]
    RootNotConverged {
        level: usize,
        lo: f64,
        hi: f64,
        iterations: usize,
    },

    #[error("no sign change of the target function on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("pole of the phase map: denominator modulus {modulus:e} is below {threshold:e}")]
    Pole { modulus: f64, threshold: f64 },

    #[error("imaginary residual {residual:e} of the phase map exceeds {tolerance:e}")]
    NotReal { residual: f64, tolerance: f64 },

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
