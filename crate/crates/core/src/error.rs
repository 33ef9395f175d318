use thiserror::Error;

/// Failure modes of the evaluators and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error("mean arguments must be finite and positive, got a={a}, b={b}")]
    InvalidPoint { a: f64, b: f64 },

    #[error("parameter {name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    #[error("exponent product {exponent} exceeds the representable range (limit {limit})")]
    Saturation { exponent: f64, limit: f64 },

    #[error("generator {generator} has no positive diagonal limit, required for a zero parameter")]
    MissingDiagonalLimit { generator: String },

    #[error("outside the domain: {0}")]
    OutsideDomain(String),

    #[error("finite-difference step {step} underflows at t={t}; try {suggested}")]
    StepUnderflow { t: f64, step: f64, suggested: f64 },

    #[error("quadrature reached relative error {achieved} (requested {requested}) after {subdivisions} subdivisions")]
    QuadratureNonConvergence {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    #[error("blend weights must be nonnegative and sum to one, got ({alpha}, {beta})")]
    InvalidWeights { alpha: f64, beta: f64 },

    #[error("invalid scan specification: {0}")]
    InvalidSpec(String),

    #[error("evaluation produced a non-finite value")]
    NonFinite,
}

pub type Result<T, E = MeanError> = std::result::Result<T, E>;
