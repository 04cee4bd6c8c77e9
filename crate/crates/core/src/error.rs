use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("factor (1 - a q^-{k}) vanishes while forming (a;q)_{n}")]
    DivisionByZeroFactor { n: i64, k: i64 },

    #[error("truncation budget of {max_terms} terms exceeded")]
    TruncationBudgetExceeded { max_terms: usize },

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("argument lies on a pole q-spiral: {0}")]
    PoleOnQSpiral(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("pole at non-positive integer {0}")]
    PoleAtNonPositiveInteger(i64),

    #[error("series with r > s + 1 (or bilateral r > s) diverges for x != 0")]
    DivergentSeriesRequested,

    #[error("|x| = {modulus} is outside the radius of convergence {radius}")]
    OutsideRadius { modulus: f64, radius: f64 },

    #[error("|z| = {modulus} is outside the convergence annulus ({inner}, {outer})")]
    OutsideAnnulus { modulus: f64, inner: f64, outer: f64 },

    #[error("denominator vanishes: {0}")]
    PoleInDenominator(String),

    #[error("division by a zero of theta: {0}")]
    ThetaZeroDivision(String),

    #[error("Laplace sum hits a zero of theta: {0}")]
    SpiralSingularity(String),

    #[error("quadrature not converged: doubling nodes changed result by {change:e} (allowed {allowed:e})")]
    QuadratureNotConverged { change: f64, allowed: f64 },

    #[error("degenerate parameters: {0}")]
    ParameterDegeneracy(String),
}

impl QError {
    /// Stable variant name, used by the CLI when surfacing errors.
    pub fn name(&self) -> &'static str {
        match self {
            QError::InvalidContext(_) => "InvalidContext",
            QError::DivisionByZeroFactor { .. } => "DivisionByZeroFactor",
            QError::TruncationBudgetExceeded { .. } => "TruncationBudgetExceeded",
            QError::ZeroArgument => "ZeroArgument",
            QError::PoleOnQSpiral(_) => "PoleOnQSpiral",
            QError::DomainError(_) => "DomainError",
            QError::PoleAtNonPositiveInteger(_) => "PoleAtNonPositiveInteger",
            QError::DivergentSeriesRequested => "DivergentSeriesRequested",
            QError::OutsideRadius { .. } => "OutsideRadius",
            QError::OutsideAnnulus { .. } => "OutsideAnnulus",
            QError::PoleInDenominator(_) => "PoleInDenominator",
            QError::ThetaZeroDivision(_) => "ThetaZeroDivision",
            QError::SpiralSingularity(_) => "SpiralSingularity",
            QError::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            QError::ParameterDegeneracy(_) => "ParameterDegeneracy",
        }
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
