use alloc::string::String;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state pair: {0}")]
    InvalidStates(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("outcome index {index} out of range for {len} outcomes")]
    OutcomeIndex { index: usize, len: usize },

    #[error("stationarity needs two distinct outcomes, got k = l = {0}")]
    SameOutcome(usize),

    /// A probability entering the variational formula is not strictly positive.
    #[error("boundary distribution: probability {value:e} at {what} is below {tol:e}")]
    BoundaryDistribution { what: String, value: f64, tol: f64 },

    /// State `state` is pure (or numerically pure) in the requested frame.
    #[error("state {state} is pure in this frame (xi^2 = {xi_sq}, eta = {eta}); use the optimizer path")]
    PureStateDomain { state: usize, xi_sq: f64, eta: f64 },

    #[error("parameters violate 0 ≤ ξ² < η, 0 < α < 1: {0}")]
    InvalidParams(String),

    #[error("degenerate Sturm sequence: remainder of degree {degree} underflowed")]
    DegenerateSequence { degree: usize },

    #[error("polynomial must have degree at least {min}, got {got}")]
    DegreeTooLow { min: usize, got: usize },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("empty interval ({a}, {b}]")]
    EmptyInterval { a: f64, b: f64 },

    #[error("Y1 fit residual {residual:e} exceeds {tol:e}")]
    FitFailure { residual: f64, tol: f64 },

    #[error("certificate violation at alpha1 = {alpha1}, xi^2 = {xi_sq}, X = {x}: {reason}")]
    CertificateViolation { alpha1: f64, xi_sq: f64, x: f64, reason: String },

    #[error("completeness is unsolvable for the proposed angles")]
    DegenerateAngles,

    #[error("invalid configuration: {0}")]
    Config(String),
}
