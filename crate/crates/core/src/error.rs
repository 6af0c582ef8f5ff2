use thiserror::Error;

use crate::grassmann::Parity;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("supernumber with zero body is not invertible")]
    NonInvertible,
    #[error("expected {expected:?} parity, found {found:?}")]
    Parity { expected: Parity, found: Parity },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("jet specifications differ")]
    SpecMismatch,
    #[error("jet point lacks coordinate {0}")]
    IncompleteJetPoint(String),
    #[error("singular point at sigma = {0}")]
    SingularPoint(f64),
    #[error("|cos alpha| = {cos:.3e} below threshold at sigma = {sigma}")]
    NearSingular { sigma: f64, cos: f64 },
    #[error("energy drift {drift:.3e} exceeds threshold {threshold:.3e}")]
    StepRejected { drift: f64, threshold: f64 },
    #[error("parameter m = {0} > 1 is not supported")]
    UnsupportedParameter(f64),
    #[error("element has a nonzero L component")]
    OutOfIdeal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
