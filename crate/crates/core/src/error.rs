use thiserror::Error;

use crate::diophantine::Convergents;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate map: {0}")]
    DegenerateMap(&'static str),

    #[error("invalid angle specification: {0}")]
    InvalidAngle(String),

    #[error("decimal expansion exhausted its precision after {trusted} trusted partial quotients")]
    PrecisionExhausted {
        trusted: usize,
        partial: Box<Convergents>,
    },

    #[error("no convergent up to depth {depth} satisfies the drift inequality")]
    NotFoundWithinDepth { depth: usize },

    #[error("operation needs an irrational rotation number")]
    RationalAngle,

    #[error("map is bijective (|delta| = {abs_delta:e} within tolerance)")]
    BijectiveMap { abs_delta: f64 },

    #[error("unsupported angle: {0}")]
    UnsupportedAngle(String),

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("word of length {n} is resonant (e^(i n alpha) = 1)")]
    ResonantLength { n: usize },

    #[error("perturbed weight {w_eps} is not positive")]
    WeightExhausted { w_eps: f64 },

    #[error("point at modulus {modulus} lies inside the core disc of radius {core}")]
    InsideCore { modulus: f64, core: f64 },

    #[error("strip measurement along ray {ray} did not converge: {reason}")]
    NonConvergent { ray: usize, reason: String },

    #[error("wrong sign of delta for this operation: {0}")]
    WrongSign(String),

    #[error("certificate failed for samples {samples:?}")]
    CertificateFailed { samples: Vec<usize> },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("parameter file: {0}")]
    Params(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
