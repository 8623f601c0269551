//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A generated or requested structure exceeds a configured cap.
    #[error("{what} would have {actual} elements, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    /// Two set families live on ground sets of different sizes.
    #[error("ground-set mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    /// An axis probe was asked about points that are not in the sample.
    #[error("axis point {index} is not an event of the sample")]
    AxisNotInSample { index: usize },

    /// Invalid configuration (unknown experiment, malformed flag, bad file).
    #[error("bad config: {0}")]
    BadConfig(String),

    /// A sample violated an invariant (duplicate events, empty, …).
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Rejection sampling could not produce enough distinct events.
    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
