use thiserror::Error;

use crate::freq::Frequency;

#[derive(Debug, Error)]
pub enum Error {
    #[error("centers invalid: {0}")]
    InvalidCenters(String),

    #[error("frequency {frequency} has two sign representations {first:?} and {second:?}")]
    RepresentationCollision {
        frequency: Frequency,
        first: Vec<i8>,
        second: Vec<i8>,
    },

    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),

    #[error("scheme construction failed on condition {condition} at center index {depth}")]
    ConstructionFailed { condition: String, depth: usize },

    #[error("integer rescaling overflows the 128-bit frequency range: {0}")]
    ScaleOverflow(String),

    #[error("bumps of half-width 2^-{theta} overlap or touch an axis (minimal separation {separation})")]
    BumpOverlap { theta: u32, separation: f64 },

    #[error("theta search did not stabilise before theta = {theta_max}")]
    NoStabilization { theta_max: u32 },

    #[error("symbol {symbol} sampled on its singular locus at ({x}, {y})")]
    SampleOnSingularity { symbol: String, x: f64, y: f64 },

    #[error("lattice point {0} lies in more than one top-level ball")]
    BallAssignmentAmbiguous(Frequency),

    #[error("coefficient gap {measured} exceeds bound {bound}")]
    GapExceeded { measured: f64, bound: f64 },

    #[error("identity check failed: {0}")]
    IdentityMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps the error with the name of the pipeline stage that raised it.
    pub fn at_stage(self, stage: impl Into<String>) -> Error {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping stage annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

/// Attaches a stage name to the error of a result.
pub trait StageExt<T> {
    fn stage(self, stage: &str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &str) -> Result<T> {
        self.map_err(|e| e.at_stage(stage))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
