use thiserror::Error;

/// Errors raised by the reasoning engines, the harness and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("membership grade {value} at index {index} is outside [0, 1]")]
    GradeOutOfRange { index: usize, value: f64 },

    #[error("fuzzy set needs at least 2 grades, got {0}")]
    TooShort(usize),

    #[error("universe has {universe} points but the set has {grades} grades")]
    UniverseLength { grades: usize, universe: usize },

    #[error("universe coordinates must strictly increase (index {0})")]
    UniverseNotIncreasing(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("slightly-tilted hedge needs an explicit tilt vector")]
    TiltMissing,

    #[error("extension length {theta} is not a positive multiple of {len}")]
    ThetaNotMultiple { theta: usize, len: usize },

    #[error("extension length {0} exceeds the supported maximum of 1000000")]
    ThetaTooLarge(usize),

    #[error("{case} is not valid for {direction}")]
    InvalidCase { case: String, direction: String },

    #[error("unknown method selector `{0}`")]
    UnknownMethod(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("simulation diverged at step {step} (value {value})")]
    Diverged { step: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, FuzzyError>;
