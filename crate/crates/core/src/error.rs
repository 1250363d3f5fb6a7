use thiserror::Error;

/// Errors raised by the aggregation, encoding and decoding routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("length mismatch: {left} preferences vs {right} weights")]
    LengthMismatch { left: usize, right: usize },

    #[error("term index {index} outside term set (max index {max})")]
    IndexOutOfTermSet { index: usize, max: usize },

    #[error("invalid term set: {0}")]
    InvalidTermSet(String),

    #[error("tri-tuple product requires non-negative operands")]
    NegativeOperand,

    #[error("operation needs at least two terms in the term set")]
    SingletonTermSet,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("total weight mass is zero")]
    ZeroWeightMass,

    #[error("beta {beta} outside [-0.5, {upper})")]
    BetaOutOfRange { beta: f64, upper: f64 },

    #[error("invalid 2-tuple: {0}")]
    InvalidTwoTuple(String),

    #[error("invalid interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("invalid FOU: {0}")]
    InvalidFou(String),

    #[error("degenerate FOU: {0}")]
    DegenerateFou(String),

    #[error("all intervals eliminated at stage `{stage}`")]
    AllIntervalsEliminated { stage: &'static str },

    #[error("no admissible embedded type-1 set survived")]
    AllEmbeddedInadmissible,

    #[error("survivor intervals share no common overlap (max left {max_left} > min right {min_right})")]
    EmptyOverlap { max_left: f64, min_right: f64 },

    #[error("need at least {needed} surviving intervals, got {got}")]
    InsufficientSurvivors { needed: usize, got: usize },

    #[error("invalid encoder configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("{path}: {message}")]
    Validation { path: String, message: String },
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
