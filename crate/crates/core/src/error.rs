use thiserror::Error;

/// Errors produced by classifier construction, training, inference and
/// dataset handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain type was constructed with values that violate its invariants.
    #[error("invalid value: {0}")]
    Invalid(String),

    /// A feature vector length does not match what the consumer expects.
    #[error("dimension mismatch: expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// No training values were available for a (feature, class) cell.
    #[error("no training data for class `{class}`, feature `{feature}`")]
    NoTrainingData { class: String, feature: String },

    /// A declared class has no samples at all.
    #[error("class `{0}` has no training samples")]
    EmptyClass(String),

    /// A sample carries a label outside the declared class set.
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    /// Every class confidence is zero; there is no argmax to report.
    #[error("unclassifiable sample: all class confidences are zero")]
    Unclassifiable,

    /// Both label sets of an alpha-evaluation pair are empty.
    #[error("undefined union: both label sets are empty")]
    UndefinedUnion,

    /// A distribution with zero norm was passed where a direction is needed.
    #[error("zero-norm distribution")]
    ZeroNorm,

    /// A tunable parameter is outside its permitted range.
    #[error("invalid parameter `{name}`: {msg}")]
    InvalidParam { name: &'static str, msg: String },

    /// A text input could not be parsed. `line` is 1-based.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
