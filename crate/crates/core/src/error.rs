use thiserror::Error;

/// Errors split by how front ends report them: configuration problems carry the
/// offending key path, budget refusals carry the exact count that tripped the
/// ceiling, and some analyzers simply do not exist on real carriers.
#[derive(Debug, Error)]
pub enum FaError {
    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("expanded space holds {count} bound sequences, over the ceiling of {ceiling}; raise the budget or switch to a builder-driven solver")]
    BudgetExceeded { count: u128, ceiling: u128 },

    #[error("count overflow: the expanded space does not fit in 128 bits")]
    CountOverflow,

    #[error("unsupported on real carriers: {0}")]
    UnsupportedOnReal(&'static str),

    #[error("empty capacity: the image of step {step} is empty after restriction")]
    EmptyCapacity { step: usize },

    #[error("sequence `{sequence}` is not binary-valued at point {point}")]
    NonBinaryOutput { sequence: String, point: String },
}

impl FaError {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        FaError::Config {
            key: key.into(),
            message: message.into(),
        }
    }
}
