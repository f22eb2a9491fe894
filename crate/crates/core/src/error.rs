use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different algebras")]
    AlgebraMismatch,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid homomorphism data: {0}")]
    InvalidData(String),

    #[error("images are not of the classified form: {0}")]
    NotClassifiedForm(String),

    #[error("parameter extraction failed: {0}")]
    ExtractionFailure(String),

    #[error("homomorphism is not invertible: {0}")]
    NotInvertible(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("unsupported configuration: {0}")]
    UnsupportedConfig(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("generator invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Parse and configuration problems, as opposed to semantic failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Syntax { .. }
                | Error::InvalidConfig(_)
                | Error::Structural(_)
                | Error::ConfigMismatch(_)
                | Error::UnsupportedConfig(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
