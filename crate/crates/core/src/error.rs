use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("slot {slot} out of range for a rank-{rank} tensor")]
    SlotOutOfRange { slot: usize, rank: usize },

    #[error("tensor shape mismatch: {0}")]
    Shape(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("Jacobi identity fails on (e{}, e{}, e{}): residual {residual}", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1)]
    Jacobi {
        triple: (usize, usize, usize),
        residual: String,
    },

    #[error("structure relations fail: {0}")]
    Structure(String),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("g and the associated metric are linearly dependent")]
    DegenerateSpan,

    #[error("{0}")]
    Validation(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
