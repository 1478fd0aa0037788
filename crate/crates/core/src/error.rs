use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("not a Heisenberg span: {0}")]
    NotHeisenberg(String),

    #[error("not a unipotent local algebra: {0}")]
    NotUnipotentLocal(String),

    #[error("algebra is not commutative")]
    NotCommutative,

    #[error("wrong dimension for {what}: expected {expected}, found {found}")]
    WrongDimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("reference point does not have a dense orbit")]
    NotDense,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("central element does not fix the boundary pointwise")]
    NotBoundaryFixing,

    #[error("central element annihilates the reference point")]
    DegenerateDirection,

    #[error("fixed direction is moved by generator {0}")]
    DirectionNotFixed(usize),

    #[error("algebra is not tautological: {0}")]
    NotTautological(String),

    #[error("invalid structure matrix: {0}")]
    InvalidStructureMatrix(String),

    #[error("invalid family labels: {0}")]
    InvalidLabels(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
