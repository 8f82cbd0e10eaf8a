use thiserror::Error;

#[derive(Debug, Error)]
pub enum HopError {
    #[error("order n={0} is not supported (need n >= 4)")]
    InvalidOrder(usize),
    #[error("vertex {vertex} is out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("degenerate edge: both endpoints are vertex {0}")]
    DegenerateEdge(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: edge {u}-{v} is declared with difference {declared} but has difference {computed}")]
    DifferenceMismatch {
        line: usize,
        u: usize,
        v: usize,
        declared: usize,
        computed: usize,
    },
    #[error("line {line}: factor has cycle type {found}, header declares {expected}")]
    CycleTypeMismatch {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("wrong parity: {0}")]
    WrongParity(String),
    #[error("undirected black edge {0} where an oriented edge is required")]
    Unoriented(String),
    #[error("{0}")]
    Structure(String),
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("one-to-two reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("lift failed under every colour table: {0}")]
    LiftConvention(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = HopError> = std::result::Result<T, E>;
