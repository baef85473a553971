use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by matrix, query-structure and graph routines.
///
/// Row/column/vertex indices carried by variants are 0-based; the `Display`
/// output adds one so messages line up with the 1-based text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not monotone: row {} decreases at column {}", .row + 1, .col + 1)]
    NotMonotone { row: usize, col: usize },

    #[error("matrix does not have bounded differences (bound {bound})")]
    NotBoundedDifference { bound: i64 },

    #[error("entry {value} at ({}, {}) exceeds the bound {bound}", .row + 1, .col + 1)]
    EntryBound {
        row: usize,
        col: usize,
        value: i64,
        bound: i64,
    },

    #[error("value {0} is outside the representable range [-2^60, 2^60]")]
    OutOfRange(i128),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("graph contains a negative-weight cycle")]
    NegativeCycle,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("query excludes {got} indices but the structure was built for at most {budget}")]
    BudgetExceeded { got: usize, budget: usize },

    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    #[error("order is not a Hamiltonian path of the graph")]
    NotHamiltonian,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("infeasible generator spec: {0}")]
    Infeasible(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
