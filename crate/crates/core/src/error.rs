use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} refused: {n} vertices exceeds the limit of {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("graph6 format error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A constructed set failed its own verification. Always a bug.
    #[error("internal inconsistency: {message}\ntrace:\n{trace}")]
    Internal { message: String, trace: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
