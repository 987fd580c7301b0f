use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least two vertices")]
    TooFewVertices,

    #[error("node-expansion budget of {cap} exhausted")]
    BudgetExceeded { cap: u64 },

    #[error("unknown index `{0}`")]
    UnknownIndex(String),

    #[error("index `{0}` requires a numeric parameter")]
    MissingParameter(String),

    #[error("function `{name}` is not symmetric on {sequence:?}")]
    AsymmetricFunction { name: String, sequence: Vec<u32> },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("order {h} is outside the supported range (minimum {min})")]
    OrderOutOfRange { h: usize, min: usize },

    #[error("no root degree in 3..={max} reproduces the order-0 value")]
    NoCandidateRoot { max: usize },

    #[error("order-0 value is matched by several root degrees: {candidates:?}")]
    AmbiguousRoot { candidates: Vec<usize> },

    #[error("branch count estimate {estimate} at order {h} is not an integer")]
    NonIntegerBranchCount { h: usize, estimate: f64 },

    #[error("{what}: expected {expected}, found {found}")]
    BudgetMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("reconstructed profile deviates at order {h} by {residual}")]
    ResidualExceeded { h: usize, residual: f64 },

    #[error("cannot compare a starlike tree with a generalized starlike tree")]
    FamilyMismatch,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: String, right: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error object and the C error codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "SelfLoop",
            Error::DuplicateEdge { .. } => "DuplicateEdge",
            Error::Disconnected { .. } => "Disconnected",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::TooFewVertices => "TooFewVertices",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::UnknownIndex(_) => "UnknownIndex",
            Error::MissingParameter(_) => "MissingParameter",
            Error::AsymmetricFunction { .. } => "AsymmetricFunction",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::OrderOutOfRange { .. } => "OrderOutOfRange",
            Error::NoCandidateRoot { .. } => "NoCandidateRoot",
            Error::AmbiguousRoot { .. } => "AmbiguousRoot",
            Error::NonIntegerBranchCount { .. } => "NonIntegerBranchCount",
            Error::BudgetMismatch { .. } => "BudgetMismatch",
            Error::ResidualExceeded { .. } => "ResidualExceeded",
            Error::FamilyMismatch => "FamilyMismatch",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
