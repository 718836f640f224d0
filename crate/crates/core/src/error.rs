use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph has {0} vertices; the configured limit is {limit}", limit = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {0} is out of range")]
    UnknownVertex(usize),
    #[error("{0} is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("subgraph must be proper")]
    NotProper,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("theorem falsified: {0}")]
    TheoremFalsified(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
