use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("malformed tile: {0}")]
    MalformedTile(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("undefined image for {0}")]
    UndefinedImage(String),
    #[error("malformed permutation step: {0}")]
    MalformedStep(String),
    #[error("permutation steps do not chain at step {0}")]
    NonChaining(usize),
    #[error("paths have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("paths have different endpoints")]
    EndpointMismatch,
    #[error("cells cannot be composed: {0}")]
    CompositionMismatch(String),
    #[error("invalid tile witness: {0}")]
    InvalidWitness(String),
    #[error("middle comonoids differ")]
    MiddleMismatch,
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("composite failed certification: {0}")]
    Certification(String),
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unbound atom `{0}`")]
    UnboundAtom(String),
    #[error("ill-formed proof: {0}")]
    IllFormedProof(String),
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
