use thiserror::Error;

/// What went wrong on a particular line of a graph or formula file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: i64, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(i64),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(i64, i64),
    #[error("header announces {expected} items but {found} were given")]
    CountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    /// The input does not belong to the graph class the operation requires.
    #[error("class certificate failed: {0}")]
    NotInClass(String),

    #[error("graph is disconnected ({components} components); enumeration requires a connected graph")]
    Disconnected { components: usize },

    /// Exhaustive procedures refuse inputs beyond their configured size.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("malformed extension instance: {0}")]
    MalformedInstance(String),

    #[error("degenerate formula: {0}")]
    DegenerateFormula(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rejection budget of {attempts} attempts exhausted")]
    RejectionBudget { attempts: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
