use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ordering has {got} entries but the digraph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    InvalidOrdering(String),

    #[error("vertex {vertex} is out of range for a digraph on {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("{what}: size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("digraph is not semi-complete")]
    NotSemicomplete,

    #[error("digraph is not a tournament")]
    NotTournament,

    #[error("source and sink sets overlap at vertex {0}")]
    OverlappingTerminals(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("formula is empty after preprocessing (trivially NAE-satisfiable)")]
    EmptyFormula,

    #[error("assignment does not NAE-satisfy the formula (clause {0})")]
    NotNaeSatisfying(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
