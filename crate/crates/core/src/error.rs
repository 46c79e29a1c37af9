use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("multiplicity must be a positive integer, got `{0}`")]
    BadMultiplicity(String),
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {0}-{1} with multiplicity zero")]
    ZeroMultiplicity(usize, usize),
    #[error("vertex {0} is not in the subset")]
    NotInSubset(usize),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid tree-layout: {0}")]
    InvalidTreeLayout(String),
    #[error("graph has {n} vertices, above the limit of {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("cannot apply {step}: {reason}")]
    StepPrecondition { step: String, reason: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("index {index} out of range for family {family}")]
    IndexOutOfRange { family: String, index: usize },
    #[error("obstruction set for k = {0} is not available (obs_3 is infinite; only k in {{1, 2}} is finite and known)")]
    UnsupportedObstructionSet(u32),
    #[error("reduction needs an even number of vertices, got {0}")]
    OddOrder(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

impl Error {
    /// True when the failure means "could not decide within the configured limits".
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::SizeLimit { .. })
    }
}
