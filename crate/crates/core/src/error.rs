use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String },
    #[error("not a homomorphism: {reason}")]
    NotAHomomorphism { reason: String },
    #[error("not an automorphism: {reason}")]
    NotAnAutomorphism { reason: String },
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subgroup is not normal: {reason}")]
    NotNormal { reason: String },
    #[error("subgroup is not invariant under the automorphism: {reason}")]
    NotInvariant { reason: String },
    #[error("not a subgroup: {reason}")]
    NotASubgroup { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("character computation failed: {reason}")]
    ComputationFailed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },
    #[error("no d^s = I found for s <= {max_order}")]
    NotFiniteOrder { max_order: usize },
    #[error("dimension mismatch: {reason}")]
    DimensionMismatch { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WreathError {
    #[error("elements belong to different wreath products: {reason}")]
    GroupMismatch { reason: String },
    #[error("support point {point:?} leaves the window [-{window}, {window}]^k")]
    WindowExceeded { point: Vec<i64>, window: i64 },
    #[error("closure exceeded the element budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("invalid wreath element: {reason}")]
    InvalidElement { reason: String },
    #[error("seed element is trivial or not fixed by the automorphism")]
    NotFixed,
    #[error("point {m:?} does not have an orbit of maximal length {expected} (found {found})")]
    OrbitNotMaximal { m: Vec<i64>, expected: usize, found: usize },
    #[error("invalid wreath automorphism: {reason}")]
    InvalidAutomorphism { reason: String },
    #[error("probe seed {seed}: {source}")]
    Probe { seed: String, source: Box<WreathError> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
    #[error("cycle notation {text:?}, position {position}: {message}")]
    Cycle {
        text: String,
        position: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: line {line}, column {column}: {message}")]
    Json {
        context: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
}

impl ParseError {
    pub(crate) fn invalid(context: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::Invalid {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn json(context: impl Into<String>, err: serde_json::Error) -> Self {
        ParseError::Json {
            context: context.into(),
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
