use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("arity {0} exceeds the supported maximum of {max}", max = crate::boolfn::MAX_ARITY)]
    ArityTooLarge(usize),

    #[error("malformed truth table: {0}")]
    Table(String),

    #[error("function is constant; {0}")]
    DegenerateFunction(&'static str),

    #[error("the zero function has no stratified form")]
    ZeroFunction,

    #[error("function is not nested canalizing{0}")]
    NotNestedCanalizing(String),

    #[error("invalid layer structure {sizes:?}: {reason}")]
    LayerStructure { sizes: Vec<usize>, reason: &'static str },

    #[error("invalid restriction: {0}")]
    Partition(String),

    #[error("illegal placement: {0}")]
    Placement(String),

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("network error: {0}")]
    Network(String),

    #[error("cut policy cannot restrict node `{node}`: {reason}")]
    Policy { node: String, reason: String },

    #[error("graphical family error: {0}")]
    Family(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("connection contradicts the component graph: {0}")]
    Contradiction(String),

    #[error("component order violated: {0}")]
    Order(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error(transparent)]
    Parse(#[from] crate::io::ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
