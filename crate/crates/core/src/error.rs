use thiserror::Error;

/// Errors raised by parsing, validation and the bounded searches.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("item index {item} out of range for {m} items")]
    ItemOutOfRange { item: usize, m: usize },

    #[error("agent index {agent} out of range for {n} agents")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("bundle index {bundle} out of range for {n} bundles")]
    BundleOutOfRange { bundle: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("coloring uses {colors} colors but only {bundles} bundles are available")]
    TooManyColors { colors: usize, bundles: usize },

    #[error("group structure does not match the instance: {0}")]
    StructureMismatch(String),

    #[error("search space of {space} exceeds the guard of {guard}")]
    SearchSpaceTooLarge { space: f64, guard: f64 },

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("invalid item order: {0}")]
    InvalidOrder(String),
}

pub type Result<T> = std::result::Result<T, Error>;
