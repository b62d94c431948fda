use thiserror::Error;

/// Everything that can go wrong while building digraphs, parsing labelings,
/// or solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("digraph order must be positive")]
    EmptyDigraph,
    #[error("directed cycle needs at least 2 vertices, got {0}")]
    CycleOrder(usize),
    #[error("directed path needs at least 1 vertex")]
    PathOrder,
    #[error("self-loop at vertex {0} is not allowed in a simple digraph")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("arc endpoint {vertex} out of range for order {order}")]
    ArcOutOfRange { vertex: usize, order: usize },
    #[error("cycle factor must have at least 2 vertices, got {0}")]
    FactorTooSmall(usize),
    #[error("labeling covers {got} vertices but the digraph has {expected}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("label {value} at vertex {vertex} is outside {{0, 1, 2}}")]
    LabelOutOfRange { vertex: usize, value: u8 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{op} applies only to {expected} products")]
    WrongProductKind {
        op: &'static str,
        expected: &'static str,
    },
    #[error("{what} cap exceeded: {requested} > {limit} (raise with {flag})")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
        flag: &'static str,
    },
    #[error("construction {construction} produced an invalid labeling for {instance}: {reason}")]
    ConstructionFailed {
        construction: String,
        instance: String,
        reason: String,
    },
    #[error("no solver accepted the instance: {0}")]
    SolversRefused(String),
    #[error("solver produced an invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("{0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
