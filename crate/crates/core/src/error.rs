use thiserror::Error;

/// Errors produced by graph construction, ordering arithmetic and the
/// various constructions and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {0} is a loop on vertex {1}")]
    LoopEdge(usize, usize),
    #[error("edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {0} is not in the graph")]
    EdgeNotInGraph(usize),
    #[error("forward distance requested between an edge and itself ({0})")]
    SameEdge(usize),
    #[error("orderings share edge {0}")]
    OverlappingEdges(usize),
    #[error("edge set is not a matching: edges {0} and {1} share a vertex")]
    NotMatching(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("search cap exceeded: {0}")]
    SearchCapExceeded(String),
    #[error("cannot decompose into {requested} matchings (chromatic index is {chromatic})")]
    TooFewClasses { requested: usize, chromatic: usize },
    #[error("search budget exceeded; cms lies in [{lo}, {hi}]")]
    BudgetExceeded { lo: usize, hi: usize },
    #[error("invalid cms hint {0}")]
    InvalidHint(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph is not 2-regular")]
    NotTwoRegular,
    #[error("graph too small: n = {0}, need at least {1}")]
    TooSmall(usize, usize),
    #[error("(P1) violated: x = {x}, w = {w}, y = {y}, floor(m/c) = {cap}")]
    P1Violated { x: usize, w: usize, y: usize, cap: usize },
    #[error("semipartition growth stuck at step {step}: {reason}")]
    GrowthStuck { step: usize, reason: String },
    #[error("randomized construction failed after {attempts} attempts (best x = {best_x}, w = {best_w})")]
    RetriesExhausted { attempts: usize, best_x: usize, best_w: usize },
    #[error("partition invalid: {0}")]
    PartitionInvalid(String),
    #[error("cycle length {0} is below 3")]
    LengthTooSmall(usize),
    #[error("k = {0} is too small")]
    KTooSmall(usize),
    #[error("k = {0} must be odd")]
    KEven(usize),
    #[error("random graph generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("construction postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
