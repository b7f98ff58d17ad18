use thiserror::Error;

/// Errors raised while building graphs or evaluating walk quantities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not simple: edge {{{0}, {1}}} is a loop or a repeated edge")]
    NotSimple(usize, usize),
    #[error("vertex {0} is out of range")]
    InvalidVertex(usize),
    #[error("graph is not regular")]
    NotRegular,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("block to be eliminated is singular (condition number {0:e})")]
    SingularBlock(f64),
    #[error("marked set is empty")]
    EmptyMarkedSet,
    #[error("every vertex is marked")]
    FullMarkedSet,
    #[error("operation needs exactly one marked vertex, got {0}")]
    NotSingleMarked(usize),
    #[error("anchor vertex {0} is not marked")]
    AnchorNotMarked(usize),
    #[error("graph is bipartite and has no odd cycle")]
    BipartiteNoOddCycle,
    #[error("spanning structure has no odd unicyclic subgraph for a non-bipartite graph")]
    MissingOddUnicyclic,
    #[error("basis lives in {0}, expected an edge-space kernel basis")]
    WrongSpaceTag(String),
    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,
    #[error("permutation does not fix the marked set")]
    DoesNotFixS,
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("time horizon must be at least 1")]
    InvalidHorizon,
    #[error("empty collection")]
    EmptyCollection,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
