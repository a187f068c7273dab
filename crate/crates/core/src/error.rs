use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// `Parse` is the only variant produced by malformed input documents; all
/// other variants describe well-formed input that violates a domain
/// precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex identifier {0:?}")]
    InvalidId(String),
    #[error("loop edge at vertex {0}")]
    LoopEdge(String),
    #[error("edge endpoint {0} is not a vertex of the graph")]
    UnknownEndpoint(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("point {0} is not in the bare representation")]
    UnknownPoint(String),
    #[error("graphs share vertex {0}")]
    NotDisjoint(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("vertex map is not total: {0}")]
    PartialMap(String),
    #[error("point set belongs to a different graph")]
    AmbientMismatch,
    #[error("operation is undefined on the empty graph")]
    EmptyGraph,
    #[error("{what} of size {size} exceeds the cap {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },
    #[error("codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("vertex map is not a graph homomorphism")]
    NotHomomorphism,
    #[error("vertex map is not a weak graph homomorphism")]
    NotWeakHomomorphism,
    #[error("cannot identify a vertex with itself")]
    SameVertex,
    #[error("vertex name {0} is already used")]
    NameClash(String),
    #[error("edge {0} is not present at this step of the script")]
    StaleEdge(String),
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("map is not continuous")]
    NotContinuous,
    #[error("map sends a vertex to an edge")]
    NotVertexMap,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("map is not injective")]
    NotInjective,
    #[error("domain has isolated vertex {0}")]
    IsolatedVertexPresent(String),
    #[error("map is not bijective")]
    NotBijective,
    #[error("inverse map is not continuous")]
    InverseNotContinuous,
    #[error("graph has no incidence map into K_{0}")]
    NotColorable(usize),
    #[error("edge {0} is folded onto an edge at a single vertex image; no factorization exists")]
    FoldedEdge(String),
    #[error("constructed map failed verification: {0}")]
    ConstructionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
