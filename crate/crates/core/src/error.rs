use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed complex document: {0}")]
    MalformedComplex(String),
    #[error("facet {facet:?} references vertex {vertex} but the complex has {count} vertices")]
    VertexOutOfRange {
        facet: Vec<u64>,
        vertex: u64,
        count: usize,
    },
    #[error("empty facet at position {0}")]
    EmptyFacet(usize),
    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceIndexOutOfRange { index: usize, dim: usize },
    #[error("face maps are undefined on dimension 0")]
    ZeroDimensionalFace,
    #[error("permutation of {perm} points cannot act on a tuple of {tuple} vertices")]
    PermutationSizeMismatch { perm: usize, tuple: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{what} requires {scalars} scalars to match {chains} chains")]
    LengthMismatch {
        what: &'static str,
        scalars: usize,
        chains: usize,
    },
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("simplex {0:?} is not supported on a face of the complex")]
    NotInComplex(Vec<u32>),
    #[error("chain of dimension {0} is not a cycle")]
    NotACycle(usize),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("linear program: {0}")]
    Lp(#[from] crate::l1opt::LpError),
    #[error(
        "semi-norm mismatch: plain {}, normalised {}",
        crate::rational::format_q(&.0.seminorm),
        crate::rational::format_q(&.0.normalised_seminorm)
    )]
    SeminormMismatch(Box<crate::l1opt::NormReport>),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
