use thiserror::Error;

use crate::face::Face;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("vertex count {0} exceeds the supported maximum of {max}", max = Face::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} is outside 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("complexes live on different vertex sets ({left} vs {right} vertices)")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("a face subset may not contain the empty face")]
    EmptyFaceInSubset,
    #[error("face set is not downward closed: {0} is missing")]
    NotDownwardClosed(Face),
    #[error("not a subcomplex: {0} is missing from the ambient complex")]
    NotASubcomplex(Face),
    #[error("face {0} of Z is not in the intersection K1 ∩ K2")]
    SubsetOutsideIntersection(Face),
    #[error("connected sum hypothesis violated: {0} lies in O(Z) but not in K1 ∩ K2")]
    ConnectedSumHypothesis(Face),

    #[error("polytope dimension must be positive")]
    ZeroDimension,
    #[error("inequality {index} has {found} coefficients, expected {expected}")]
    CoefficientCount { index: usize, expected: usize, found: usize },
    #[error("inequality {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope too large for exhaustive vertex enumeration (dimension {dim}, {inequalities} inequalities)")]
    PolytopeTooLarge { dim: usize, inequalities: usize },
    #[error("polytope is not simple: vertex {vertex} lies on {active} hyperplanes")]
    NotSimple { vertex: String, active: usize },
    #[error("cut normal must be a nonzero primitive integer vector")]
    NonPrimitiveCut,
    #[error("cut is not generic: {0}")]
    NonGenericCut(String),
    #[error("{labels} labels supplied for {inequalities} inequalities")]
    LabelCountMismatch { labels: usize, inequalities: usize },
    #[error("facet labels must be positive")]
    NonPositiveLabel,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("degree bound {d_max} is below the requested homological degree {p_max}")]
    DegreeBoundTooSmall { d_max: usize, p_max: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
}
