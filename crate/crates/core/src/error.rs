use thiserror::Error;

use crate::lattice::FaceId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incidence needs at least 2 facets, got {0}")]
    TooFewFacets(usize),
    #[error("facet {facet} references vertex {vertex} outside 0..{n_vertices}")]
    VertexOutOfRange {
        facet: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("vertex {0} lies in no facet")]
    OrphanVertex(usize),
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("facets {0} and {1} are identical")]
    DuplicateFacet(usize, usize),
    #[error("facet {inner} is contained in facet {outer}")]
    ContainedFacet { inner: usize, outer: usize },
    #[error("face count exceeds the resource guard of {limit}")]
    TooManyFaces { limit: usize },
    #[error("vertex count {count} exceeds the resource guard of {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("dimension {dim} outside the supported range {min}..={max} for {family}")]
    DimensionOutOfRange {
        family: &'static str,
        dim: usize,
        min: usize,
        max: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("face {0} does not exist")]
    UnknownFace(FaceId),
    #[error("face {0} is the bottom or top of the lattice")]
    ImproperFace(FaceId),
    #[error("lattice is not polytopal: {0}")]
    NotPolytopal(String),
    #[error("k = {k} outside 0..={max}")]
    DimensionParameter { k: usize, max: isize },
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
    #[error("polytope carries no coordinates")]
    MissingCoordinates,
    #[error("vertex set has affine dimension {dim}, exceeding the limit {limit}")]
    AffineDimensionTooLarge { dim: isize, limit: isize },
    #[error("cells {first} and {second} intersect in {intersection:?}, which is not a face of both")]
    IntersectionProperty {
        first: usize,
        second: usize,
        intersection: Vec<usize>,
    },
    #[error("invalid cell {index}: {reason}")]
    InvalidCell { index: usize, reason: String },
    #[error("complex hypothesis failed: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
