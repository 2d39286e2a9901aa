//! Face lattices, skeleton graphs and exact vertex connectivity for convex
//! polytopes and polyhedral complexes.

pub mod complexes;
pub mod connectivity;
pub mod constructors;
pub mod error;
pub mod io;
pub mod lab;
pub mod lattice;
pub mod rational;
pub mod skeletons;
pub mod vertex_set;

pub use error::{Error, Result};
pub use lattice::{build_lattice, FaceId, FaceLattice, IncidenceMatrix};
pub use skeletons::SkeletonGraph;
pub use vertex_set::VertexSet;
