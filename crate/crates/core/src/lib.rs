//! Exact, certificate-producing algorithms for cartesian, direct and strong
//! graph products at desk scale.

pub mod bits;
pub mod classify;
pub mod decomp;
pub mod degeneracy;
pub mod error;
pub mod graph;
pub mod lowerbounds;
pub mod minors;
pub mod multipartite;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{product, Graph, GraphBuilder, ProductGraph, ProductKind};
