//! Exact counting and construction of correspondence colourings of small
//! planar graphs, with exact-arithmetic checks of the accompanying bounds.

pub mod bounds;
pub mod canon;
pub mod corpus;
pub mod correspondence;
pub mod counting;
pub mod error;
pub mod extension;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod io;
pub mod planarity;
pub mod rational;
pub mod plane;
pub mod structure;
pub mod subgraph;
mod thomassen;

#[cfg(test)]
mod invariants;

pub use error::{Error, Result};
pub use graph::{Edge, Girth, Graph, VertexSet};
pub use plane::PlaneGraph;
pub use subgraph::Subgraph;
