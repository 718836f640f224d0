use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// A subgraph of some host graph, given by vertex and edge subsets in the host's ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub edges: BTreeSet<Edge>,
}

impl Subgraph {
    /// Checks only that every edge has both ends in `vertices`.
    pub fn new(vertices: VertexSet, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().map(|e| Edge::new(e.0, e.1)).collect();
        for e in &edges {
            if !vertices.contains(e.0) || !vertices.contains(e.1) {
                return Err(Error::NotSubgraph(format!("edge {e} leaves the vertex subset")));
            }
        }
        Ok(Subgraph { vertices, edges })
    }

    pub fn induced(g: &Graph, vertices: VertexSet) -> Self {
        let edges = g
            .edges()
            .filter(|e| vertices.contains(e.0) && vertices.contains(e.1))
            .collect();
        Subgraph { vertices, edges }
    }

    pub fn whole(g: &Graph) -> Self {
        Subgraph::induced(g, g.vertices())
    }

    pub fn empty() -> Self {
        Subgraph {
            vertices: VertexSet::EMPTY,
            edges: BTreeSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_within(&self, g: &Graph) -> Result<()> {
        if !self.vertices.is_subset(g.vertices()) {
            let v = self.vertices.difference(g.vertices()).first().unwrap_or(0);
            return Err(Error::NotSubgraph(format!("vertex {v} is not in the host graph")));
        }
        for e in &self.edges {
            if !self.vertices.contains(e.0) || !self.vertices.contains(e.1) {
                return Err(Error::NotSubgraph(format!("edge {e} leaves the vertex subset")));
            }
            if !g.contains_edge(*e) {
                return Err(Error::NotSubgraph(format!("edge {e} is not in the host graph")));
            }
        }
        Ok(())
    }

    pub fn is_proper_in(&self, g: &Graph) -> bool {
        self.vertices != g.vertices() || self.edges.len() != g.edge_count()
    }

    pub fn is_induced_in(&self, g: &Graph) -> bool {
        *self == Subgraph::induced(g, self.vertices)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// The subgraph as a graph on the host's vertex ids (vertices outside are isolated).
    pub fn as_graph(&self, n: usize) -> Result<Graph> {
        Graph::from_edges(n, self.edges.iter().map(|e| (e.0, e.1)))
    }

    pub fn is_connected(&self, n: usize) -> bool {
        let Some(start) = self.vertices.first() else {
            return true;
        };
        match self.as_graph(n) {
            Ok(h) => h.reachable(start, self.vertices) == self.vertices,
            Err(_) => false,
        }
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(other.vertices) && self.edges.is_subset(&other.edges)
    }
}

/// `(v(G) − v(H), e(G) − e(H))`.
pub fn diff_counts(g: &Graph, h: &Subgraph) -> Result<(usize, usize)> {
    h.check_within(g)?;
    Ok((
        g.vertex_count() - h.vertex_count(),
        g.edge_count() - h.edge_count(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn diff_counts_examples() {
        let k4 = families::complete(4).unwrap();
        assert_eq!(diff_counts(&k4, &Subgraph::whole(&k4)).unwrap(), (0, 0));
        let tri = Subgraph::induced(&k4, [0, 1, 2].into_iter().collect());
        assert_eq!(diff_counts(&k4, &tri).unwrap(), (1, 3));
        let c5 = families::cycle(5).unwrap();
        let one = Subgraph::induced(&c5, VertexSet::singleton(2));
        assert_eq!(diff_counts(&c5, &one).unwrap(), (4, 5));
    }

    #[test]
    fn rejects_foreign_edges() {
        let c5 = families::cycle(5).unwrap();
        let bad = Subgraph::new([0, 2].into_iter().collect(), [Edge(0, 2)]).unwrap();
        assert!(matches!(diff_counts(&c5, &bad), Err(Error::NotSubgraph(_))));
        assert!(Subgraph::new(VertexSet::singleton(0), [Edge(0, 1)]).is_err());
    }

    #[test]
    fn induced_flag() {
        let c5 = families::cycle(5).unwrap();
        let path = Subgraph::induced(&c5, [0, 1, 2].into_iter().collect());
        assert!(path.is_induced_in(&c5));
        let sparse = Subgraph::new(path.vertices, [Edge(0, 1)]).unwrap();
        assert!(!sparse.is_induced_in(&c5));
        assert!(sparse.is_subgraph_of(&path));
        assert!(!sparse.is_connected(5));
        assert!(path.is_connected(5));
    }
}
