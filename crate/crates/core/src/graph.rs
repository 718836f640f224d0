//! Simple graphs on a bounded number of vertices.
//!
//! Vertices are the integers `0..n`; adjacency is a `u64` bitmask per vertex,
//! which caps graphs at [`MAX_VERTICES`]. Every verification in this crate is
//! desk scale, so the cap is never the limiting factor in practice.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// An undirected edge, stored with its endpoints in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn other(self, x: usize) -> usize {
        if x == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

/// A set of vertex ids, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Girth of a graph, edge or vertex. `Infinite` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        write!(f, "])")
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds `ab`; repeated edges are absorbed, loops are rejected.
    pub(crate) fn insert_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n {
            return Err(Error::UnknownVertex(a));
        }
        if b >= self.n {
            return Err(Error::UnknownVertex(b));
        }
        if a == b {
            return Err(Error::Loop(a));
        }
        self.adj[a] |= 1u64 << b;
        self.adj[b] |= 1u64 << a;
        Ok(())
    }

    pub(crate) fn delete_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1u64 << b);
        self.adj[b] &= !(1u64 << a);
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.insert_edge(a, b)?;
        Ok(g)
    }

    pub fn without_edge(&self, e: Edge) -> Graph {
        let mut g = self.clone();
        g.delete_edge(e.0, e.1);
        g
    }

    /// Same vertex ids, with every edge at `v` removed.
    pub fn isolate(&self, v: usize) -> Graph {
        let mut g = self.clone();
        for w in self.neighbours(v) {
            g.delete_edge(v, w);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1))
                .iter()
                .map(move |v| Edge(u, v))
        })
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable(0, self.vertices()) == self.vertices()
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reachable(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v];
            }
            let next = VertexSet(next).intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.reachable(v, within);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// Induced subgraph relabelled to `0..|set|`, with the map from new ids to old ones.
    pub fn induced_relabelled(&self, set: VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = set.iter().collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u64; map.len()];
        for (i, &v) in map.iter().enumerate() {
            for w in VertexSet(self.adj[v]).intersection(set) {
                adj[i] |= 1u64 << index[w];
            }
        }
        (
            Graph {
                n: map.len(),
                adj,
            },
            map,
        )
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for e in self.edges() {
            g.adj[perm[e.0]] |= 1u64 << perm[e.1];
            g.adj[perm[e.1]] |= 1u64 << perm[e.0];
        }
        g
    }

    /// Adds a new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        let mut g = Graph::empty(self.n + 1)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        for w in nbrs {
            g.insert_edge(self.n, w)?;
        }
        Ok(g)
    }

    /// Shortest path length from `a` to `b`, ignoring the edge `skip` if given.
    fn distance(&self, a: usize, b: usize, skip: Option<Edge>) -> Option<usize> {
        let mut dist = [usize::MAX; MAX_VERTICES];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbours(u) {
                if skip == Some(Edge::new(u, w)) || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[u] + 1;
                if w == b {
                    return Some(dist[w]);
                }
                queue.push_back(w);
            }
        }
        None
    }
}

/// Length of a shortest cycle; `Infinite` for forests.
pub fn girth(g: &Graph) -> Girth {
    let mut best = Girth::Infinite;
    for root in 0..g.vertex_count() {
        let mut dist = [usize::MAX; MAX_VERTICES];
        let mut parent = [usize::MAX; MAX_VERTICES];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(Girth::Finite(dist[u] + dist[w] + 1));
                }
            }
        }
    }
    best
}

/// Length of a shortest cycle through `e`.
pub fn edge_girth(g: &Graph, e: Edge) -> Result<Girth> {
    if !g.contains_edge(e) {
        return Err(Error::UnknownEdge(e));
    }
    Ok(match g.distance(e.0, e.1, Some(e)) {
        Some(d) => Girth::Finite(d + 1),
        None => Girth::Infinite,
    })
}

/// Length of a shortest cycle through `v`.
pub fn vertex_girth(g: &Graph, v: usize) -> Result<Girth> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let mut best = Girth::Infinite;
    for w in g.neighbours(v) {
        best = best.min(edge_girth(g, Edge::new(v, w))?);
    }
    Ok(best)
}

pub fn is_independent(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| g.neighbours(v).intersection(s).is_empty())
}

/// `|N(v) ∩ s|`.
pub fn neighbours_in(g: &Graph, v: usize, s: VertexSet) -> usize {
    g.neighbours(v).intersection(s).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn pendant_triangle() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&families::cycle(3).unwrap()), Girth::Finite(3));
        assert_eq!(girth(&families::path(4).unwrap()), Girth::Infinite);
        assert_eq!(girth(&families::petersen()), Girth::Finite(5));
        assert_eq!(girth(&families::dodecahedron()), Girth::Finite(5));
        assert_eq!(girth(&families::grid(3, 3).unwrap()), Girth::Finite(4));
    }

    #[test]
    fn edge_girth_examples() {
        let g = pendant_triangle();
        assert_eq!(edge_girth(&g, Edge(0, 1)).unwrap(), Girth::Finite(3));
        assert_eq!(edge_girth(&g, Edge(2, 3)).unwrap(), Girth::Infinite);
        assert!(matches!(edge_girth(&g, Edge(0, 3)), Err(Error::UnknownEdge(_))));
        // 4-cycle with chord 0-2
        let c = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(edge_girth(&c, Edge(0, 2)).unwrap(), Girth::Finite(3));
    }

    #[test]
    fn vertex_girth_examples() {
        let w5 = families::wheel(5).unwrap();
        assert_eq!(vertex_girth(&w5, 0).unwrap(), Girth::Finite(3));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(vertex_girth(&star, 2).unwrap(), Girth::Infinite);
        assert_eq!(vertex_girth(&families::cycle(5).unwrap(), 3).unwrap(), Girth::Finite(5));
    }

    #[test]
    fn independence_and_neighbour_counts() {
        let c6 = families::cycle(6).unwrap();
        assert!(is_independent(&c6, [0, 2, 4].into_iter().collect()));
        assert!(!is_independent(&c6, [0, 1].into_iter().collect()));
        assert!(is_independent(&c6, VertexSet::EMPTY));

        let w5 = families::wheel(5).unwrap();
        let rim: VertexSet = (1..=5).collect();
        assert_eq!(neighbours_in(&w5, 0, rim), 5);
        let isolated = Graph::empty(3).unwrap();
        assert_eq!(neighbours_in(&isolated, 1, VertexSet::full(3)), 0);
        let k4 = families::complete(4).unwrap();
        assert_eq!(neighbours_in(&k4, 0, [1, 2, 3].into_iter().collect()), 3);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::Loop(1))));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::UnknownVertex(3))));
        assert!(matches!(Graph::empty(65), Err(Error::TooManyVertices(65))));
    }

    #[test]
    fn induced_relabelling_keeps_structure() {
        let w5 = families::wheel(5).unwrap();
        let rim: VertexSet = (1..=5).collect();
        let (c, map) = w5.induced_relabelled(rim);
        assert_eq!(map, vec![1, 2, 3, 4, 5]);
        assert_eq!(c.edge_count(), 5);
        assert_eq!(girth(&c), Girth::Finite(5));
    }
}
