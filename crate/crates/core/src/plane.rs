//! Plane graphs as rotation systems with a designated outer face.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    outer: usize,
}

/// Traces the faces of a rotation system. A face is the vertex sequence of its
/// boundary walk; the dart `u → v` is followed by `v → w` where `w` comes right
/// after `u` in the rotation at `v`. Isolated vertices give a face `[v]`.
pub fn trace_faces(graph: &Graph, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let pos: Vec<HashMap<usize, usize>> = rotation
        .iter()
        .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
        .collect();
    let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..n {
        if rotation[u].is_empty() {
            faces.push(vec![u]);
            continue;
        }
        for i in 0..rotation[u].len() {
            if used[u][i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut ai) = (u, i);
            while !used[a][ai] {
                used[a][ai] = true;
                walk.push(a);
                let b = rotation[a][ai];
                let back = pos[b][&a];
                let bi = (back + 1) % rotation[b].len();
                a = b;
                ai = bi;
            }
            faces.push(walk);
        }
    }
    faces
}

/// True when `walk` equals `face` up to cyclic shift and reversal.
pub fn same_cyclic_walk(face: &[usize], walk: &[usize]) -> bool {
    if face.len() != walk.len() {
        return false;
    }
    if face.is_empty() {
        return true;
    }
    let n = face.len();
    let rev: Vec<usize> = walk.iter().rev().copied().collect();
    (0..n).any(|s| {
        (0..n).all(|i| face[(s + i) % n] == walk[i]) || (0..n).all(|i| face[(s + i) % n] == rev[i])
    })
}

impl PlaneGraph {
    /// Validates the rotation against the graph and the Euler relation, then
    /// designates the traced face matching `outer_face`.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, outer_face: &[usize]) -> Result<Self> {
        let faces = Self::validated_faces(&graph, &rotation)?;
        let outer = faces
            .iter()
            .position(|f| same_cyclic_walk(f, outer_face))
            .ok_or_else(|| {
                Error::InvalidEmbedding(format!(
                    "outer face {outer_face:?} is not one of the {} traced faces",
                    faces.len()
                ))
            })?;
        Ok(PlaneGraph {
            graph,
            rotation,
            faces,
            outer,
        })
    }

    /// As [`PlaneGraph::new`], taking the longest traced face (first on ties) as outer.
    pub fn with_longest_outer(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let faces = Self::validated_faces(&graph, &rotation)?;
        let mut outer = 0;
        for (i, f) in faces.iter().enumerate() {
            if f.len() > faces[outer].len() {
                outer = i;
            }
        }
        Ok(PlaneGraph {
            graph,
            rotation,
            faces,
            outer,
        })
    }

    fn validated_faces(graph: &Graph, rotation: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
        let n = graph.vertex_count();
        if rotation.len() != n {
            return Err(Error::InvalidEmbedding(format!(
                "rotation covers {} vertices, graph has {n}",
                rotation.len()
            )));
        }
        for (v, r) in rotation.iter().enumerate() {
            let set: VertexSet = r.iter().copied().filter(|&w| w < n).collect();
            if set.len() != r.len() || set != graph.neighbours(v) {
                return Err(Error::InvalidEmbedding(format!(
                    "rotation at {v} is not a cyclic order of its neighbours"
                )));
            }
        }
        let faces = trace_faces(graph, rotation);
        for comp in graph.components() {
            let v = comp.len() as i64;
            let e = comp.iter().map(|x| graph.degree(x)).sum::<usize>() as i64 / 2;
            let f = faces.iter().filter(|f| comp.contains(f[0])).count() as i64;
            if v - e + f != 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "component {comp:?}: v - e + f = {v} - {e} + {f} = {}, expected 2",
                    v - e + f
                )));
            }
        }
        Ok(faces)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.faces[self.outer]
    }

    pub fn outer_index(&self) -> usize {
        self.outer
    }

    pub fn outer_vertices(&self) -> VertexSet {
        self.outer_face().iter().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// A copy designating face `index` as outer.
    pub fn with_outer_index(&self, index: usize) -> Result<PlaneGraph> {
        if index >= self.faces.len() {
            return Err(Error::InvalidArgument(format!("no face {index}")));
        }
        let mut pg = self.clone();
        pg.outer = index;
        Ok(pg)
    }

    /// The neighbour after `u` in the rotation at `v`.
    pub fn next_around(&self, v: usize, u: usize) -> usize {
        let r = &self.rotation[v];
        let i = r.iter().position(|&w| w == u).expect("not a neighbour");
        r[(i + 1) % r.len()]
    }

    /// The neighbour before `u` in the rotation at `v`.
    pub fn prev_around(&self, v: usize, u: usize) -> usize {
        let r = &self.rotation[v];
        let i = r.iter().position(|&w| w == u).expect("not a neighbour");
        r[(i + r.len() - 1) % r.len()]
    }
}

/// Restricts a rotation system to the subgraph `h` (same vertex ids).
pub fn restrict_rotation(rotation: &[Vec<usize>], h: &Graph) -> Vec<Vec<usize>> {
    rotation
        .iter()
        .enumerate()
        .map(|(v, r)| r.iter().copied().filter(|&w| h.has_edge(v, w)).collect())
        .collect()
}
