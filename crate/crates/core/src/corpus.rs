//! Exhaustive small-graph corpora up to isomorphism.
//!
//! Graphs are grown one vertex at a time. For a property closed under vertex
//! deletion every graph on `n` vertices arises from one on `n - 1` vertices,
//! so filtering each level and deduplicating by canonical code is complete.

use std::collections::HashSet;

use crate::canon::{canonical_code, canonical_form, MAX_CANON_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{girth, Girth, Graph, VertexSet};
use crate::planarity;

/// All graphs on `1..=max_n` vertices satisfying the hereditary `keep`, one
/// canonical representative per isomorphism class; `levels[n - 1]` holds order `n`.
pub fn hereditary_levels<F>(max_n: usize, keep: F) -> Result<Vec<Vec<Graph>>>
where
    F: Fn(&Graph) -> bool,
{
    if max_n > MAX_CANON_VERTICES {
        return Err(Error::TooManyVertices(max_n));
    }
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    let mut current = vec![Graph::empty(0)?];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &current {
            for mask in 0..(1u64 << (n - 1)) {
                let h = g.with_vertex(VertexSet(mask))?;
                if !keep(&h) {
                    continue;
                }
                let code = canonical_code(&h);
                if seen.insert(code) {
                    next.push((code, canonical_form(&h)));
                }
            }
        }
        next.sort_by_key(|(c, _)| *c);
        current = next.into_iter().map(|(_, g)| g).collect();
        levels.push(current.clone());
    }
    Ok(levels)
}

pub fn planar_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    hereditary_levels(max_n, planarity::is_planar)
}

pub fn has_girth_at_least(g: &Graph, k: usize) -> bool {
    match girth(g) {
        Girth::Infinite => true,
        Girth::Finite(x) => x >= k,
    }
}

pub fn planar_girth5_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    hereditary_levels(max_n, |g| has_girth_at_least(g, 5) && planarity::is_planar(g))
}

pub fn outerplanar_girth5_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    hereditary_levels(max_n, |g| has_girth_at_least(g, 5) && planarity::is_outerplanar(g))
}

pub fn connected(levels: &[Vec<Graph>]) -> Vec<Graph> {
    levels
        .iter()
        .flatten()
        .filter(|g| g.is_connected())
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_graphs_small_orders() {
        let levels = hereditary_levels(5, |_| true).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
        let connected5 = levels[4].iter().filter(|g| g.is_connected()).count();
        assert_eq!(connected5, 21);
    }

    #[test]
    fn planar_counts() {
        let levels = planar_graphs(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 33, 142]);
        let conn: Vec<usize> = levels
            .iter()
            .map(|l| l.iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 20, 99]);
    }
}
