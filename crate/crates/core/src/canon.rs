//! Canonical labelling of small graphs by individualisation and refinement.
//!
//! The canonical code is the upper triangle of the relabelled adjacency matrix
//! packed into a `u128`, so graphs are limited to 16 vertices.

use crate::graph::{Graph, VertexSet};

pub const MAX_CANON_VERTICES: usize = 16;

type Partition = Vec<VertexSet>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    'outer: loop {
        for w in 0..cells.len() {
            let splitter = cells[w];
            for x in 0..cells.len() {
                let cell = cells[x];
                if cell.len() < 2 {
                    continue;
                }
                let mut by_count: Vec<(usize, VertexSet)> = Vec::new();
                for v in cell {
                    let c = g.neighbours(v).intersection(splitter).len();
                    match by_count.iter_mut().find(|(k, _)| *k == c) {
                        Some((_, s)) => s.insert(v),
                        None => by_count.push((c, VertexSet::singleton(v))),
                    }
                }
                if by_count.len() > 1 {
                    by_count.sort_by_key(|(k, _)| *k);
                    cells.splice(x..=x, by_count.into_iter().map(|(_, s)| s));
                    continue 'outer;
                }
            }
        }
        return cells;
    }
}

fn code_of(g: &Graph, label: &[usize]) -> u128 {
    let mut code = 0u128;
    for e in g.edges() {
        let (i, j) = (label[e.0].min(label[e.1]), label[e.0].max(label[e.1]));
        code |= 1u128 << (j * (j - 1) / 2 + i);
    }
    code
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<usize>, Vec<usize>, u128)>,
    best: Option<(Vec<usize>, u128)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to unwind to when an automorphism prunes the branch.
    fn visit(&mut self, cells: Partition, seq: &mut Vec<usize>) -> usize {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, seq);
        };
        let depth = seq.len();
        let mut tried = VertexSet::EMPTY;
        for v in cells[target] {
            if self.same_orbit(seq, tried, v) {
                continue;
            }
            tried.insert(v);
            let mut child = cells.clone();
            child.splice(
                target..=target,
                [VertexSet::singleton(v), cells[target].without(v)],
            );
            let child = refine(self.g, child);
            seq.push(v);
            let back = self.visit(child, seq);
            seq.pop();
            if back < depth {
                return back;
            }
        }
        depth
    }

    fn leaf(&mut self, cells: &Partition, seq: &[usize]) -> usize {
        let n = self.g.vertex_count();
        let mut label = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            label[c.first().expect("discrete cell")] = i;
        }
        let code = code_of(self.g, &label);
        let Some((first_label, first_seq, first_code)) = &self.first else {
            self.first = Some((label.clone(), seq.to_vec(), code));
            self.best = Some((label, code));
            return seq.len();
        };
        if code == *first_code {
            let common = first_seq.iter().zip(seq).take_while(|(a, b)| a == b).count();
            let first_label = first_label.clone();
            self.record(first_label, &label);
            return common;
        }
        let (best_label, best_code) = self.best.as_ref().expect("set with first");
        if code == *best_code {
            let best_label = best_label.clone();
            self.record(best_label, &label);
        } else if code > *best_code {
            self.best = Some((label, code));
        }
        seq.len()
    }

    /// Stores the automorphism sending `v` to the vertex with the same label under `target`.
    fn record(&mut self, target: Vec<usize>, label: &[usize]) {
        let n = label.len();
        let mut inv = vec![0; n];
        for (v, &l) in target.iter().enumerate() {
            inv[l] = v;
        }
        let gamma: Vec<usize> = (0..n).map(|v| inv[label[v]]).collect();
        if gamma.iter().enumerate().any(|(i, &x)| i != x) {
            self.automorphisms.push(gamma);
        }
    }

    /// Whether `v` lies in the orbit of some vertex of `tried` under the
    /// automorphisms found so far that fix `seq` pointwise.
    fn same_orbit(&self, seq: &[usize], tried: VertexSet, v: usize) -> bool {
        if tried.is_empty() {
            return false;
        }
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| seq.iter().all(|&s| a[s] == s))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut orbit = VertexSet::singleton(v);
        let mut frontier = orbit;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for x in frontier {
                for a in &gens {
                    if !orbit.contains(a[x]) {
                        next.insert(a[x]);
                    }
                }
            }
            orbit = orbit.union(next);
            frontier = next;
        }
        !orbit.intersection(tried).is_empty()
    }
}

/// The canonical labelling `label[v]` and the resulting code.
pub fn canonical_labelling(g: &Graph) -> (Vec<usize>, u128) {
    let n = g.vertex_count();
    assert!(n <= MAX_CANON_VERTICES, "canonical form needs at most 16 vertices");
    if n == 0 {
        return (Vec::new(), 0);
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let start = refine(g, vec![g.vertices()]);
    search.visit(start, &mut Vec::new());
    search.best.expect("at least one leaf")
}

/// An isomorphism invariant that is complete for graphs with the same vertex count.
pub fn canonical_code(g: &Graph) -> u128 {
    canonical_labelling(g).1
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labelling(g).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [
            families::petersen(),
            families::wheel(6).unwrap(),
            families::grid(3, 3).unwrap(),
            families::icosahedron(),
            Graph::empty(9).unwrap(),
            Graph::from_edges(10, (1..10).map(|i| (0, i))).unwrap(),
        ] {
            let code = canonical_code(&g);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_code(&g.permuted(&perm)), code);
            }
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        let c6 = families::cycle(6).unwrap();
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_code(&c6), canonical_code(&two_triangles));
        let p4 = families::path(4).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&p4), canonical_code(&star));
    }

    #[test]
    fn canonical_form_is_isomorphic() {
        let g = families::wheel(5).unwrap();
        let c = canonical_form(&g);
        assert_eq!(c.edge_count(), g.edge_count());
        assert_eq!(canonical_code(&c), canonical_code(&g));
    }
}
