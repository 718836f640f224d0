//! The inductive colouring argument for plane graphs whose outer boundary
//! vertices have at least three colours and inner vertices at least five,
//! with one boundary edge precoloured.
//!
//! Blocks are handled one at a time from the precoloured one outwards. Inside a
//! 2-connected block the inner faces are triangulated with edges carrying empty
//! matchings, and the near-triangulation is coloured by splitting at chords of
//! the outer cycle or by reserving two colours for the last boundary vertex.
//! Any step that meets an unexpected shape gives up and returns `None`; the
//! caller then falls back on exhaustive search.

use std::collections::VecDeque;

use crate::correspondence::{Colour, CorrespondenceAssignment, PartialColouring};
use crate::graph::{Edge, Graph, VertexSet};
use crate::planarity;
use crate::plane::{restrict_rotation, trace_faces};

struct Solver<'a> {
    a: &'a CorrespondenceAssignment,
    lists: Vec<Vec<Colour>>,
    colouring: PartialColouring,
}

impl Solver<'_> {
    fn clashes(&self, u: usize, cu: Colour, w: usize, cw: Colour) -> bool {
        self.a.conflicts(u, cu, w, cw)
    }

    /// First colour of `v` compatible with its coloured neighbours in `nbrs`.
    fn colour_against(&mut self, v: usize, nbrs: &[usize]) -> bool {
        let choice = self.lists[v].iter().copied().find(|&c| {
            nbrs.iter().all(|&w| match self.colouring.get(w) {
                Some(cw) => !self.clashes(v, c, w, cw),
                None => true,
            })
        });
        match choice {
            Some(c) => {
                self.colouring.set(v, c);
                true
            }
            None => false,
        }
    }
}

/// Colours one connected component. `walk` is the boundary walk of the face
/// playing the outer face; precoloured vertices of the component are already
/// in `colouring` and lie on `walk` (at most two, adjacent if two).
pub(crate) fn colour_component(
    g: &Graph,
    rotation: &[Vec<usize>],
    comp: VertexSet,
    walk: &[usize],
    a: &CorrespondenceAssignment,
    colouring: &mut PartialColouring,
) -> Option<()> {
    let mut solver = Solver {
        a,
        lists: a.lists.clone(),
        colouring: colouring.clone(),
    };
    let pre: Vec<usize> = comp.iter().filter(|&v| solver.colouring.get(v).is_some()).collect();
    let v1 = match pre.first() {
        Some(&v) => v,
        None => {
            let v = walk[0];
            let c = *solver.lists[v].first()?;
            solver.colouring.set(v, c);
            v
        }
    };
    if comp.len() == 1 {
        *colouring = solver.colouring;
        return Some(());
    }
    let v2 = if pre.len() == 2 {
        pre[1]
    } else {
        let i = walk.iter().position(|&x| x == v1)?;
        let v2 = walk[(i + 1) % walk.len()];
        if !solver.colour_against(v2, &[v1]) {
            return None;
        }
        v2
    };
    if !g.has_edge(v1, v2) {
        return None;
    }

    let (sub, map) = g.induced_relabelled(comp);
    let blocks: Vec<Vec<Edge>> = planarity::blocks(&sub)
        .into_iter()
        .map(|b| b.into_iter().map(|e| Edge::new(map[e.0], map[e.1])).collect())
        .collect();
    let root = blocks.iter().position(|b| b.contains(&Edge::new(v1, v2)))?;
    let outer_darts: Vec<(usize, usize)> = (0..walk.len())
        .map(|i| (walk[i], walk[(i + 1) % walk.len()]))
        .collect();

    let mut done = vec![false; blocks.len()];
    let mut queue = VecDeque::from([root]);
    done[root] = true;
    while let Some(bi) = queue.pop_front() {
        solver.colour_block(g, rotation, &blocks[bi], &outer_darts)?;
        let coloured: VertexSet = solver.colouring.domain();
        for (j, b) in blocks.iter().enumerate() {
            if !done[j] && b.iter().any(|e| coloured.contains(e.0) || coloured.contains(e.1)) {
                done[j] = true;
                queue.push_back(j);
            }
        }
    }
    *colouring = solver.colouring;
    Some(())
}

impl Solver<'_> {
    fn colour_block(
        &mut self,
        g: &Graph,
        rotation: &[Vec<usize>],
        block: &[Edge],
        outer_darts: &[(usize, usize)],
    ) -> Option<()> {
        let verts: VertexSet = block.iter().flat_map(|e| [e.0, e.1]).collect();
        let coloured: Vec<usize> = verts.iter().filter(|&v| self.colouring.get(v).is_some()).collect();
        if block.len() == 1 {
            let e = block[0];
            match coloured.as_slice() {
                [c] => {
                    let w = e.other(*c);
                    return self.colour_against(w, &[*c]).then_some(());
                }
                [_, _] => return Some(()),
                _ => return None,
            }
        }
        let n = g.vertex_count();
        let bg = Graph::from_edges(n, block.iter().map(|e| (e.0, e.1))).ok()?;
        let mut rot = restrict_rotation(rotation, &bg);
        let faces: Vec<Vec<usize>> = trace_faces(&bg, &rot)
            .into_iter()
            .filter(|f| verts.contains(f[0]))
            .collect();
        let dart_on = |f: &[usize], d: (usize, usize)| {
            (0..f.len()).any(|i| f[i] == d.0 && f[(i + 1) % f.len()] == d.1)
        };
        let outer_idx = faces
            .iter()
            .position(|f| outer_darts.iter().any(|&d| bg.has_edge(d.0, d.1) && dart_on(f, d)))
            .or_else(|| {
                faces.iter().position(|f| {
                    let fs: VertexSet = f.iter().copied().collect();
                    coloured.iter().all(|&c| fs.contains(c))
                        && verts
                            .iter()
                            .filter(|&v| self.lists[v].len() < 5)
                            .all(|v| fs.contains(v) || self.colouring.get(v).is_some())
                })
            })?;
        let face = faces[outer_idx].clone();
        let marker = (face[0], face[1]);

        // the precoloured edge, extending a single precoloured vertex along the face
        let (p1, p2) = match coloured.as_slice() {
            [c] => {
                let i = face.iter().position(|x| x == c)?;
                let w = face[(i + 1) % face.len()];
                if !self.colour_against(w, &[*c]) {
                    return None;
                }
                (*c, w)
            }
            [x, y] => (*x, *y),
            _ => return None,
        };
        let cycle = oriented_from(&face, p1, p2)?;

        // triangulate inner faces
        let mut adj: Vec<u64> = (0..n).map(|v| bg.neighbours(v).0).collect();
        loop {
            let cur = Graph::from_edges(
                n,
                (0..n).flat_map(|u| VertexSet(adj[u]).iter().filter(move |&w| w > u).map(move |w| (u, w))),
            )
            .ok()?;
            let faces: Vec<Vec<usize>> = trace_faces(&cur, &rot)
                .into_iter()
                .filter(|f| verts.contains(f[0]))
                .collect();
            let Some(f) = faces
                .iter()
                .find(|f| f.len() > 3 && !dart_on(f, marker))
            else {
                break;
            };
            let m = f.len();
            let (i, j) = (0..m)
                .map(|i| (i, (i + 2) % m))
                .find(|&(i, j)| adj[f[i]] >> f[j] & 1 == 0)?;
            insert_chord(&mut rot, &mut adj, f, i, j);
        }
        self.near_triangulation(&adj, &rot, verts, cycle).then_some(())
    }

    /// Colours the interior and boundary of a near-triangulation whose outer
    /// cycle `cycle` starts with two coloured vertices.
    fn near_triangulation(
        &mut self,
        adj: &[u64],
        rot: &[Vec<usize>],
        alive: VertexSet,
        cycle: Vec<usize>,
    ) -> bool {
        let k = cycle.len();
        if k < 3 {
            return false;
        }
        let on_cycle: VertexSet = cycle.iter().copied().collect();
        if on_cycle.len() != k {
            return false;
        }
        // chord
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                if adj[cycle[i]] >> cycle[j] & 1 == 1 {
                    return self.split(adj, rot, alive, &cycle, i, j);
                }
            }
        }
        let v1 = cycle[0];
        let vk = cycle[k - 1];
        let prev = cycle[k - 2];
        let inner = alive.difference(on_cycle);
        if k == 3 && inner.is_empty() {
            return self.colour_against(vk, &[v1, prev]);
        }
        let around: Vec<usize> = rot[vk].iter().copied().filter(|&w| alive.contains(w)).collect();
        let interior_nbrs = VertexSet(adj[vk]).intersection(inner);
        let Some(us) = arc_between(&around, v1, prev, interior_nbrs) else {
            return false;
        };
        if us.is_empty() {
            return false;
        }
        let Some(c1) = self.colouring.get(v1) else {
            return false;
        };
        let spare: Vec<Colour> = self.lists[vk]
            .iter()
            .copied()
            .filter(|&c| !self.clashes(vk, c, v1, c1))
            .take(2)
            .collect();
        if spare.len() < 2 {
            return false;
        }
        let (x, y) = (spare[0], spare[1]);
        for &u in &us {
            let keep: Vec<Colour> = self.lists[u]
                .iter()
                .copied()
                .filter(|&cu| !self.clashes(vk, x, u, cu) && !self.clashes(vk, y, u, cu))
                .collect();
            self.lists[u] = keep;
        }
        let mut next: Vec<usize> = cycle[..k - 1].to_vec();
        next.extend(us.iter().rev());
        if !self.near_triangulation(adj, rot, alive.without(vk), next) {
            return false;
        }
        let Some(cp) = self.colouring.get(prev) else {
            return false;
        };
        let pick = if !self.clashes(vk, x, prev, cp) { x } else { y };
        if self.clashes(vk, pick, prev, cp) {
            return false;
        }
        self.colouring.set(vk, pick);
        true
    }

    fn split(
        &mut self,
        adj: &[u64],
        rot: &[Vec<usize>],
        alive: VertexSet,
        cycle: &[usize],
        i: usize,
        j: usize,
    ) -> bool {
        let k = cycle.len();
        let on_cycle: VertexSet = cycle.iter().copied().collect();
        let strictly_a: VertexSet = cycle[i + 1..j].iter().copied().collect();
        let strictly_b: VertexSet = cycle[j + 1..]
            .iter()
            .chain(cycle[..i].iter())
            .copied()
            .collect();
        let inner = alive.difference(on_cycle);
        let mut side_a = VertexSet::EMPTY;
        let mut side_b = VertexSet::EMPTY;
        let mut left = inner;
        while let Some(s) = left.first() {
            // component of the interior containing s
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut nb = VertexSet::EMPTY;
                for v in frontier {
                    nb = nb.union(VertexSet(adj[v]));
                }
                let nb = nb.intersection(inner).difference(comp);
                comp = comp.union(nb);
                frontier = nb;
            }
            left = left.difference(comp);
            let mut attach = VertexSet::EMPTY;
            for v in comp {
                attach = attach.union(VertexSet(adj[v]));
            }
            if !attach.intersection(strictly_a).is_empty() {
                side_a = side_a.union(comp);
            } else if !attach.intersection(strictly_b).is_empty() {
                side_b = side_b.union(comp);
            } else {
                return false;
            }
        }
        let cyc_a: Vec<usize> = cycle[i..=j].to_vec();
        let mut cyc_b: Vec<usize> = cycle[j..].to_vec();
        cyc_b.extend(&cycle[..=i]);
        let set_a: VertexSet = cyc_a.iter().copied().collect::<VertexSet>().union(side_a);
        let set_b: VertexSet = cyc_b.iter().copied().collect::<VertexSet>().union(side_b);
        if i == 0 {
            // side A holds the precoloured edge
            let mut other = vec![cycle[0]];
            other.extend(&cycle[j..]);
            self.near_triangulation(adj, rot, set_a, cyc_a)
                && self.near_triangulation(adj, rot, set_b, other)
        } else {
            let mut first: Vec<usize> = cycle[..=i].to_vec();
            first.extend(&cycle[j..k]);
            let mut other = vec![cycle[j]];
            other.extend(&cycle[i..j]);
            self.near_triangulation(adj, rot, set_b, first)
                && self.near_triangulation(adj, rot, set_a, other)
        }
    }
}

/// The face cycle rotated (and reversed if needed) to start `p1, p2`.
fn oriented_from(face: &[usize], p1: usize, p2: usize) -> Option<Vec<usize>> {
    let m = face.len();
    let i = face.iter().position(|&x| x == p1)?;
    if face[(i + 1) % m] == p2 {
        Some((0..m).map(|t| face[(i + t) % m]).collect())
    } else if face[(i + m - 1) % m] == p2 {
        Some((0..m).map(|t| face[(i + m - t) % m]).collect())
    } else {
        None
    }
}

/// The neighbours strictly between `from` and `to` around a vertex, read
/// starting next to `from`, on the side holding exactly `expected`.
fn arc_between(around: &[usize], from: usize, to: usize, expected: VertexSet) -> Option<Vec<usize>> {
    let m = around.len();
    let s = around.iter().position(|&x| x == from)?;
    for step in [1, m - 1] {
        let mut arc = Vec::new();
        let mut t = (s + step) % m;
        while around[t] != to {
            arc.push(around[t]);
            t = (t + step) % m;
            if arc.len() > m {
                return None;
            }
        }
        if arc.iter().copied().collect::<VertexSet>() == expected && arc.len() == expected.len() {
            return Some(arc);
        }
    }
    None
}

/// Adds the chord `f[i] f[j]` inside face `f`.
fn insert_chord(rot: &mut [Vec<usize>], adj: &mut [u64], f: &[usize], i: usize, j: usize) {
    let m = f.len();
    for (x, y) in [(i, j), (j, i)] {
        let v = f[x];
        let before = f[(x + m - 1) % m];
        let pos = rot[v].iter().position(|&w| w == before).expect("face neighbour");
        rot[v].insert(pos + 1, f[y]);
        adj[v] |= 1u64 << f[y];
    }
}
