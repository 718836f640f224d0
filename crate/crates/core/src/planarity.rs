//! Planarity testing and embedding by path addition (Demoucron, Malgrange and
//! Pertuiset). Only used to build corpora and embed the named solids; ingested
//! embeddings are validated, never searched for.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Edge, Graph, VertexSet, MAX_VERTICES};
use crate::plane::{restrict_rotation, trace_faces, PlaneGraph};

/// Edge sets of the biconnected blocks (bridges are singleton blocks).
pub fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: [usize; MAX_VERTICES],
        low: [usize; MAX_VERTICES],
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for w in s.g.neighbours(u) {
            if s.disc[w] == 0 {
                s.stack.push(Edge::new(u, w));
                dfs(s, w, u);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == Edge::new(u, w) {
                            break;
                        }
                    }
                    block.sort();
                    s.out.push(block);
                }
            } else if w != parent && s.disc[w] < s.disc[u] {
                s.stack.push(Edge::new(u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = State {
        g,
        disc: [0; MAX_VERTICES],
        low: [0; MAX_VERTICES],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.vertex_count() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

struct Face {
    walk: Vec<usize>,
    set: VertexSet,
}

impl Face {
    fn new(walk: Vec<usize>) -> Self {
        let set = walk.iter().copied().collect();
        Face { walk, set }
    }
}

/// Faces of a planar embedding of a 2-connected graph, or `None` if non-planar.
fn embed_block(b: &Graph, verts: VertexSet) -> Option<Vec<Vec<usize>>> {
    // initial cycle through the first edge
    let e0 = b.edges().next()?;
    let mut prev = [usize::MAX; MAX_VERTICES];
    let mut queue = VecDeque::from([e0.1]);
    prev[e0.1] = e0.1;
    while let Some(u) = queue.pop_front() {
        for w in b.neighbours(u) {
            if prev[w] == usize::MAX && Edge::new(u, w) != e0 {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut cycle = vec![e0.0];
    let mut x = e0.0;
    while x != e0.1 {
        x = prev[x];
        cycle.push(x);
    }
    let mut h_verts: VertexSet = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<Edge> = (0..cycle.len())
        .map(|i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect();
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![Face::new(cycle), Face::new(rev)];
    let total = b.edge_count();

    while h_edges.len() < total {
        // fragments: (attachments, path between two attachments)
        let mut best: Option<(usize, VertexSet, Vec<usize>)> = None;
        let mut best_count = usize::MAX;
        let mut consider = |attach: VertexSet, path: Vec<usize>, faces: &[Face]| -> bool {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&i| attach.is_subset(faces[i].set))
                .collect();
            if admissible.is_empty() {
                return false;
            }
            if admissible.len() < best_count {
                best_count = admissible.len();
                best = Some((admissible[0], attach, path));
            }
            true
        };
        for e in b.edges() {
            if !h_edges.contains(&e) && h_verts.contains(e.0) && h_verts.contains(e.1) {
                let attach = VertexSet::singleton(e.0).with(e.1);
                if !consider(attach, vec![e.0, e.1], &faces) {
                    return None;
                }
            }
        }
        let outside = verts.difference(h_verts);
        for comp in b.components_within(outside) {
            let mut attach = VertexSet::EMPTY;
            for v in comp {
                attach = attach.union(b.neighbours(v).intersection(h_verts));
            }
            let a = attach.first()?;
            let path = fragment_path(b, comp, attach, a)?;
            if !consider(attach, path, &faces) {
                return None;
            }
        }
        let (fi, _, path) = best?;
        let face = faces.swap_remove(fi);
        let (f1, f2) = split_face(&face.walk, &path);
        faces.push(Face::new(f1));
        faces.push(Face::new(f2));
        for w in path.windows(2) {
            h_edges.insert(Edge::new(w[0], w[1]));
        }
        for &v in &path {
            h_verts.insert(v);
        }
    }
    Some(faces.into_iter().map(|f| f.walk).collect())
}

/// A path from attachment `a` through `comp` to a different attachment.
fn fragment_path(b: &Graph, comp: VertexSet, attach: VertexSet, a: usize) -> Option<Vec<usize>> {
    let mut prev = [usize::MAX; MAX_VERTICES];
    let mut queue = VecDeque::new();
    for k in b.neighbours(a).intersection(comp) {
        prev[k] = a;
        queue.push_back(k);
    }
    while let Some(k) = queue.pop_front() {
        if let Some(end) = b.neighbours(k).intersection(attach.without(a)).first() {
            let mut path = vec![end, k];
            let mut x = k;
            while prev[x] != a {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return Some(path);
        }
        for w in b.neighbours(k).intersection(comp) {
            if prev[w] == usize::MAX {
                prev[w] = k;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Splits the face cycle along `path` (whose ends lie on the face).
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = face.len();
    let a = path[0];
    let b = *path.last().expect("non-empty path");
    let pa = face.iter().position(|&v| v == a).expect("attachment on face");
    let pb = face.iter().position(|&v| v == b).expect("attachment on face");
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = pa;
    loop {
        f1.push(face[i]);
        if i == pb {
            break;
        }
        i = (i + 1) % n;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = pb;
    loop {
        f2.push(face[i]);
        if i == pa {
            break;
        }
        i = (i + 1) % n;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

/// Rotation at each vertex from consistently oriented face cycles:
/// along `w0 w1 w2` the neighbour after `w0` around `w1` is `w2`.
fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let mut succ = vec![[usize::MAX; MAX_VERTICES]; n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (w0, w1, w2) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[w1][w0] = w2;
        }
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        let Some(start) = (0..n).find(|&u| succ[v][u] != usize::MAX) else {
            continue;
        };
        let mut u = start;
        loop {
            rot[v].push(u);
            u = succ[v][u];
            if u == usize::MAX || rot[v].len() > n {
                return None;
            }
            if u == start {
                break;
            }
        }
    }
    Some(rot)
}

/// A rotation system of a planar embedding, or `None` if `g` is not planar.
pub fn planar_rotation(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rot = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let e = block[0];
            rot[e.0].push(e.1);
            rot[e.1].push(e.0);
            continue;
        }
        let b = Graph::from_edges(n, block.iter().map(|e| (e.0, e.1))).ok()?;
        let verts: VertexSet = block.iter().flat_map(|e| [e.0, e.1]).collect();
        let faces = embed_block(&b, verts)?;
        let brot = rotation_from_faces(n, &faces)?;
        for v in verts {
            rot[v].extend(brot[v].iter().copied());
        }
    }
    Some(rot)
}

pub fn is_planar(g: &Graph) -> bool {
    planar_rotation(g).is_some()
}

/// A plane embedding with the longest face as outer face.
pub fn embed(g: &Graph) -> Option<PlaneGraph> {
    let rot = planar_rotation(g)?;
    PlaneGraph::with_longest_outer(g.clone(), rot).ok()
}

fn with_apex(g: &Graph) -> Option<Graph> {
    g.with_vertex(g.vertices()).ok()
}

/// Outerplanar iff adding a vertex adjacent to everything keeps it planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    with_apex(g).is_some_and(|h| is_planar(&h))
}

/// An embedding of a connected outerplanar graph with every vertex on the outer face.
pub fn outerplanar_embedding(g: &Graph) -> Option<PlaneGraph> {
    if !g.is_connected() {
        return None;
    }
    let n = g.vertex_count();
    let apex = with_apex(g)?;
    let rot = planar_rotation(&apex)?;
    let (sub, _) = apex.induced_relabelled(VertexSet::full(n));
    let rot: Vec<Vec<usize>> = restrict_rotation(&rot[..n], &sub);
    let faces = trace_faces(&sub, &rot);
    let all = VertexSet::full(n);
    let outer = faces
        .iter()
        .position(|f| f.iter().copied().collect::<VertexSet>() == all)?;
    let pg = PlaneGraph::with_longest_outer(sub, rot).ok()?;
    pg.with_outer_index(outer).ok()
}
