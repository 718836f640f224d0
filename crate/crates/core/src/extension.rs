//! Precolouring extension in plane graphs: boundary lists of three with inner
//! lists of five, and girth five with boundary lists of two on an independent set.
//!
//! Each solver checks its hypotheses, tries a constructive route where one is
//! implemented, and otherwise (or if that route gives up) searches exhaustively.
//! An exhaustive search that finds nothing is reported as `TheoremFalsified`.

use serde::Serialize;

use crate::correspondence::{is_valid_colouring, Colour, CorrespondenceAssignment, PartialColouring};
use crate::counting::find_colouring;
use crate::error::{Error, Result};
use crate::graph::{girth, is_independent, Edge, Girth, Graph, VertexSet};
use crate::plane::{trace_faces, PlaneGraph};
use crate::subgraph::Subgraph;
use crate::thomassen;

/// Node budget for the exhaustive fallback.
pub const EXTENSION_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Reduction along boundary vertices and chords.
    Recursion,
    /// Exhaustive search.
    Backtracking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub colouring: PartialColouring,
    pub route: Route,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::PreconditionViolation(msg.into())
}

/// The boundary walk used for every component: the outer face for the
/// component holding it, and for any other component the first of its faces
/// containing all of `needed` within that component.
fn boundary_walks(pg: &PlaneGraph, needed: VertexSet) -> Result<Vec<(VertexSet, Vec<usize>)>> {
    let g = pg.graph();
    let outer = pg.outer_face();
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.contains(outer[0]) {
            out.push((comp, outer.to_vec()));
            continue;
        }
        let want = needed.intersection(comp);
        let face = pg.faces().iter().find(|f| {
            comp.contains(f[0]) && want.is_subset(f.iter().copied().collect())
        });
        match face {
            Some(f) => out.push((comp, f.clone())),
            None => {
                return Err(violation(format!(
                    "no face of the component {comp:?} holds all of {want:?}"
                )))
            }
        }
    }
    Ok(out)
}

fn walk_set(walks: &[(VertexSet, Vec<usize>)]) -> VertexSet {
    walks.iter().flat_map(|(_, w)| w.iter().copied()).collect()
}

fn on_walk(walk: &[usize], e: Edge) -> bool {
    let m = walk.len();
    (0..m).any(|i| Edge::new(walk[i], walk[(i + 1) % m]) == e && walk[i] != walk[(i + 1) % m])
}

fn check_phi(g: &Graph, a: &CorrespondenceAssignment, s: &Subgraph, phi: &PartialColouring) -> Result<()> {
    if phi.domain() != s.vertices {
        return Err(violation(format!(
            "colouring covers {:?} but S has vertices {:?}",
            phi.domain(),
            s.vertices
        )));
    }
    for (&v, &c) in &phi.0 {
        if !a.lists[v].contains(&c) {
            return Err(violation(format!("colour {c} is not in the list of {v}")));
        }
    }
    for e in &s.edges {
        if !g.contains_edge(*e) {
            return Err(violation(format!("{e} is not an edge")));
        }
    }
    for e in g.edges() {
        if let (Some(x), Some(y)) = (phi.get(e.0), phi.get(e.1)) {
            if a.conflicts(e.0, x, e.1, y) {
                return Err(violation(format!("precolouring clashes on edge {e}")));
            }
        }
    }
    Ok(())
}

fn fallback(g: &Graph, a: &CorrespondenceAssignment, phi: &PartialColouring) -> Result<Extension> {
    match find_colouring(g, a, phi, EXTENSION_NODE_BUDGET)? {
        Some(c) => Ok(Extension {
            colouring: c,
            route: Route::Backtracking,
        }),
        None => Err(Error::TheoremFalsified(
            "hypotheses hold but the precolouring has no extension".into(),
        )),
    }
}

/// Extends `phi` from a boundary path `s` on at most two vertices, given lists of
/// at least three on the rest of the boundary and at least five inside.
pub fn extend_5cc(
    pg: &PlaneGraph,
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    phi: &PartialColouring,
) -> Result<PartialColouring> {
    extend_5cc_traced(pg, a, s, phi).map(|x| x.colouring)
}

/// As [`extend_5cc`], also reporting which route produced the colouring.
pub fn extend_5cc_traced(
    pg: &PlaneGraph,
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    phi: &PartialColouring,
) -> Result<Extension> {
    let g = pg.graph();
    a.check(g)?;
    s.check_within(g).map_err(|e| violation(e.to_string()))?;
    if s.vertex_count() > 2 {
        return Err(violation("S has more than two vertices"));
    }
    if s.vertex_count() == 2 && s.edge_count() != 1 {
        return Err(violation("S on two vertices must be an edge"));
    }
    check_phi(g, a, s, phi)?;

    let low: VertexSet = g.vertices().iter().filter(|&v| a.lists[v].len() < 5).collect();
    let walks = boundary_walks(pg, low.union(s.vertices))?;
    let c = walk_set(&walks);
    if !s.vertices.is_subset(c) {
        return Err(violation("S is not on the boundary walk"));
    }
    for e in &s.edges {
        if !walks.iter().any(|(_, w)| on_walk(w, *e)) {
            return Err(violation(format!("edge {e} of S is not on the boundary walk")));
        }
    }
    for v in g.vertices().difference(s.vertices) {
        let need = if c.contains(v) { 3 } else { 5 };
        if a.lists[v].len() < need {
            return Err(violation(format!(
                "vertex {v} has {} colours, needs {need}",
                a.lists[v].len()
            )));
        }
    }

    let mut colouring = phi.clone();
    let mut ok = true;
    for (comp, walk) in &walks {
        if thomassen::colour_component(g, pg.rotation(), *comp, walk, a, &mut colouring).is_none() {
            ok = false;
            break;
        }
    }
    if ok
        && colouring.domain() == g.vertices()
        && colouring.restricted(s.vertices) == *phi
        && is_valid_colouring(g, a, &colouring)
    {
        return Ok(Extension {
            colouring,
            route: Route::Recursion,
        });
    }
    fallback(g, a, phi)
}

/// Extends `phi` in a plane graph of girth at least five from a boundary path or
/// cycle `s` on at most six vertices, with lists of exactly two on the
/// independent boundary set `independent2` and at least three elsewhere.
pub fn extend_3cc_girth5(
    pg: &PlaneGraph,
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    independent2: VertexSet,
    phi: &PartialColouring,
) -> Result<PartialColouring> {
    let g = pg.graph();
    a.check(g)?;
    if girth(g) < Girth::Finite(5) {
        return Err(violation(format!("girth {} is below 5", girth(g))));
    }
    s.check_within(g).map_err(|e| violation(e.to_string()))?;
    if s.vertex_count() > 6 {
        return Err(violation("S has more than six vertices"));
    }
    if !s.vertices.is_empty() {
        let sg = s.as_graph(g.vertex_count())?;
        let ns = s.vertex_count();
        let shape = s.vertices.iter().all(|v| sg.degree(v) <= 2)
            && s.is_connected(g.vertex_count())
            && (s.edge_count() + 1 == ns || (s.edge_count() == ns && ns >= 3));
        if !shape {
            return Err(violation("S is not a path or a cycle"));
        }
    }
    check_phi(g, a, s, phi)?;
    if !independent2.is_subset(g.vertices()) {
        return Err(violation("the two-list set has unknown vertices"));
    }
    if !is_independent(g, independent2) {
        return Err(violation("the two-list set is not independent"));
    }
    if !independent2.intersection(s.vertices).is_empty() {
        return Err(violation("the two-list set meets S"));
    }
    for v in independent2 {
        if !g.neighbours(v).intersection(s.vertices).is_empty() {
            return Err(violation(format!("vertex {v} of the two-list set is adjacent to S")));
        }
    }
    let walks = boundary_walks(pg, independent2.union(s.vertices))?;
    let c = walk_set(&walks);
    if !s.vertices.union(independent2).is_subset(c) {
        return Err(violation("S and the two-list set must lie on the boundary walk"));
    }
    for e in &s.edges {
        if !walks.iter().any(|(_, w)| on_walk(w, *e)) {
            return Err(violation(format!("edge {e} of S is not on the boundary walk")));
        }
    }
    for v in g.vertices().difference(s.vertices) {
        let size = a.lists[v].len();
        if independent2.contains(v) && size != 2 {
            return Err(violation(format!("vertex {v} should have exactly 2 colours, has {size}")));
        }
        if !independent2.contains(v) && size < 3 {
            return Err(violation(format!("vertex {v} has {size} colours, needs 3")));
        }
    }
    fallback(g, a, phi).map(|x| x.colouring)
}

/// Colouring of the induced subgraph `h` for one challenge assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChallengeOutcome {
    pub colouring: PartialColouring,
    /// The vertex outside `h` precoloured with a new colour, if one was used.
    pub apex: Option<usize>,
    pub route: Route,
}

/// Colours `h` for the challenge assignment `(L', M')` (indexed by host
/// vertex; only `V(h)` and edges inside it are read). Vertices of `h` need
/// `|L'(u)| ≥ r − (deg_G(u) − deg_h(u))`.
///
/// If the short lists already sit on one face of `G[V(h)]` the matching
/// theorem applies directly. Otherwise a vertex `v` outside `h` seeing all short
/// lists is added back with the single new colour `c`, every neighbour of `v`
/// gains `c` with the pair `(c, c)`, and the extension runs from `S = {v}`.
pub fn check_deletable_via_extension(
    pg: &PlaneGraph,
    h: &Subgraph,
    r: usize,
    challenge: &CorrespondenceAssignment,
) -> Result<ChallengeOutcome> {
    let g = pg.graph();
    let n = g.vertex_count();
    if r != 3 && r != 5 {
        return Err(Error::InvalidArgument(format!("r must be 3 or 5, got {r}")));
    }
    h.check_within(g)?;
    if !h.is_induced_in(g) {
        return Err(violation("h must be induced"));
    }
    if h.vertices.is_empty() {
        return Err(violation("h is empty"));
    }
    if challenge.lists.len() != n {
        return Err(Error::InvalidAssignment(format!(
            "challenge has {} lists for {n} vertices",
            challenge.lists.len()
        )));
    }
    for u in h.vertices {
        let size = challenge.lists[u].len();
        if size == 0 {
            return Err(violation(format!("vertex {u} has an empty list")));
        }
        let need = r.saturating_sub(g.degree(u) - h.degree(u));
        if size < need {
            return Err(violation(format!("vertex {u} has {size} colours, needs {need}")));
        }
    }
    let (short_at, inner_at) = if r == 5 { (3, 5) } else { (2, 3) };
    let short: VertexSet = h
        .vertices
        .iter()
        .filter(|&u| challenge.lists[u].len() < short_at)
        .collect();

    let mut last = violation("no vertex outside h sees every short list");
    if short.is_empty() {
        match attempt(pg, h.vertices, challenge, r, inner_at, None) {
            Ok(Some(out)) => return Ok(out),
            Ok(None) => {}
            Err(e @ Error::TheoremFalsified(_)) => return Err(e),
            Err(e) => last = e,
        }
    }
    let c: Colour = challenge
        .lists
        .iter()
        .flatten()
        .copied()
        .max()
        .map_or(0, |m| m + 1);
    for v in g.vertices().difference(h.vertices) {
        if !short.is_subset(g.neighbours(v)) {
            continue;
        }
        match attempt(pg, h.vertices, challenge, r, inner_at, Some((v, c))) {
            Ok(Some(out)) => return Ok(out),
            Ok(None) => {}
            Err(e @ Error::TheoremFalsified(_)) => return Err(e),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// One application of the extension theorem on `G[V(h)]`, or on
/// `G[V(h) ∪ {v}]` with `v` precoloured by the new colour `c`. `None` when no
/// face can serve as the outer one.
fn attempt(
    pg: &PlaneGraph,
    hv: VertexSet,
    challenge: &CorrespondenceAssignment,
    r: usize,
    inner_at: usize,
    apex: Option<(usize, Colour)>,
) -> Result<Option<ChallengeOutcome>> {
    let g = pg.graph();
    let verts = apex.map_or(hv, |(v, _)| hv.with(v));
    let mut lists = challenge.lists.clone();
    let mut matchings: std::collections::BTreeMap<Edge, Vec<(Colour, Colour)>> = g
        .edges()
        .filter(|e| hv.contains(e.0) && hv.contains(e.1))
        .map(|e| (e, challenge.matching(e).to_vec()))
        .collect();
    if let Some((v, c)) = apex {
        lists[v] = vec![c];
        for u in g.neighbours(v).intersection(hv) {
            lists[u].push(c);
            matchings.insert(Edge::new(u, v), vec![(c, c)]);
        }
    }
    let host = CorrespondenceAssignment {
        lists,
        matchings,
        k: None,
    };

    let (sub, map) = g.induced_relabelled(verts);
    let mut inv = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in map.iter().enumerate() {
        inv[v] = i;
    }
    let rot: Vec<Vec<usize>> = map
        .iter()
        .map(|&v| {
            pg.rotation()[v]
                .iter()
                .filter(|&&w| verts.contains(w))
                .map(|&w| inv[w])
                .collect()
        })
        .collect();
    let a = host.relabelled(&sub, &map);
    let low: VertexSet = (0..sub.vertex_count()).filter(|&u| a.lists[u].len() < inner_at).collect();
    let anchor = apex.map(|(v, _)| inv[v]).or_else(|| low.first()).unwrap_or(0);
    let want = low.with(anchor).intersection(sub.reachable(anchor, sub.vertices()));
    let faces = trace_faces(&sub, &rot);
    let Some(face) = faces
        .iter()
        .find(|f| want.is_subset(f.iter().copied().collect()))
        .cloned()
    else {
        return Ok(None);
    };
    let sub_pg = PlaneGraph::new(sub, rot, &face)?;

    let (s, phi) = match apex {
        Some((v, c)) => {
            let mut phi = PartialColouring::new();
            phi.set(inv[v], c);
            (Subgraph::new(VertexSet::singleton(inv[v]), [])?, phi)
        }
        None => (Subgraph::empty(), PartialColouring::new()),
    };
    let ext = if r == 5 {
        extend_5cc_traced(&sub_pg, &a, &s, &phi)?
    } else {
        let twos: VertexSet = (0..sub_pg.vertex_count())
            .filter(|&u| a.lists[u].len() == 2)
            .collect();
        Extension {
            colouring: extend_3cc_girth5(&sub_pg, &a, &s, twos, &phi)?,
            route: Route::Backtracking,
        }
    };
    let mut colouring = PartialColouring::new();
    for (&i, &col) in &ext.colouring.0 {
        if hv.contains(map[i]) {
            colouring.set(map[i], col);
        }
    }
    Ok(Some(ChallengeOutcome {
        colouring,
        apex: apex.map(|(v, _)| v),
        route: ext.route,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::random_assignment;
    use crate::families;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sizes_5cc(pg: &PlaneGraph) -> Vec<usize> {
        let outer = pg.outer_vertices();
        (0..pg.vertex_count()).map(|v| if outer.contains(v) { 3 } else { 5 }).collect()
    }

    fn edge_s(u: usize, v: usize) -> Subgraph {
        Subgraph::new(VertexSet::singleton(u).with(v), [Edge::new(u, v)]).unwrap()
    }

    fn first_valid(a: &CorrespondenceAssignment, u: usize, v: usize) -> Option<PartialColouring> {
        for &x in &a.lists[u] {
            for &y in &a.lists[v] {
                if !a.conflicts(u, x, v, y) {
                    return Some(PartialColouring([(u, x), (v, y)].into_iter().collect()));
                }
            }
        }
        None
    }

    #[test]
    fn triangle_from_one_vertex() {
        let pg = families::plane_cycle(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_assignment(pg.graph(), &[3, 3, 3], 4, 0.9, &mut rng);
            let phi = PartialColouring([(0, a.lists[0][0])].into_iter().collect());
            let s = Subgraph::new(VertexSet::singleton(0), []).unwrap();
            let ext = extend_5cc_traced(&pg, &a, &s, &phi).unwrap();
            assert!(is_valid_colouring(pg.graph(), &a, &ext.colouring));
            assert_eq!(ext.colouring.get(0), phi.get(0));
            assert_eq!(ext.route, Route::Recursion);
        }
    }

    #[test]
    fn recursion_handles_wheels_and_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let shapes = [
            families::plane_wheel(5).unwrap(),
            families::plane_wheel(7).unwrap(),
            families::plane_grid(3, 3).unwrap(),
            families::plane_grid(3, 4).unwrap(),
            families::plane_icosahedron(),
        ];
        for pg in &shapes {
            let sizes = sizes_5cc(pg);
            let o = pg.outer_face();
            for _ in 0..40 {
                let a = random_assignment(pg.graph(), &sizes, 7, 1.0, &mut rng);
                let Some(phi) = first_valid(&a, o[0], o[1]) else { continue };
                let ext = extend_5cc_traced(pg, &a, &edge_s(o[0], o[1]), &phi).unwrap();
                assert!(is_valid_colouring(pg.graph(), &a, &ext.colouring));
                assert_eq!(ext.colouring.restricted(phi.domain()), phi);
                assert_eq!(ext.route, Route::Recursion);
            }
        }
    }

    #[test]
    fn recursion_handles_cut_vertices() {
        // two triangles sharing vertex 2, plus a pendant edge
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let pg = crate::planarity::embed(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let a = random_assignment(&g, &[3; 6], 5, 1.0, &mut rng);
            let ext = extend_5cc_traced(&pg, &a, &Subgraph::empty(), &PartialColouring::new()).unwrap();
            assert!(is_valid_colouring(&g, &a, &ext.colouring));
            assert_eq!(ext.route, Route::Recursion);
        }
    }

    #[test]
    fn short_boundary_list_is_rejected() {
        let pg = families::plane_wheel(5).unwrap();
        let mut sizes = sizes_5cc(&pg);
        sizes[3] = 2;
        let a = random_assignment(pg.graph(), &sizes, 6, 1.0, &mut ChaCha8Rng::seed_from_u64(0));
        let r = extend_5cc(&pg, &a, &Subgraph::empty(), &PartialColouring::new());
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn inner_vertex_needs_five() {
        let pg = families::plane_wheel(5).unwrap();
        let a = random_assignment(pg.graph(), &[4, 3, 3, 3, 3, 3], 6, 1.0, &mut ChaCha8Rng::seed_from_u64(0));
        let r = extend_5cc(&pg, &a, &Subgraph::empty(), &PartialColouring::new());
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn girth5_pentagon_with_two_lists() {
        let pg = families::plane_cycle(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a2 = VertexSet::singleton(1).with(3);
        for _ in 0..100 {
            let a = random_assignment(pg.graph(), &[3, 2, 3, 2, 3], 4, 1.0, &mut rng);
            let c = extend_3cc_girth5(&pg, &a, &Subgraph::empty(), a2, &PartialColouring::new()).unwrap();
            assert!(is_valid_colouring(pg.graph(), &a, &c));
        }
    }

    #[test]
    fn adjacent_two_lists_are_rejected() {
        let pg = families::plane_cycle(5).unwrap();
        let a = random_assignment(pg.graph(), &[3, 2, 2, 3, 3], 4, 1.0, &mut ChaCha8Rng::seed_from_u64(0));
        let r = extend_3cc_girth5(&pg, &a, &Subgraph::empty(), VertexSet::singleton(1).with(2), &PartialColouring::new());
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn short_girth_is_rejected() {
        let pg = families::plane_cycle(4).unwrap();
        let a = random_assignment(pg.graph(), &[3; 4], 4, 1.0, &mut ChaCha8Rng::seed_from_u64(0));
        let r = extend_3cc_girth5(&pg, &a, &Subgraph::empty(), VertexSet::EMPTY, &PartialColouring::new());
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn challenge_on_single_vertex() {
        let pg = families::plane_wheel(5).unwrap();
        let h = Subgraph::induced(pg.graph(), VertexSet::singleton(2));
        let mut lists = vec![vec![]; 6];
        lists[2] = vec![7, 9];
        let challenge = CorrespondenceAssignment {
            lists,
            matchings: Default::default(),
            k: None,
        };
        let out = check_deletable_via_extension(&pg, &h, 5, &challenge).unwrap();
        assert!(matches!(out.colouring.get(2), Some(7 | 9)));
    }

    #[test]
    fn challenge_with_empty_list() {
        let pg = families::plane_wheel(5).unwrap();
        let h = Subgraph::induced(pg.graph(), VertexSet::singleton(2));
        let challenge = CorrespondenceAssignment {
            lists: vec![vec![]; 6],
            matchings: Default::default(),
            k: None,
        };
        let r = check_deletable_via_extension(&pg, &h, 5, &challenge);
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn challenge_through_apex() {
        // edge 1-2 with three outside vertices seeing both ends: every vertex of
        // h has deficit 3, so r = 5 leaves lists of 2
        let g = Graph::from_edges(5, [(1, 2), (0, 1), (0, 2), (3, 1), (3, 2), (4, 1), (4, 2)]).unwrap();
        let pg = crate::planarity::embed(&g).unwrap();
        let h = Subgraph::induced(&g, VertexSet::singleton(1).with(2));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let ch = random_assignment(&g, &[0, 2, 2, 0, 0], 3, 1.0, &mut rng);
            let o = check_deletable_via_extension(&pg, &h, 5, &ch).unwrap();
            assert!(o.apex.is_some());
            let (x, y) = (o.colouring.get(1).unwrap(), o.colouring.get(2).unwrap());
            assert!(!ch.conflicts(1, x, 2, y));
        }
    }
}
