//! Correspondence assignments `(L, M)` and colourings.
//!
//! Each vertex carries a list of colours and each edge a partial matching
//! between the lists of its ends. A colouring picks a colour from every list
//! so that no edge has both of its chosen colours matched to each other.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{vertex_girth, Edge, Girth, Graph};
use crate::plane::PlaneGraph;
use crate::subgraph::Subgraph;

pub type Colour = u32;

pub const DEFAULT_PERMUTATION_BUDGET: u128 = 100_000_000;

/// Pairs of an edge matching are `(colour at edge.0, colour at edge.1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceAssignment {
    pub lists: Vec<Vec<Colour>>,
    pub matchings: BTreeMap<Edge, Vec<(Colour, Colour)>>,
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ListCount { expected: usize, found: usize },
    DuplicateColour { vertex: usize, colour: Colour },
    ListTooShort { vertex: usize, size: usize, k: usize },
    NonEdge { edge: Edge },
    NotMatching { edge: Edge, vertex: usize, colour: Colour },
    OutsideList { edge: Edge, vertex: usize, colour: Colour },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ListCount { expected, found } => {
                write!(f, "expected {expected} lists, found {found}")
            }
            Violation::DuplicateColour { vertex, colour } => {
                write!(f, "colour {colour} repeated in the list of {vertex}")
            }
            Violation::ListTooShort { vertex, size, k } => {
                write!(f, "list of {vertex} has {size} colours, fewer than k = {k}")
            }
            Violation::NonEdge { edge } => write!(f, "matching given on non-edge {edge}"),
            Violation::NotMatching { edge, vertex, colour } => {
                write!(f, "not a matching at {vertex}:{colour} on edge {edge}")
            }
            Violation::OutsideList { edge, vertex, colour } => {
                write!(f, "colour outside list: {vertex}:{colour} on edge {edge}")
            }
        }
    }
}

impl CorrespondenceAssignment {
    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    /// The matching on `e`, empty when none is stored.
    pub fn matching(&self, e: Edge) -> &[(Colour, Colour)] {
        self.matchings.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether colour `cu` at `u` and `cv` at `v` are matched on the edge `uv`.
    pub fn conflicts(&self, u: usize, cu: Colour, v: usize, cv: Colour) -> bool {
        let e = Edge::new(u, v);
        let pair = if e.0 == u { (cu, cv) } else { (cv, cu) };
        self.matching(e).contains(&pair)
    }

    pub fn list_sizes(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }

    pub fn min_list_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_colour(&self) -> Option<Colour> {
        self.lists.iter().flatten().copied().max()
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.lists.len() != g.vertex_count() {
            out.push(Violation::ListCount {
                expected: g.vertex_count(),
                found: self.lists.len(),
            });
            return Err(out);
        }
        for (v, list) in self.lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::DuplicateColour { vertex: v, colour: w[0] });
                }
            }
            if let Some(k) = self.k {
                if list.len() < k {
                    out.push(Violation::ListTooShort { vertex: v, size: list.len(), k });
                }
            }
        }
        for (&edge, pairs) in &self.matchings {
            if !g.contains_edge(edge) {
                out.push(Violation::NonEdge { edge });
                continue;
            }
            for side in 0..2 {
                let vertex = if side == 0 { edge.0 } else { edge.1 };
                let mut seen: Vec<Colour> = Vec::new();
                for &(a, b) in pairs {
                    let colour = if side == 0 { a } else { b };
                    if !self.lists[vertex].contains(&colour) {
                        out.push(Violation::OutsideList { edge, vertex, colour });
                    }
                    if seen.contains(&colour) {
                        out.push(Violation::NotMatching { edge, vertex, colour });
                    }
                    seen.push(colour);
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// [`CorrespondenceAssignment::validate`] folded into an error.
    pub fn check(&self, g: &Graph) -> Result<()> {
        self.validate(g).map_err(|v| {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            Error::InvalidAssignment(msgs.join("; "))
        })
    }

    /// Restricts to the vertices `map` (new id `i` is old vertex `map[i]`) of a
    /// graph `sub` whose edges come from the host.
    pub fn relabelled(&self, sub: &Graph, map: &[usize]) -> CorrespondenceAssignment {
        let lists = map.iter().map(|&v| self.lists[v].clone()).collect();
        let mut matchings = BTreeMap::new();
        for e in sub.edges() {
            let (a, b) = (map[e.0], map[e.1]);
            let host = Edge::new(a, b);
            let pairs: Vec<(Colour, Colour)> = self
                .matching(host)
                .iter()
                .map(|&(x, y)| if host.0 == a { (x, y) } else { (y, x) })
                .collect();
            matchings.insert(e, pairs);
        }
        CorrespondenceAssignment {
            lists,
            matchings,
            k: self.k,
        }
    }
}

/// A colouring of some of the vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColouring(pub BTreeMap<usize, Colour>);

impl PartialColouring {
    pub fn new() -> Self {
        PartialColouring(BTreeMap::new())
    }

    pub fn from_full(colours: &[Colour]) -> Self {
        PartialColouring(colours.iter().copied().enumerate().collect())
    }

    pub fn get(&self, v: usize) -> Option<Colour> {
        self.0.get(&v).copied()
    }

    pub fn set(&mut self, v: usize, c: Colour) {
        self.0.insert(v, c);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> crate::graph::VertexSet {
        self.0.keys().copied().collect()
    }

    pub fn restricted(&self, to: crate::graph::VertexSet) -> PartialColouring {
        PartialColouring(
            self.0
                .iter()
                .filter(|(v, _)| to.contains(**v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        )
    }

    /// Colours indexed by vertex, if every vertex below `n` is coloured.
    pub fn to_full(&self, n: usize) -> Option<Vec<Colour>> {
        (0..n).map(|v| self.get(v)).collect()
    }
}

/// Every coloured vertex uses a colour from its list and no edge with both
/// ends coloured joins matched colours.
pub fn is_valid_colouring(g: &Graph, a: &CorrespondenceAssignment, c: &PartialColouring) -> bool {
    for (&v, &col) in &c.0 {
        if v >= g.vertex_count() || v >= a.lists.len() || !a.lists[v].contains(&col) {
            return false;
        }
    }
    g.edges().all(|e| match (c.get(e.0), c.get(e.1)) {
        (Some(x), Some(y)) => !a.matching(e).contains(&(x, y)),
        _ => true,
    })
}

/// Identity matchings on shared colours, so colourings are exactly list colourings.
pub fn from_lists(g: &Graph, lists: Vec<Vec<Colour>>) -> Result<CorrespondenceAssignment> {
    if lists.len() < g.vertex_count() {
        return Err(Error::InvalidAssignment(format!(
            "missing list for vertex {}",
            lists.len()
        )));
    }
    if lists.len() > g.vertex_count() {
        return Err(Error::InvalidAssignment(format!(
            "{} lists for {} vertices",
            lists.len(),
            g.vertex_count()
        )));
    }
    let mut matchings = BTreeMap::new();
    for e in g.edges() {
        let pairs: Vec<(Colour, Colour)> = lists[e.0]
            .iter()
            .filter(|c| lists[e.1].contains(c))
            .map(|&c| (c, c))
            .collect();
        matchings.insert(e, pairs);
    }
    Ok(CorrespondenceAssignment {
        lists,
        matchings,
        k: None,
    })
}

/// Lists `{0, .., k-1}` everywhere with identity matchings: ordinary `k`-colouring.
pub fn uniform(g: &Graph, k: usize) -> CorrespondenceAssignment {
    let lists = vec![(0..k as Colour).collect(); g.vertex_count()];
    let mut a = from_lists(g, lists).expect("one list per vertex");
    a.k = Some(k);
    a
}

/// List sizes 5, 4 or 3 according to whether the vertex girth is 3, 4 or larger.
pub fn local_girth_lists(pg: &PlaneGraph) -> Vec<Vec<Colour>> {
    let g = pg.graph();
    (0..g.vertex_count())
        .map(|v| {
            let size = match vertex_girth(g, v).expect("vertex in range") {
                Girth::Finite(3) => 5,
                Girth::Finite(4) => 4,
                _ => 3,
            };
            (0..size).collect()
        })
        .collect()
}

fn all_permutations(k: usize) -> Vec<Vec<Colour>> {
    let mut out = Vec::new();
    let mut p: Vec<Colour> = (0..k as Colour).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// All assignments with lists `{0..k-1}` and a full permutation matching
/// `(c, π(c))` on every edge, indexed in mixed radix with the first edge slowest
/// and permutations in lexicographic order.
#[derive(Clone, Debug)]
pub struct PermutationSpace {
    edges: Vec<Edge>,
    n: usize,
    k: usize,
    perms: Vec<Vec<Colour>>,
    total: u128,
}

impl PermutationSpace {
    pub fn new(g: &Graph, k: usize, budget: u128) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let edges = g.edge_list();
        let fact: u128 = (1..=k as u128).product();
        let mut total: u128 = 1;
        for _ in &edges {
            total = total
                .checked_mul(fact)
                .filter(|t| *t <= budget)
                .ok_or_else(|| {
                    Error::BudgetExceeded(format!(
                        "({k}!)^{} permutation assignments exceed the budget {budget}",
                        edges.len()
                    ))
                })?;
        }
        if total > budget {
            return Err(Error::BudgetExceeded(format!("{total} assignments exceed {budget}")));
        }
        let perms = if edges.is_empty() { vec![] } else { all_permutations(k) };
        Ok(PermutationSpace {
            edges,
            n: g.vertex_count(),
            k,
            perms,
            total,
        })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn build(&self, choice: impl Fn(usize) -> usize) -> CorrespondenceAssignment {
        let lists = vec![(0..self.k as Colour).collect(); self.n];
        let matchings = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let p = &self.perms[choice(i)];
                (e, (0..self.k).map(|c| (c as Colour, p[c])).collect())
            })
            .collect();
        CorrespondenceAssignment {
            lists,
            matchings,
            k: Some(self.k),
        }
    }

    pub fn get(&self, index: u128) -> CorrespondenceAssignment {
        assert!(index < self.total, "index out of range");
        let radix = self.perms.len().max(1) as u128;
        let m = self.edges.len();
        let mut digits = vec![0usize; m];
        let mut x = index;
        for i in (0..m).rev() {
            digits[i] = (x % radix) as usize;
            x /= radix;
        }
        self.build(|i| digits[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = CorrespondenceAssignment> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> CorrespondenceAssignment {
        random_permutation_assignment_with(self.n, &self.edges, self.k, rng)
    }
}

/// Streams all full-permutation `k`-assignments of `g`, refusing spaces above `budget`.
pub fn permutation_assignments(
    g: &Graph,
    k: usize,
    budget: u128,
) -> Result<impl Iterator<Item = CorrespondenceAssignment>> {
    let space = PermutationSpace::new(g, k, budget)?;
    Ok((0..space.len()).map(move |i| space.get(i)))
}

fn random_permutation_assignment_with<R: Rng>(
    n: usize,
    edges: &[Edge],
    k: usize,
    rng: &mut R,
) -> CorrespondenceAssignment {
    let lists = vec![(0..k as Colour).collect(); n];
    let matchings = edges
        .iter()
        .map(|&e| {
            let mut p: Vec<Colour> = (0..k as Colour).collect();
            p.shuffle(rng);
            (e, (0..k).map(|c| (c as Colour, p[c])).collect())
        })
        .collect();
    CorrespondenceAssignment {
        lists,
        matchings,
        k: Some(k),
    }
}

/// Lists `{0..k-1}` with an independent uniform permutation on every edge.
pub fn random_permutation_assignment<R: Rng>(
    g: &Graph,
    k: usize,
    rng: &mut R,
) -> CorrespondenceAssignment {
    random_permutation_assignment_with(g.vertex_count(), &g.edge_list(), k, rng)
}

/// Lists of the given sizes drawn from `{0..palette-1}` and, on every edge, a
/// random matching between the two lists that keeps each pair with probability `density`.
pub fn random_assignment<R: Rng>(
    g: &Graph,
    sizes: &[usize],
    palette: usize,
    density: f64,
    rng: &mut R,
) -> CorrespondenceAssignment {
    let all: Vec<Colour> = (0..palette.max(1) as Colour).collect();
    let lists: Vec<Vec<Colour>> = sizes
        .iter()
        .map(|&s| {
            let mut l: Vec<Colour> = all.choose_multiple(rng, s.min(all.len())).copied().collect();
            l.sort_unstable();
            l
        })
        .collect();
    let mut matchings = BTreeMap::new();
    for e in g.edges() {
        let mut xs = lists[e.0].clone();
        let mut ys = lists[e.1].clone();
        xs.shuffle(rng);
        ys.shuffle(rng);
        let mut pairs: Vec<(Colour, Colour)> = xs
            .into_iter()
            .zip(ys)
            .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
            .collect();
        pairs.sort_unstable();
        matchings.insert(e, pairs);
    }
    CorrespondenceAssignment {
        lists,
        matchings,
        k: None,
    }
}

/// The assignment forcing a precolouring of `h` not to extend whenever the
/// base assignment on `G − V(H)` has no colouring.
///
/// Every `v ∈ V(H)` gets a fresh colour `c_v` and all of them share a fresh
/// set `R` of `r − 1` colours, so `L(v) = {c_v} ∪ R`. A vertex `u` outside `H`
/// keeps its base list and gains `c_v` for each neighbour `v` in `H`, with the
/// single pair `(c_v, c_v)` on `uv`. Edges of `H` get empty matchings and the
/// remaining edges keep the base matchings. The forced colouring is `v ↦ c_v`.
///
/// Without a base, vertices outside `H` get `{0, .., r − |N(u) ∩ V(H)| − 1}`
/// and identity matchings.
pub fn precolouring_gadget(
    g: &Graph,
    h: &Subgraph,
    r: usize,
    base: Option<&CorrespondenceAssignment>,
) -> Result<(CorrespondenceAssignment, PartialColouring)> {
    h.check_within(g)?;
    if h.vertices == g.vertices() {
        return Err(Error::NotProper);
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let n = g.vertex_count();
    let base = match base {
        Some(b) => {
            if b.lists.len() != n {
                return Err(Error::InvalidAssignment(format!(
                    "base assignment has {} lists for {n} vertices",
                    b.lists.len()
                )));
            }
            b.clone()
        }
        None => {
            let lists = (0..n)
                .map(|u| {
                    if h.vertices.contains(u) {
                        Vec::new()
                    } else {
                        let into_h = g.neighbours(u).intersection(h.vertices).len();
                        (0..r.saturating_sub(into_h) as Colour).collect()
                    }
                })
                .collect();
            from_lists(g, lists)?
        }
    };
    let mut next = base
        .lists
        .iter()
        .enumerate()
        .filter(|(u, _)| !h.vertices.contains(*u))
        .flat_map(|(_, l)| l.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut fresh = vec![None; n];
    for v in h.vertices {
        fresh[v] = Some(next);
        next += 1;
    }
    let shared: Vec<Colour> = (next..next + (r as Colour - 1)).collect();

    let mut lists = vec![Vec::new(); n];
    let mut phi = PartialColouring::new();
    for v in 0..n {
        if let Some(cv) = fresh[v] {
            let mut l = vec![cv];
            l.extend(&shared);
            lists[v] = l;
            phi.set(v, cv);
        } else {
            let mut l = base.lists[v].clone();
            for w in g.neighbours(v).intersection(h.vertices) {
                l.push(fresh[w].expect("fresh colour"));
            }
            lists[v] = l;
        }
    }
    let mut matchings = BTreeMap::new();
    for e in g.edges() {
        let (in0, in1) = (h.vertices.contains(e.0), h.vertices.contains(e.1));
        let pairs = match (in0, in1) {
            (true, true) => Vec::new(),
            (false, false) => base.matching(e).to_vec(),
            (true, false) => {
                let c = fresh[e.0].expect("fresh colour");
                vec![(c, c)]
            }
            (false, true) => {
                let c = fresh[e.1].expect("fresh colour");
                vec![(c, c)]
            }
        };
        matchings.insert(e, pairs);
    }
    Ok((
        CorrespondenceAssignment {
            lists,
            matchings,
            k: Some(r),
        },
        phi,
    ))
}
