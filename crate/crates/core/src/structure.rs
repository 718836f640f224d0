//! Deficiency, deletable subgraphs, criticality and the disk inequality.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::correspondence::{Colour, CorrespondenceAssignment, PartialColouring};
use crate::counting::{count_colourings, find_colouring, frontier::frontier_count, run_branches, CountConfig};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::plane::PlaneGraph;
use crate::rational::{self, Rational};
use crate::subgraph::{diff_counts, Subgraph};

/// Exact `def_g(G|H)`, optionally with the sign of `d_{g,ε}(G|H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub g_param: u32,
    pub v_diff: i64,
    pub e_diff: i64,
    pub def_g: i64,
    #[serde(with = "rational::option")]
    pub epsilon: Option<Rational>,
    /// Sign of `d_{g,ε}` (-1, 0 or 1) when `epsilon` is set.
    pub d_sign: Option<i8>,
}

impl DeficiencyReport {
    pub fn with_epsilon(mut self, epsilon: Rational) -> Self {
        self.epsilon = Some(epsilon);
        self.d_sign = Some(match self.d(epsilon).cmp(&Ratio::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        });
        self
    }

    /// `d_{g,ε} = def_g − ε·v(G|H)`.
    pub fn d(&self, epsilon: Rational) -> Rational {
        Ratio::from_integer(self.def_g) - epsilon * self.v_diff
    }
}

pub fn deficiency(g: &Graph, h: &Subgraph, g_param: u32) -> Result<DeficiencyReport> {
    if g_param < 3 {
        return Err(Error::InvalidArgument(format!("g must be at least 3, got {g_param}")));
    }
    let (v, e) = diff_counts(g, h)?;
    let (v, e) = (v as i64, e as i64);
    let gp = g_param as i64;
    Ok(DeficiencyReport {
        g_param,
        v_diff: v,
        e_diff: e,
        def_g: (gp - 2) * e - gp * v,
        epsilon: None,
        d_sign: None,
    })
}

/// Whether `d_{g,ε}(G|H) ≥ threshold`, by cross-multiplied integers.
pub fn d_ge_check(g: &Graph, h: &Subgraph, g_param: u32, epsilon: Rational, threshold: Rational) -> Result<bool> {
    let rep = deficiency(g, h, g_param)?;
    Ok(d_ge(rep.def_g, rep.v_diff, epsilon, threshold))
}

/// `def − ε·v ≥ t` with `ε = p/q`, `t = a/b`: `(q·def − p·v)·b ≥ a·q`.
pub fn d_ge(def: i64, v: i64, epsilon: Rational, threshold: Rational) -> bool {
    let (p, q) = (*epsilon.numer() as i128, *epsilon.denom() as i128);
    let (a, b) = (*threshold.numer() as i128, *threshold.denom() as i128);
    (q * def as i128 - p * v as i128) * b >= a * q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletabilityStatus {
    Deletable,
    NotDeletable,
    UnknownBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletabilityVerdict {
    pub status: DeletabilityStatus,
    /// An assignment on `h` (host ids; other vertices get empty lists) without
    /// a colouring, or with too few colourings.
    pub witness: Option<CorrespondenceAssignment>,
    pub checked_assignments: u128,
    /// Smallest count seen, for exponential deletability.
    #[serde(with = "opt_decimal")]
    pub min_count: Option<BigUint>,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }
}

/// Samples drawn when the exhaustive space is over budget.
pub const FALSIFICATION_SAMPLES: u64 = 10_000;
const FALSIFICATION_SEED: u64 = 0x5eed;
const CHUNK: u128 = 2048;

/// `max(0, r − (deg_G(u) − deg_H(u)))` for each vertex of `h` (0 elsewhere).
pub fn minimum_list_sizes(g: &Graph, h: &Subgraph, r: usize) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|u| {
            if h.vertices.contains(u) {
                r.saturating_sub(g.degree(u) - h.degree(u))
            } else {
                0
            }
        })
        .collect()
}

/// Maximal matchings between lists `{0..s(u)-1}` on a connected graph, up to
/// renaming colours: identity-like on spanning-tree edges, arbitrary
/// injections elsewhere.
struct MatchingSpace {
    g: Graph,
    sizes: Vec<usize>,
    slots: Vec<Slot>,
    len: u128,
}

struct Slot {
    edge: Edge,
    kind: SlotKind,
    choices: u128,
}

enum SlotKind {
    /// `(x, x)` for `x` below the parent size.
    Aligned,
    /// The child's colours go, in order, onto a subset of the parent's.
    Subset { parent: usize },
    /// Every colour of `small` goes to a distinct colour of the other end.
    Injection { small: usize },
}

fn falling(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i))
}

impl MatchingSpace {
    fn new(g: Graph, sizes: Vec<usize>) -> Self {
        let n = g.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut seen = VertexSet::EMPTY;
        let mut tree = std::collections::BTreeSet::new();
        for root in 0..n {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for w in g.neighbours(v) {
                    if !seen.contains(w) {
                        seen.insert(w);
                        parent[w] = v;
                        tree.insert(Edge::new(v, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut slots = Vec::new();
        let mut len = 1u128;
        for e in g.edges() {
            let (a, b) = (sizes[e.0] as u128, sizes[e.1] as u128);
            let slot = if tree.contains(&e) {
                let (p, c) = if parent[e.1] == e.0 { (e.0, e.1) } else { (e.1, e.0) };
                if sizes[c] >= sizes[p] {
                    Slot {
                        edge: e,
                        kind: SlotKind::Aligned,
                        choices: 1,
                    }
                } else {
                    Slot {
                        edge: e,
                        kind: SlotKind::Subset { parent: p },
                        choices: binomial(sizes[p] as u128, sizes[c] as u128),
                    }
                }
            } else {
                let (small, m, big) = if a <= b { (e.0, a, b) } else { (e.1, b, a) };
                Slot {
                    edge: e,
                    kind: SlotKind::Injection { small },
                    choices: falling(big, m),
                }
            };
            len = len.saturating_mul(slot.choices);
            slots.push(slot);
        }
        MatchingSpace { g, sizes, slots, len }
    }

    fn get(&self, mut index: u128) -> CorrespondenceAssignment {
        let lists: Vec<Vec<Colour>> = self.sizes.iter().map(|&s| (0..s as Colour).collect()).collect();
        let mut matchings = BTreeMap::new();
        // first slot varies slowest
        let mut digits = vec![0u128; self.slots.len()];
        for (i, s) in self.slots.iter().enumerate().rev() {
            digits[i] = index % s.choices;
            index /= s.choices;
        }
        for (s, &d) in self.slots.iter().zip(&digits) {
            let e = s.edge;
            let pairs: Vec<(Colour, Colour)> = match s.kind {
                SlotKind::Aligned => {
                    let m = self.sizes[e.0].min(self.sizes[e.1]) as Colour;
                    (0..m).map(|x| (x, x)).collect()
                }
                SlotKind::Subset { parent } => {
                    let child = e.other(parent);
                    let subset = unrank_subset(self.sizes[parent], self.sizes[child], d);
                    subset
                        .into_iter()
                        .enumerate()
                        .map(|(y, x)| orient(e, parent, x as Colour, y as Colour))
                        .collect()
                }
                SlotKind::Injection { small } => {
                    let big = e.other(small);
                    unrank_injection(self.sizes[big], self.sizes[small], d)
                        .into_iter()
                        .enumerate()
                        .map(|(x, y)| orient(e, small, x as Colour, y as Colour))
                        .collect()
                }
            };
            let mut pairs = pairs;
            pairs.sort_unstable();
            matchings.insert(e, pairs);
        }
        CorrespondenceAssignment {
            lists,
            matchings,
            k: None,
        }
    }
}

/// The pair for colour `cx` at `x` and `cy` at the other end, in edge order.
fn orient(e: Edge, x: usize, cx: Colour, cy: Colour) -> (Colour, Colour) {
    if e.0 == x {
        (cx, cy)
    } else {
        (cy, cx)
    }
}

/// The `rank`-th `k`-subset of `{0..n-1}` in lexicographic order.
fn unrank_subset(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    while out.len() < k {
        let rest = k - out.len() - 1;
        let with_x = binomial((n - x - 1) as u128, rest as u128);
        if rank < with_x {
            out.push(x);
        } else {
            rank -= with_x;
        }
        x += 1;
    }
    out
}

/// The `rank`-th injection `{0..k-1} → {0..n-1}`.
fn unrank_injection(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut free: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let m = (n - i) as u128;
        let j = (rank % m) as usize;
        rank /= m;
        out.push(free.remove(j));
    }
    out
}

/// Vertices of `h` left after repeatedly deleting a vertex whose minimum list
/// exceeds its degree among the remaining ones.
fn peel(g: &Graph, h: VertexSet, sizes: &[usize]) -> VertexSet {
    let mut core = h;
    loop {
        let removable = core
            .iter()
            .find(|&u| sizes[u] > g.neighbours(u).intersection(core).len());
        match removable {
            Some(u) => core.remove(u),
            None => return core,
        }
    }
}

fn check_induced(g: &Graph, h: &Subgraph) -> Result<()> {
    h.check_within(g)?;
    if h.vertices.is_empty() {
        return Err(Error::InvalidArgument("h must be nonempty".into()));
    }
    if !h.is_induced_in(g) {
        return Err(Error::NotSubgraph("h must be an induced subgraph".into()));
    }
    Ok(())
}

/// Lifts a component assignment back to host ids: every vertex of `h` gets
/// its minimum list, edges outside the component get empty matchings.
fn lift(
    g: &Graph,
    h: &Subgraph,
    sizes: &[usize],
    part: Option<(&CorrespondenceAssignment, &[usize])>,
) -> CorrespondenceAssignment {
    let lists = (0..g.vertex_count())
        .map(|u| if h.vertices.contains(u) { (0..sizes[u] as Colour).collect() } else { Vec::new() })
        .collect();
    let mut matchings: BTreeMap<Edge, Vec<(Colour, Colour)>> = h.edges.iter().map(|&e| (e, Vec::new())).collect();
    if let Some((a, map)) = part {
        for (e, pairs) in &a.matchings {
            let host = Edge::new(map[e.0], map[e.1]);
            let flipped = map[e.0] != host.0;
            let pairs = pairs.iter().map(|&(x, y)| if flipped { (y, x) } else { (x, y) }).collect();
            matchings.insert(host, pairs);
        }
    }
    CorrespondenceAssignment {
        lists,
        matchings,
        k: None,
    }
}

/// Whether `h` has a colouring for every assignment with
/// `|L(u)| ≥ r − (deg_G(u) − deg_H(u))`.
///
/// Lists are taken at their minimum sizes and matchings maximal, then
/// normalised along a spanning forest; vertices whose list exceeds their
/// remaining degree are peeled first. When the remaining space exceeds
/// `budget` assignments, a seeded random search looks for a failure and the
/// verdict is otherwise `UnknownBudget`.
pub fn is_deletable(g: &Graph, h: &Subgraph, r: usize, budget: u128) -> Result<DeletabilityVerdict> {
    check_induced(g, h)?;
    let sizes = minimum_list_sizes(g, h, r);
    if h.vertices.iter().any(|u| sizes[u] == 0) {
        return Ok(DeletabilityVerdict {
            status: DeletabilityStatus::NotDeletable,
            witness: Some(lift(g, h, &sizes, None)),
            checked_assignments: 1,
            min_count: None,
        });
    }
    let core = peel(g, h.vertices, &sizes);
    let spaces: Vec<(MatchingSpace, Vec<usize>)> = g
        .components_within(core)
        .into_iter()
        .map(|k| {
            let (kg, map) = g.induced_relabelled(k);
            let ks = map.iter().map(|&v| sizes[v]).collect();
            (MatchingSpace::new(kg, ks), map)
        })
        .collect();
    let total = spaces.iter().fold(0u128, |acc, (s, _)| acc.saturating_add(s.len));
    let colourable = |a: &CorrespondenceAssignment, sg: &Graph| -> bool {
        matches!(find_colouring(sg, a, &PartialColouring::new(), u64::MAX), Ok(Some(_)))
    };
    let mut checked = 0u128;
    if total <= budget {
        for (space, map) in &spaces {
            let bad = first_index(space.len, |i| !colourable(&space.get(i), &space.g));
            match bad {
                Some(i) => {
                    checked += i + 1;
                    let a = space.get(i);
                    return Ok(DeletabilityVerdict {
                        status: DeletabilityStatus::NotDeletable,
                        witness: Some(lift(g, h, &sizes, Some((&a, map)))),
                        checked_assignments: checked,
                        min_count: None,
                    });
                }
                None => checked += space.len,
            }
        }
        return Ok(DeletabilityVerdict {
            status: DeletabilityStatus::Deletable,
            witness: None,
            checked_assignments: checked,
            min_count: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FALSIFICATION_SEED);
    let samples = FALSIFICATION_SAMPLES.min(u64::try_from(budget).unwrap_or(u64::MAX)).max(1);
    for _ in 0..samples {
        for (space, map) in &spaces {
            let a = space.get(rng.gen_range(0..space.len));
            checked += 1;
            if !colourable(&a, &space.g) {
                return Ok(DeletabilityVerdict {
                    status: DeletabilityStatus::NotDeletable,
                    witness: Some(lift(g, h, &sizes, Some((&a, map)))),
                    checked_assignments: checked,
                    min_count: None,
                });
            }
        }
    }
    Ok(DeletabilityVerdict {
        status: DeletabilityStatus::UnknownBudget,
        witness: None,
        checked_assignments: checked,
        min_count: None,
    })
}

/// Smallest index in `0..len` satisfying `pred`, scanning chunks in parallel.
fn first_index<F>(len: u128, pred: F) -> Option<u128>
where
    F: Fn(u128) -> bool + Sync + Send,
{
    let wave = 16 * CHUNK;
    let mut start = 0u128;
    while start < len {
        let starts: Vec<u128> = (0..16)
            .map(|i| start + i * CHUNK)
            .filter(|&s| s < len)
            .collect();
        let hits = run_branches(&starts, true, |&s| (s..(s + CHUNK).min(len)).find(|&i| pred(i)));
        if let Some(i) = hits.into_iter().flatten().min() {
            return Some(i);
        }
        start += wave;
    }
    None
}

/// `count ≥ 2^{ε·v}` with `ε = p/q > 0`: `count^q ≥ 2^{p·v}`.
fn meets_power_of_two(count: &BigUint, epsilon: Rational, v: usize) -> bool {
    let (p, q) = (*epsilon.numer(), *epsilon.denom());
    if p <= 0 {
        return !count.is_zero();
    }
    let lhs = Pow::pow(count, q as u64);
    let rhs = BigUint::one() << (p as u64 * v as u64);
    lhs >= rhs
}

fn exact_count(g: &Graph, a: &CorrespondenceAssignment) -> BigUint {
    match frontier_count(g, a) {
        Ok(c) => c,
        Err(_) => count_colourings(g, a, &CountConfig { node_budget: u64::MAX, parallel: false })
            .map(|r| r.count)
            .unwrap_or_default(),
    }
}

/// Whether `h` has at least `2^{ε·v(H)}` colourings for every assignment with
/// `|L(u)| ≥ r − (deg_G(u) − deg_H(u))`; the minimum over the reduced
/// assignments of each component is multiplied across components.
pub fn is_exponentially_deletable(
    g: &Graph,
    h: &Subgraph,
    r: usize,
    epsilon: Rational,
    budget: u128,
) -> Result<DeletabilityVerdict> {
    check_induced(g, h)?;
    if epsilon <= Ratio::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let sizes = minimum_list_sizes(g, h, r);
    let v = h.vertex_count();
    if h.vertices.iter().any(|u| sizes[u] == 0) {
        return Ok(DeletabilityVerdict {
            status: DeletabilityStatus::NotDeletable,
            witness: Some(lift(g, h, &sizes, None)),
            checked_assignments: 1,
            min_count: Some(BigUint::zero()),
        });
    }
    let spaces: Vec<(MatchingSpace, Vec<usize>)> = g
        .components_within(h.vertices)
        .into_iter()
        .map(|k| {
            let (kg, map) = g.induced_relabelled(k);
            let ks = map.iter().map(|&v| sizes[v]).collect();
            (MatchingSpace::new(kg, ks), map)
        })
        .collect();
    let total = spaces.iter().fold(0u128, |acc, (s, _)| acc.saturating_add(s.len));
    if total <= budget {
        let mut product = BigUint::one();
        let mut worst: Vec<(CorrespondenceAssignment, &[usize])> = Vec::new();
        for (space, map) in &spaces {
            let idx: Vec<u128> = (0..space.len.div_ceil(CHUNK)).map(|c| c * CHUNK).collect();
            let mins = run_branches(&idx, true, |&s| {
                (s..(s + CHUNK).min(space.len))
                    .map(|i| (exact_count(&space.g, &space.get(i)), i))
                    .min()
            });
            let (m, i) = mins.into_iter().flatten().min().expect("nonempty space");
            product *= m;
            worst.push((space.get(i), map.as_slice()));
        }
        let holds = meets_power_of_two(&product, epsilon, v);
        let witness = (!holds).then(|| merge_witness(g, h, &sizes, &worst));
        return Ok(DeletabilityVerdict {
            status: if holds { DeletabilityStatus::Deletable } else { DeletabilityStatus::NotDeletable },
            witness,
            checked_assignments: total,
            min_count: Some(product),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FALSIFICATION_SEED);
    let samples = FALSIFICATION_SAMPLES.min(u64::try_from(budget).unwrap_or(u64::MAX)).max(1);
    let mut least: Option<BigUint> = None;
    for t in 0..samples {
        let mut product = BigUint::one();
        let mut picked = Vec::new();
        for (space, map) in &spaces {
            let a = space.get(rng.gen_range(0..space.len));
            product *= exact_count(&space.g, &a);
            picked.push((a, map.as_slice()));
        }
        if least.as_ref().is_none_or(|l| product < *l) {
            least = Some(product.clone());
        }
        if !meets_power_of_two(&product, epsilon, v) {
            return Ok(DeletabilityVerdict {
                status: DeletabilityStatus::NotDeletable,
                witness: Some(merge_witness(g, h, &sizes, &picked)),
                checked_assignments: t as u128 + 1,
                min_count: least,
            });
        }
    }
    Ok(DeletabilityVerdict {
        status: DeletabilityStatus::UnknownBudget,
        witness: None,
        checked_assignments: samples as u128,
        min_count: least,
    })
}

fn merge_witness(
    g: &Graph,
    h: &Subgraph,
    sizes: &[usize],
    parts: &[(CorrespondenceAssignment, &[usize])],
) -> CorrespondenceAssignment {
    let mut out = lift(g, h, sizes, None);
    for (a, map) in parts {
        let one = lift(g, h, sizes, Some((a, map)));
        for (e, pairs) in one.matchings {
            if !pairs.is_empty() {
                out.matchings.insert(e, pairs);
            }
        }
    }
    out
}

/// A maximal proper subgraph of `G` containing `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Removal {
    Edge(Edge),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub removed: Removal,
    /// A colouring of `S` extending to the smaller graph but not to `G`.
    pub witness: Option<PartialColouring>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub critical: bool,
    pub certificate: Vec<CertificateEntry>,
    pub s_colourings: usize,
    pub non_extendable: usize,
}

/// Largest number of colourings of `S` examined by [`is_critical`].
pub const CRITICAL_COLOURING_CAP: usize = 1_000_000;

/// Whether `G` is `S`-critical for `(L, M)`: every `G − e` (`e ∉ E(S)`) and
/// `G − v` (`v ∉ V(S)`) admits a colouring of `S` extending to it but not to
/// `G`. Extendability only grows when passing to subgraphs, so these maximal
/// proper subgraphs decide every proper one.
pub fn is_critical(g: &Graph, s: &Subgraph, a: &CorrespondenceAssignment) -> Result<CriticalityVerdict> {
    s.check_within(g)?;
    a.check(g)?;
    let n = g.vertex_count();
    if s.vertices == g.vertices() && s.edge_count() == g.edge_count() {
        return Err(Error::NotProper);
    }
    // colourings of S alone
    let sg = s.as_graph(n)?;
    let mut sa = a.clone();
    sa.matchings.retain(|e, _| s.edges.contains(e));
    for u in 0..n {
        if !s.vertices.contains(u) {
            sa.lists[u] = vec![0];
        }
    }
    let mut phis: Vec<PartialColouring> = Vec::new();
    let mut over = false;
    crate::counting::for_each_colouring(&sg, &sa, |c| {
        if phis.len() == CRITICAL_COLOURING_CAP {
            over = true;
            return std::ops::ControlFlow::Break(());
        }
        phis.push(PartialColouring(s.vertices.iter().map(|v| (v, c[v])).collect()));
        std::ops::ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::BudgetExceeded(format!(
            "S has more than {CRITICAL_COLOURING_CAP} colourings"
        )));
    }
    let extends = |gg: &Graph, aa: &CorrespondenceAssignment, phi: &PartialColouring| -> Result<bool> {
        Ok(find_colouring(gg, aa, phi, crate::extension::EXTENSION_NODE_BUDGET)?.is_some())
    };
    let mut bad = Vec::new();
    for phi in &phis {
        if !extends(g, a, phi)? {
            bad.push(phi);
        }
    }
    let mut removals: Vec<Removal> = g
        .edges()
        .filter(|e| !s.edges.contains(e))
        .map(Removal::Edge)
        .collect();
    removals.extend(g.vertices().difference(s.vertices).iter().map(Removal::Vertex));
    let mut certificate = Vec::new();
    for rm in removals {
        let (gg, aa) = match rm {
            Removal::Edge(e) => {
                let mut aa = a.clone();
                aa.matchings.remove(&e);
                (g.without_edge(e), aa)
            }
            Removal::Vertex(v) => {
                let mut aa = a.clone();
                aa.matchings.retain(|e, _| !e.contains(v));
                aa.lists[v] = vec![0];
                (g.isolate(v), aa)
            }
        };
        let mut witness = None;
        for phi in &bad {
            if extends(&gg, &aa, phi)? {
                witness = Some((*phi).clone());
                break;
            }
        }
        certificate.push(CertificateEntry { removed: rm, witness });
    }
    Ok(CriticalityVerdict {
        critical: certificate.iter().all(|c| c.witness.is_some()),
        certificate,
        s_colourings: phis.len(),
        non_extendable: bad.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub found: Option<VertexSet>,
    /// False when some candidate came back `UnknownBudget`, so "nothing found"
    /// is only within budget.
    pub complete: bool,
    pub candidates_checked: usize,
}

/// Nonempty subsets of `pool`, by size and then lexicographically.
pub fn subsets_by_size(pool: VertexSet) -> impl Iterator<Item = VertexSet> {
    let items: Vec<usize> = pool.iter().collect();
    let m = items.len();
    (1..=m).flat_map(move |k| {
        let items = items.clone();
        Combinations::new(m, k).map(move |idx| idx.iter().map(|&i| items[i]).collect())
    })
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// First `X ⊆ V(G) ∖ V(H)`, smallest first, with `G[X]` `r`-deletable.
pub fn deletable_subgraph_search(g: &Graph, h: &Subgraph, r: usize, budget: u128) -> Result<SearchOutcome> {
    h.check_within(g)?;
    let mut complete = true;
    let mut checked = 0;
    for x in subsets_by_size(g.vertices().difference(h.vertices)) {
        checked += 1;
        let v = is_deletable(g, &Subgraph::induced(g, x), r, budget)?;
        match v.status {
            DeletabilityStatus::Deletable => {
                return Ok(SearchOutcome {
                    found: Some(x),
                    complete,
                    candidates_checked: checked,
                })
            }
            DeletabilityStatus::UnknownBudget => complete = false,
            DeletabilityStatus::NotDeletable => {}
        }
    }
    Ok(SearchOutcome {
        found: None,
        complete,
        candidates_checked: checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheegerVerdict {
    pub holds: bool,
    /// No interior vertices: the inequality holds trivially.
    pub vacuous: bool,
    pub interior: usize,
    pub boundary: usize,
    #[serde(with = "rational")]
    pub c: Rational,
}

/// `#interior ≤ c·(|D| − 1)` where `D` is the vertex set of the outer walk.
pub fn cheeger_disk_check(pg: &PlaneGraph, boundary: &[usize], c: Rational) -> Result<CheegerVerdict> {
    let d: VertexSet = boundary.iter().copied().collect();
    if d != pg.outer_vertices() {
        return Err(Error::PreconditionViolation(format!(
            "boundary {d:?} is not the vertex set {:?} of the outer walk",
            pg.outer_vertices()
        )));
    }
    let interior = pg.vertex_count() - d.len();
    let lhs = Ratio::from_integer(interior as i64);
    let rhs = c * (d.len() as i64 - 1);
    Ok(CheegerVerdict {
        holds: lhs <= rhs,
        vacuous: interior == 0,
        interior,
        boundary: d.len(),
        c,
    })
}
