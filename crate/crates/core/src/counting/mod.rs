//! Exact counting and enumeration of correspondence colourings.

mod backtrack;
pub mod frontier;
mod problem;

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::correspondence::{
    Colour, CorrespondenceAssignment, PartialColouring, PermutationSpace,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::subgraph::Subgraph;

use backtrack::{full_mask, Counter};
pub use frontier::{frontier_count, FRONTIER_STATE_CAP};
pub(crate) use problem::Problem;
use problem::Tally;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    #[serde(with = "decimal")]
    pub count: BigUint,
    pub explored_nodes: u64,
    /// The budget ran out; `count` is then a lower bound.
    pub truncated: bool,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal count: {s:?}")))
    }
}

impl CountResult {
    pub fn exact(count: BigUint) -> Self {
        CountResult {
            count,
            explored_nodes: 0,
            truncated: false,
        }
    }
}

/// Search limits. The node budget applies to each top-level branch separately,
/// so results do not depend on how branches are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountConfig {
    pub node_budget: u64,
    pub parallel: bool,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl CountConfig {
    pub fn sequential() -> Self {
        CountConfig {
            parallel: false,
            ..Default::default()
        }
    }

    pub fn with_budget(node_budget: u64) -> Self {
        CountConfig {
            node_budget,
            ..Default::default()
        }
    }
}

fn count_problem(p: &Problem, dom: Vec<u64>, config: &CountConfig) -> CountResult {
    if p.fits_u128() {
        count_with::<u128>(p, dom, config)
    } else {
        count_with::<BigUint>(p, dom, config)
    }
}

fn count_with<T: Tally>(p: &Problem, dom: Vec<u64>, config: &CountConfig) -> CountResult {
    let all = full_mask(p.n);
    if p.n == 0 {
        return CountResult::exact(BigUint::from(1u8));
    }
    if dom.contains(&0) {
        return CountResult::exact(BigUint::zero());
    }
    // split on the first branching vertex
    let mut root = 0;
    for v in 1..p.n {
        if dom[v].count_ones() < dom[root].count_ones() {
            root = v;
        }
    }
    let rest = all & !(1u64 << root);
    let colours: Vec<usize> = (0..64).filter(|i| dom[root] >> i & 1 == 1).collect();
    let branch = |i: &usize| -> (T, u64, bool) {
        let mut dom2 = dom.clone();
        dom2[root] = 1u64 << i;
        let mut ok = true;
        for (j, &w) in p.nbrs[root].iter().enumerate() {
            dom2[w] &= !p.clash(root, j, *i);
            ok &= dom2[w] != 0;
        }
        if !ok {
            return (T::nil(), 1, false);
        }
        let mut c = Counter::new(p, dom2, config.node_budget);
        let x: T = c.count(rest);
        (x, c.nodes + 1, c.truncated)
    };
    let parts: Vec<(T, u64, bool)> = run_branches(&colours, config.parallel, branch);
    let mut total = T::nil();
    let mut nodes = 0;
    let mut truncated = false;
    for (x, k, t) in parts {
        total.add(&x);
        nodes += k;
        truncated |= t;
    }
    CountResult {
        count: total.into_big(),
        explored_nodes: nodes,
        truncated,
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn run_branches<I, O, F>(items: &[I], parallel: bool, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_branches<I, O, F>(items: &[I], _parallel: bool, f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    items.iter().map(f).collect()
}

/// Exact number of `(L, M)`-colourings of `g`.
pub fn count_colourings(
    g: &Graph,
    a: &CorrespondenceAssignment,
    config: &CountConfig,
) -> Result<CountResult> {
    let p = Problem::new(g, a)?;
    let dom = p.full_domains();
    Ok(count_problem(&p, dom, config))
}

/// Number of colourings of `g` agreeing with `phi`, which must colour exactly `V(s)`
/// and be a valid colouring of `s`.
pub fn count_extensions(
    g: &Graph,
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    phi: &PartialColouring,
    config: &CountConfig,
) -> Result<CountResult> {
    let p = Problem::new(g, a)?;
    let dom = precoloured_domains(&p, g, a, s, phi)?;
    Ok(count_problem(&p, dom, config))
}

fn precoloured_domains(
    p: &Problem,
    g: &Graph,
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    phi: &PartialColouring,
) -> Result<Vec<u64>> {
    s.check_within(g)?;
    if phi.domain() != s.vertices {
        return Err(Error::InvalidColouring(format!(
            "colouring covers {:?}, subgraph has vertices {:?}",
            phi.domain(),
            s.vertices
        )));
    }
    check_on_subgraph(a, s, phi)?;
    let mut dom = p.full_domains();
    for (&v, &c) in &phi.0 {
        let i = p.index_of(v, c).ok_or_else(|| {
            Error::InvalidColouring(format!("colour {c} is not in the list of {v}"))
        })?;
        dom[v] = 1u64 << i;
    }
    Ok(dom)
}

fn check_on_subgraph(
    a: &CorrespondenceAssignment,
    s: &Subgraph,
    phi: &PartialColouring,
) -> Result<()> {
    for e in &s.edges {
        if let (Some(x), Some(y)) = (phi.get(e.0), phi.get(e.1)) {
            if a.matching(*e).contains(&(x, y)) {
                return Err(Error::InvalidColouring(format!(
                    "colours {x} and {y} are matched on edge {e}"
                )));
            }
        }
    }
    Ok(())
}

/// Some colouring of `g` agreeing with `fixed`, by the same search as counting.
pub fn find_colouring(
    g: &Graph,
    a: &CorrespondenceAssignment,
    fixed: &PartialColouring,
    node_budget: u64,
) -> Result<Option<PartialColouring>> {
    let p = Problem::new(g, a)?;
    let mut dom = p.full_domains();
    for (&v, &c) in &fixed.0 {
        if v >= p.n {
            return Err(Error::UnknownVertex(v));
        }
        match p.index_of(v, c) {
            Some(i) => dom[v] = 1u64 << i,
            None => return Ok(None),
        }
    }
    if dom.contains(&0) {
        return Ok(None);
    }
    let mut c = Counter::new(&p, dom, node_budget);
    let found = c.find(full_mask(p.n));
    if c.truncated {
        return Err(Error::BudgetExceeded(format!(
            "colouring search stopped after {node_budget} nodes"
        )));
    }
    Ok(found.map(|idx| {
        PartialColouring(
            idx.iter()
                .enumerate()
                .map(|(v, &i)| (v, p.colours[v][i]))
                .collect(),
        )
    }))
}

/// Calls `f` on each colouring (colours indexed by vertex) in lexicographic order.
pub fn for_each_colouring<F>(g: &Graph, a: &CorrespondenceAssignment, mut f: F) -> Result<()>
where
    F: FnMut(&[Colour]) -> ControlFlow<()>,
{
    let p = Problem::new(g, a)?;
    let dom = p.full_domains();
    if dom.contains(&0) {
        return Ok(());
    }
    let mut c = Counter::new(&p, dom, u64::MAX);
    let mut buf = vec![0; p.n];
    let _ = c.visit(0, &mut |idx: &[usize]| {
        for v in 0..p.n {
            buf[v] = p.colours[v][idx[v]];
        }
        f(&buf)
    });
    Ok(())
}

/// Up to `cap` colourings in lexicographic order (all of them when `cap` is `None`).
pub fn enumerate_colourings(
    g: &Graph,
    a: &CorrespondenceAssignment,
    cap: Option<usize>,
) -> Result<Vec<PartialColouring>> {
    let mut out = Vec::new();
    if cap == Some(0) {
        return Ok(out);
    }
    for_each_colouring(g, a, |c| {
        out.push(PartialColouring::from_full(c));
        if Some(out.len()) == cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Minimum count with the smallest-index assignment attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimumCount {
    pub result: CountResult,
    pub witness: CorrespondenceAssignment,
    pub witness_index: u128,
    pub assignments_checked: u128,
}

/// Minimum of [`count_colourings`] over every full-permutation `k`-assignment.
pub fn min_count_over_permutations(
    g: &Graph,
    k: usize,
    budget: u128,
    config: &CountConfig,
) -> Result<MinimumCount> {
    let space = PermutationSpace::new(g, k, budget)?;
    minimise(space.len(), |i| Ok(space.get(i)), g, config)
}

fn minimise<F>(total: u128, get: F, g: &Graph, config: &CountConfig) -> Result<MinimumCount>
where
    F: Fn(u128) -> Result<CorrespondenceAssignment> + Sync,
{
    let inner = CountConfig {
        parallel: false,
        ..*config
    };
    let mut best: Option<MinimumCount> = None;
    let mut checked = 0u128;
    let chunk: u128 = 256;
    let mut start = 0u128;
    while start < total {
        let end = (start + chunk).min(total);
        let indices: Vec<u128> = (start..end).collect();
        let results: Vec<Result<(u128, CountResult)>> =
            run_branches(&indices, config.parallel, |&i| {
                let a = get(i)?;
                Ok((i, count_colourings(g, &a, &inner)?))
            });
        for r in results {
            let (i, res) = r?;
            checked += 1;
            if best.as_ref().is_none_or(|b| res.count < b.result.count) {
                best = Some(MinimumCount {
                    result: res,
                    witness: get(i)?,
                    witness_index: i,
                    assignments_checked: 0,
                });
            }
        }
        if best.as_ref().is_some_and(|b| b.result.count.is_zero()) {
            break;
        }
        start = end;
    }
    let mut best = match best {
        Some(b) => b,
        None => MinimumCount {
            result: count_colourings(g, &get(0)?, &inner)?,
            witness: get(0)?,
            witness_index: 0,
            assignments_checked: 0,
        },
    };
    best.assignments_checked = checked.max(1);
    Ok(best)
}

/// Spanning forest of `g` by breadth-first search from the smallest vertex of each component.
pub fn spanning_forest(g: &Graph) -> Vec<Edge> {
    let mut seen = VertexSet::EMPTY;
    let mut out = Vec::new();
    for r in 0..g.vertex_count() {
        if seen.contains(r) {
            continue;
        }
        seen.insert(r);
        let mut queue = std::collections::VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u) {
                if !seen.contains(w) {
                    seen.insert(w);
                    out.push(Edge::new(u, w));
                    queue.push_back(w);
                }
            }
        }
    }
    out.sort();
    out
}

/// As [`min_count_over_permutations`], with identity matchings on a spanning
/// forest. Renaming the colours at each vertex turns any full-permutation
/// assignment into one of these without changing the count, so the minimum
/// agrees while the space shrinks to `(k!)^(e - v + c)`.
pub fn min_count_over_permutations_reduced(
    g: &Graph,
    k: usize,
    budget: u128,
    config: &CountConfig,
) -> Result<MinimumCount> {
    let forest = spanning_forest(g);
    let mut cotree = g.clone();
    for e in &forest {
        cotree.delete_edge(e.0, e.1);
    }
    let space = PermutationSpace::new(&cotree, k, budget)?;
    let get = |i: u128| -> Result<CorrespondenceAssignment> {
        let mut a = space.get(i);
        for e in &forest {
            a.matchings
                .insert(*e, (0..k as Colour).map(|c| (c, c)).collect());
        }
        Ok(a)
    };
    minimise(space.len(), get, g, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{from_lists, uniform};
    use crate::families;

    fn count(g: &Graph, a: &CorrespondenceAssignment) -> u64 {
        let r = count_colourings(g, a, &CountConfig::default()).unwrap();
        assert!(!r.truncated);
        r.count.try_into().unwrap()
    }

    #[test]
    fn count_examples() {
        let c5 = families::cycle(5).unwrap();
        assert_eq!(count(&c5, &uniform(&c5, 3)), 30);
        let one = Graph::empty(1).unwrap();
        assert_eq!(count(&one, &uniform(&one, 5)), 5);
        let edge = families::path(2).unwrap();
        let a = from_lists(&edge, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(count(&edge, &a), 0);
        let k4 = families::complete(4).unwrap();
        assert_eq!(count(&k4, &uniform(&k4, 5)), 120);
        assert_eq!(count(&Graph::empty(0).unwrap(), &uniform(&Graph::empty(0).unwrap(), 3)), 1);
    }

    #[test]
    fn extension_examples() {
        let c5 = families::cycle(5).unwrap();
        let a = uniform(&c5, 3);
        let s = Subgraph::induced(&c5, VertexSet::singleton(0));
        let mut phi = PartialColouring::new();
        phi.set(0, 1);
        let r = count_extensions(&c5, &a, &s, &phi, &CountConfig::default()).unwrap();
        assert_eq!(r.count, BigUint::from(10u8));

        let whole = Subgraph::whole(&c5);
        let full = PartialColouring::from_full(&[0, 1, 0, 1, 2]);
        let r = count_extensions(&c5, &a, &whole, &full, &CountConfig::default()).unwrap();
        assert_eq!(r.count, BigUint::from(1u8));

        let bad = PartialColouring::from_full(&[0, 0, 1, 0, 1]);
        assert!(count_extensions(&c5, &a, &whole, &bad, &CountConfig::default()).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let c3 = families::cycle(3).unwrap();
        let all = enumerate_colourings(&c3, &uniform(&c3, 3), None).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], PartialColouring::from_full(&[0, 1, 2]));
        assert_eq!(all[5], PartialColouring::from_full(&[2, 1, 0]));
        let one = enumerate_colourings(&c3, &uniform(&c3, 3), Some(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert!(enumerate_colourings(&c3, &uniform(&c3, 2), None).unwrap().is_empty());
    }

    #[test]
    fn minimum_examples() {
        let edge = families::path(2).unwrap();
        let m = min_count_over_permutations(&edge, 3, 1000, &CountConfig::default()).unwrap();
        assert_eq!(m.result.count, BigUint::from(6u8));
        let c5 = families::cycle(5).unwrap();
        let m = min_count_over_permutations(&c5, 3, 10_000, &CountConfig::default()).unwrap();
        assert!(m.result.count >= BigUint::from(2u8));
        let r = min_count_over_permutations_reduced(&c5, 3, 10_000, &CountConfig::default())
            .unwrap();
        assert_eq!(r.result.count, m.result.count);
        assert_eq!(r.assignments_checked, 6);
        let tri = families::cycle(3).unwrap();
        let m = min_count_over_permutations(&tri, 1, 10, &CountConfig::default()).unwrap();
        assert_eq!(m.result.count, BigUint::zero());
    }

    #[test]
    fn truncation_is_flagged() {
        let g = families::grid(3, 4).unwrap();
        let r = count_colourings(&g, &uniform(&g, 4), &CountConfig::with_budget(50)).unwrap();
        assert!(r.truncated);
        let full = count_colourings(&g, &uniform(&g, 4), &CountConfig::default()).unwrap();
        assert!(!full.truncated);
        assert!(r.count <= full.count);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = families::grid(3, 3).unwrap();
        let a = uniform(&g, 4);
        let par = count_colourings(&g, &a, &CountConfig::default()).unwrap();
        let seq = count_colourings(&g, &a, &CountConfig::sequential()).unwrap();
        assert_eq!(par, seq);
    }
}
