//! Assignments compiled to bitmask domains and per-edge conflict tables.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::correspondence::{Colour, CorrespondenceAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Colours of `v` are addressed by their index in `colours[v]`. For the dart
/// `v → nbrs[v][j]`, `conf[offset[v] + j * sizes[v] + i]` is the mask of colour
/// indices at the neighbour that clash with colour index `i` at `v`.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub n: usize,
    pub adj: Vec<u64>,
    pub colours: Vec<Vec<Colour>>,
    pub nbrs: Vec<Vec<usize>>,
    offset: Vec<usize>,
    conf: Vec<u64>,
}

impl Problem {
    pub fn new(g: &Graph, a: &CorrespondenceAssignment) -> Result<Self> {
        a.check(g)?;
        let n = g.vertex_count();
        let mut colours = Vec::with_capacity(n);
        for (v, l) in a.lists.iter().enumerate() {
            if l.len() > 64 {
                return Err(Error::InvalidAssignment(format!(
                    "list of {v} has {} colours; at most 64 are supported",
                    l.len()
                )));
            }
            let mut l = l.clone();
            l.sort_unstable();
            colours.push(l);
        }
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).iter().collect()).collect();
        let mut offset = Vec::with_capacity(n);
        let mut total = 0;
        for v in 0..n {
            offset.push(total);
            total += nbrs[v].len() * colours[v].len();
        }
        let mut conf = vec![0u64; total];
        let slot = |v: usize, w: usize| (g.neighbours(v).0 & ((1u64 << w) - 1)).count_ones() as usize;
        for (e, pairs) in &a.matchings {
            let (u, w) = (e.0, e.1);
            let (ju, jw) = (slot(u, w), slot(w, u));
            for &(x, y) in pairs {
                let (Ok(i), Ok(k)) = (colours[u].binary_search(&x), colours[w].binary_search(&y)) else {
                    continue;
                };
                conf[offset[u] + ju * colours[u].len() + i] |= 1u64 << k;
                conf[offset[w] + jw * colours[w].len() + k] |= 1u64 << i;
            }
        }
        Ok(Problem {
            n,
            adj: (0..n).map(|v| g.neighbours(v).0).collect(),
            colours,
            nbrs,
            offset,
            conf,
        })
    }

    pub fn size(&self, v: usize) -> usize {
        self.colours[v].len()
    }

    pub fn full_domains(&self) -> Vec<u64> {
        self.colours
            .iter()
            .map(|l| if l.len() == 64 { u64::MAX } else { (1u64 << l.len()) - 1 })
            .collect()
    }

    /// Clash mask at the `j`-th neighbour of `v` for colour index `i` at `v`.
    #[inline]
    pub fn clash(&self, v: usize, j: usize, i: usize) -> u64 {
        self.conf[self.offset[v] + j * self.colours[v].len() + i]
    }

    pub fn index_of(&self, v: usize, c: Colour) -> Option<usize> {
        self.colours[v].binary_search(&c).ok()
    }

    /// Whether the product of list sizes fits in a `u128`.
    pub fn fits_u128(&self) -> bool {
        self.colours
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.len().max(1) as u128))
            .is_some()
    }

    pub fn fits_u64(&self) -> bool {
        self.colours
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.len().max(1) as u64))
            .is_some()
    }
}

/// Counter arithmetic, so the hot loop runs on `u128` whenever it cannot overflow.
pub(crate) trait Tally: Clone + Send + Sync {
    fn nil() -> Self;
    fn one() -> Self;
    fn small(x: u64) -> Self;
    fn is_nil(&self) -> bool;
    fn add(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn into_big(self) -> BigUint;
}

impl Tally for u128 {
    fn nil() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn small(x: u64) -> Self {
        x as u128
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add(&mut self, other: &Self) {
        *self += *other;
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Tally for BigUint {
    fn nil() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn small(x: u64) -> Self {
        BigUint::from(x)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn into_big(self) -> BigUint {
        self
    }
}
