//! Counting by sweeping the vertices in order and keeping, for every colouring
//! of the frontier (processed vertices with unprocessed neighbours), the number
//! of ways to colour the processed part. Fast when the frontier stays small.

use num_bigint::BigUint;

use super::problem::Problem;
use crate::correspondence::CorrespondenceAssignment;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest state table the sweep will allocate.
pub const FRONTIER_STATE_CAP: usize = 1 << 24;

/// A vertex order keeping the frontier small: repeatedly take the vertex with
/// the most processed neighbours, then the fewest unprocessed ones, then the smallest id.
fn sweep_order(p: &Problem) -> Vec<usize> {
    let mut done = 0u64;
    let mut order = Vec::with_capacity(p.n);
    for _ in 0..p.n {
        let mut best = usize::MAX;
        let mut key = (0u32, 0u32);
        for v in 0..p.n {
            if done >> v & 1 == 1 {
                continue;
            }
            let inside = (p.adj[v] & done).count_ones();
            let outside = (p.adj[v] & !done).count_ones();
            let k = (inside, u32::MAX - outside);
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        done |= 1u64 << best;
        order.push(best);
    }
    order
}

/// Exact number of colourings, or `BudgetExceeded` if the state table would
/// exceed [`FRONTIER_STATE_CAP`] entries.
pub fn frontier_count(g: &Graph, a: &CorrespondenceAssignment) -> Result<BigUint> {
    let p = Problem::new(g, a)?;
    if p.colours.iter().any(Vec::is_empty) {
        return Ok(BigUint::from(0u8));
    }
    if p.fits_u64() {
        sweep::<u64>(&p).map(BigUint::from)
    } else if p.fits_u128() {
        sweep::<u128>(&p).map(BigUint::from)
    } else {
        Err(Error::BudgetExceeded(
            "frontier sweep counts in u128; the list sizes are too large".into(),
        ))
    }
}

trait Cell: Copy + Default + std::ops::AddAssign + std::iter::Sum + PartialEq {
    const ONE: Self;
}

impl Cell for u64 {
    const ONE: Self = 1;
}

impl Cell for u128 {
    const ONE: Self = 1;
}

fn sweep<T: Cell>(p: &Problem) -> Result<T> {
    let zero = T::default();
    let mut frontier: Vec<usize> = Vec::new();
    let mut table: Vec<T> = Vec::with_capacity(1024);
    let mut next: Vec<T> = Vec::with_capacity(1024);
    table.push(T::ONE);
    let mut done = 0u64;
    for v in sweep_order(p) {
        let size_v = p.size(v);
        let new_len = table.len() * size_v;
        if new_len > FRONTIER_STATE_CAP {
            return Err(Error::BudgetExceeded(format!(
                "frontier table of {new_len} states exceeds {FRONTIER_STATE_CAP}"
            )));
        }
        // for each frontier neighbour w of v: its position and the dart w -> v
        let links: Vec<(usize, usize, usize)> = frontier
            .iter()
            .enumerate()
            .filter(|(_, &w)| p.adj[v] >> w & 1 == 1)
            .map(|(pos, &w)| {
                let j = p.nbrs[w].iter().position(|&x| x == v).expect("adjacent");
                (pos, w, j)
            })
            .collect();
        let radices: Vec<usize> = frontier.iter().map(|&w| p.size(w)).collect();
        let all_v = if size_v == 64 { u64::MAX } else { (1u64 << size_v) - 1 };
        next.clear();
        next.resize(new_len, zero);
        let mut digits = vec![0usize; frontier.len()];
        for (s, &ways) in table.iter().enumerate() {
            if ways != zero {
                let mut banned = 0u64;
                for &(pos, w, j) in &links {
                    banned |= p.clash(w, j, digits[pos]);
                }
                let mut free = all_v & !banned;
                while free != 0 {
                    let i = free.trailing_zeros() as usize;
                    free &= free - 1;
                    next[s * size_v + i] += ways;
                }
            }
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < radices[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
        frontier.push(v);
        std::mem::swap(&mut table, &mut next);
        done |= 1u64 << v;
        // forget vertices with no unprocessed neighbours
        let mut pos = 0;
        while pos < frontier.len() {
            if p.adj[frontier[pos]] & !done == 0 {
                sum_out(&table, &mut next, &frontier, p, pos);
                std::mem::swap(&mut table, &mut next);
                frontier.remove(pos);
            } else {
                pos += 1;
            }
        }
    }
    Ok(table.iter().copied().sum())
}

fn sum_out<T: Cell>(table: &[T], out: &mut Vec<T>, frontier: &[usize], p: &Problem, pos: usize) {
    let radix = p.size(frontier[pos]);
    let inner: usize = frontier[pos + 1..].iter().map(|&w| p.size(w)).product();
    let outer = table.len() / (radix * inner);
    out.clear();
    out.resize(outer * inner, T::default());
    for o in 0..outer {
        for d in 0..radix {
            let base = (o * radix + d) * inner;
            for i in 0..inner {
                out[o * inner + i] += table[base + i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{random_permutation_assignment, uniform};
    use crate::counting::{count_colourings, CountConfig};
    use crate::families;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_backtracking() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [
            families::cycle(7).unwrap(),
            families::grid(3, 4).unwrap(),
            families::wheel(6).unwrap(),
            families::icosahedron(),
            Graph::empty(3).unwrap(),
        ] {
            for k in 2..=5 {
                let a = random_permutation_assignment(&g, k, &mut rng);
                let bt = count_colourings(&g, &a, &CountConfig::default()).unwrap();
                assert_eq!(frontier_count(&g, &a).unwrap(), bt.count);
            }
        }
    }

    #[test]
    fn chromatic_values() {
        let c5 = families::cycle(5).unwrap();
        assert_eq!(frontier_count(&c5, &uniform(&c5, 3)).unwrap(), BigUint::from(30u8));
        let k4 = families::complete(4).unwrap();
        assert_eq!(frontier_count(&k4, &uniform(&k4, 5)).unwrap(), BigUint::from(120u8));
    }
}
