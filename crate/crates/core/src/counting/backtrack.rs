//! Backtracking with fewest-colours-first ordering, forward checking, and
//! splitting into independent components of the uncoloured vertices.

use std::ops::ControlFlow;

use super::problem::{Problem, Tally};

pub(crate) struct Counter<'a> {
    p: &'a Problem,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    pub nodes: u64,
    budget: u64,
    pub truncated: bool,
}

impl<'a> Counter<'a> {
    pub fn new(p: &'a Problem, dom: Vec<u64>, budget: u64) -> Self {
        Counter {
            p,
            dom,
            trail: Vec::new(),
            nodes: 0,
            budget,
            truncated: false,
        }
    }

    /// Colour index `i` at `v`: prunes the neighbours in `free`. Returns false
    /// on a wipe-out; the caller undoes the trail down to its mark either way.
    fn assign(&mut self, v: usize, i: usize, free: u64) -> bool {
        self.trail.push((v, self.dom[v]));
        self.dom[v] = 1u64 << i;
        for (j, &w) in self.p.nbrs[v].iter().enumerate() {
            if free >> w & 1 == 0 {
                continue;
            }
            let clash = self.p.clash(v, j, i);
            if self.dom[w] & clash != 0 {
                self.trail.push((w, self.dom[w]));
                self.dom[w] &= !clash;
                if self.dom[w] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, d) = self.trail.pop().expect("trail entry");
            self.dom[v] = d;
        }
    }

    fn component(&self, start: usize, free: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.p.adj[v];
            }
            next &= free & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Number of colourings of the uncoloured vertices `free` given the current domains.
    pub fn count<T: Tally>(&mut self, free: u64) -> T {
        let mut total = T::one();
        let mut left = free;
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let comp = self.component(start, free);
            left &= !comp;
            let part: T = self.count_connected(comp);
            if part.is_nil() {
                return T::nil();
            }
            total = total.times(&part);
        }
        total
    }

    fn count_connected<T: Tally>(&mut self, comp: u64) -> T {
        if comp & (comp - 1) == 0 {
            let v = comp.trailing_zeros() as usize;
            return T::small(self.dom[v].count_ones() as u64);
        }
        let v = self.pick(comp);
        let rest = comp & !(1u64 << v);
        let mut d = self.dom[v];
        let mut total = T::nil();
        while d != 0 {
            let i = d.trailing_zeros() as usize;
            d &= d - 1;
            if self.nodes >= self.budget {
                self.truncated = true;
                break;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, i, rest) {
                let sub: T = self.count(rest);
                total.add(&sub);
            }
            self.undo(mark);
        }
        total
    }

    /// Fewest remaining colours, smallest id on ties.
    fn pick(&self, set: u64) -> usize {
        let mut best = usize::MAX;
        let mut best_size = u32::MAX;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            let size = self.dom[v].count_ones();
            if size < best_size {
                best = v;
                best_size = size;
            }
        }
        best
    }

    /// Some colouring (as colour indices) of the vertices in `free`, together
    /// with the values already fixed in the domains of the others.
    pub fn find(&mut self, free: u64) -> Option<Vec<usize>> {
        if self.search(free) {
            Some(
                self.dom
                    .iter()
                    .map(|d| if *d == 0 { usize::MAX } else { d.trailing_zeros() as usize })
                    .collect(),
            )
        } else {
            None
        }
    }

    fn search(&mut self, free: u64) -> bool {
        if free == 0 {
            return true;
        }
        let v = self.pick(free);
        let rest = free & !(1u64 << v);
        let mut d = self.dom[v];
        while d != 0 {
            let i = d.trailing_zeros() as usize;
            d &= d - 1;
            if self.nodes >= self.budget {
                self.truncated = true;
                return false;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, i, rest) && self.search(rest) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    /// Visits colourings in lexicographic order of `(c(0), c(1), ...)` with
    /// colours compared by value.
    pub fn visit<F>(&mut self, v: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if v == self.p.n {
            let idx: Vec<usize> = self.dom.iter().map(|d| d.trailing_zeros() as usize).collect();
            return f(&idx);
        }
        let rest = if v + 1 >= 64 { 0 } else { !0u64 << (v + 1) } & full_mask(self.p.n);
        let mut d = self.dom[v];
        while d != 0 {
            let i = d.trailing_zeros() as usize;
            d &= d - 1;
            self.nodes += 1;
            let mark = self.trail.len();
            let ok = self.assign(v, i, rest);
            let flow = if ok { self.visit(v + 1, f) } else { ControlFlow::Continue(()) };
            self.undo(mark);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
