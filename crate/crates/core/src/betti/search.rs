//! Enumeration of the diagrams reachable by consecutive cancellation.
//!
//! Cancellations in different internal degrees commute and never interact,
//! so a reachable diagram is fixed by choosing, in each degree `j`, how much
//! to cancel between every column pair `(i, i+1)`. The search walks the
//! degrees from the top down and tries every such choice, so each reachable
//! diagram is produced exactly once. With a threshold it only descends into
//! branches that can still reach a diagram whose maximal-shift product is
//! below it.

use alloc::vec;
use alloc::vec::Vec;

use super::BettiDiagram;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes expanded, including partial assignments.
    pub nodes: usize,
    /// Diagrams handed to the visitor.
    pub visited: usize,
    /// The node cap stopped the search early.
    pub capped: bool,
}

struct Grid {
    n: usize,
    lo: u32,
    width: usize,
    cells: Vec<u64>,
}

impl Grid {
    fn get(&self, i: usize, j: u32) -> u64 {
        self.cells[i * self.width + (j - self.lo) as usize]
    }

    fn slot(&mut self, i: usize, j: u32) -> &mut u64 {
        &mut self.cells[i * self.width + (j - self.lo) as usize]
    }

    fn to_diagram(&self) -> BettiDiagram {
        let mut entries = alloc::collections::BTreeMap::new();
        for i in 0..=self.n {
            for k in 0..self.width {
                let v = self.cells[i * self.width + k];
                if v > 0 {
                    entries.insert((i, self.lo + k as u32), v);
                }
            }
        }
        BettiDiagram { n: self.n, entries }
    }
}

struct Search<'a, F> {
    grid: Grid,
    /// Degrees where some cancellation is possible, descending.
    open: Vec<u32>,
    /// Columns whose maximal shifts enter the product.
    columns: usize,
    threshold: Option<u64>,
    cap: usize,
    stats: SearchStats,
    visit: &'a mut F,
}

impl<F: FnMut(&BettiDiagram)> Search<'_, F> {
    /// Lower bound on the maximal-shift product of any completion when the
    /// first `done` open degrees are fixed; `None` if some column must end
    /// up empty.
    fn product_lower_bound(&self, done: usize) -> Option<u64> {
        let pending = &self.open[done..];
        let n = self.grid.n;
        let mut product = 1u64;
        for i in 1..=self.columns {
            let mut settled: Option<u32> = None;
            let mut lowest_pending: Option<u32> = None;
            for k in (0..self.grid.width).rev() {
                let j = self.grid.lo + k as u32;
                let v = self.grid.get(i, j);
                if v == 0 {
                    continue;
                }
                if pending.contains(&j) {
                    let left = if i >= 2 { self.grid.get(i - 1, j) } else { 0 };
                    let right = if i < n { self.grid.get(i + 1, j) } else { 0 };
                    if v > left + right {
                        settled = Some(settled.map_or(j, |s| s.max(j)));
                    }
                    lowest_pending = Some(j);
                } else {
                    settled = Some(settled.map_or(j, |s| s.max(j)));
                }
            }
            let bound = settled.or(lowest_pending)?;
            product = product.saturating_mul(u64::from(bound));
        }
        Some(product)
    }

    fn admissible(&self, done: usize) -> bool {
        match self.threshold {
            None => true,
            Some(t) => self.product_lower_bound(done).is_some_and(|p| p < t),
        }
    }

    fn descend(&mut self, done: usize) {
        if self.stats.capped {
            return;
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.cap {
            self.stats.capped = true;
            return;
        }
        if !self.admissible(done) {
            return;
        }
        if done == self.open.len() {
            self.stats.visited += 1;
            let d = self.grid.to_diagram();
            (self.visit)(&d);
            return;
        }
        let j = self.open[done];
        self.choose(done, j, 1);
    }

    /// Picks the cancellation count for pair `(i, i+1)` in degree `j`, then
    /// moves on to the next pair or the next degree.
    fn choose(&mut self, done: usize, j: u32, i: usize) {
        if i >= self.grid.n {
            self.descend(done + 1);
            return;
        }
        let most = self.grid.get(i, j).min(self.grid.get(i + 1, j));
        for c in 0..=most {
            if self.stats.capped {
                break;
            }
            *self.grid.slot(i, j) -= c;
            *self.grid.slot(i + 1, j) -= c;
            self.choose(done, j, i + 1);
            *self.grid.slot(i, j) += c;
            *self.grid.slot(i + 1, j) += c;
        }
    }
}

/// Calls `visit` once for every diagram reachable from `base` by
/// consecutive cancellations, or, with `threshold = Some(t)`, for every
/// reachable diagram whose columns `1..=pd(base)` are nonempty and whose
/// maximal shifts multiply to less than `t`.
///
/// At most `node_cap` search nodes are expanded; hitting the cap sets
/// `capped` and the visited set is then incomplete.
pub fn for_each_reachable<F>(
    base: &BettiDiagram,
    threshold: Option<u64>,
    node_cap: usize,
    mut visit: F,
) -> SearchStats
where
    F: FnMut(&BettiDiagram),
{
    let n = base.n;
    let degrees: Vec<u32> = base.entries.keys().map(|&(_, j)| j).collect();
    let lo = degrees.iter().copied().min().unwrap_or(0);
    let hi = degrees.iter().copied().max().unwrap_or(0);
    let width = (hi - lo) as usize + 1;
    let mut grid = Grid { n, lo, width, cells: vec![0; (n + 1) * width] };
    for (&(i, j), &v) in &base.entries {
        *grid.slot(i, j) = v;
    }
    let mut open: Vec<u32> = (lo..=hi)
        .filter(|&j| (1..n).any(|i| grid.get(i, j) > 0 && grid.get(i + 1, j) > 0))
        .collect();
    open.reverse();
    let mut search = Search {
        grid,
        open,
        columns: base.projective_dimension(),
        threshold,
        cap: node_cap,
        stats: SearchStats::default(),
        visit: &mut visit,
    };
    search.descend(0);
    search.stats
}
