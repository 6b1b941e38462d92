//! Graded Betti diagrams and consecutive cancellation.
//!
//! `β_{i,j}` is stored under homological index `i` and internal degree `j`
//! and printed at row `j - i`, column `i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{binomial, checked_product, factorial, Ratio};
use crate::hilbert::HilbertFunction;
use crate::monomial::MonomialIdeal;
use crate::{Error, Result};

mod format;
pub mod search;

pub use format::{parse_layout, parse_machine};
pub use search::{for_each_reachable, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BettiDiagram {
    n: usize,
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiDiagram {
    /// Collects nonzero entries; repeated keys are summed. Homological
    /// indices above `n` are rejected.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, u32), u64)>,
    {
        let mut map = BTreeMap::new();
        for ((i, j), v) in entries {
            if i > n {
                return Err(Error::Malformed(format!("homological index {i} exceeds {n}")));
            }
            if v > 0 {
                let slot = map.entry((i, j)).or_insert(0u64);
                *slot = slot.checked_add(v).ok_or(Error::Overflow("betti entry"))?;
            }
        }
        Ok(BettiDiagram { n, entries: map })
    }

    /// The diagram of `R/I` must have `β_{0,0} = 1` and nothing else in
    /// column 0.
    pub fn is_cyclic_quotient(&self) -> bool {
        self.column(0).eq([(0u32, 1u64)])
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// `(j, β_{i,j})` for the nonzero entries of column `i`, by degree.
    pub fn column(&self, i: usize) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.entries.range((i, 0)..=(i, u32::MAX)).map(|(&(_, j), &v)| (j, v))
    }

    pub fn column_total(&self, i: usize) -> u64 {
        self.column(i).map(|(_, v)| v).sum()
    }

    /// Largest homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.projective_dimension()).map(|i| self.column_total(i)).collect()
    }

    /// `max(j - i)` over the nonzero entries.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| i64::from(j) - i as i64).max()
    }

    fn set(&mut self, i: usize, j: u32, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Removes `count` from both `β_{i,j}` and `β_{i+1,j}`.
    pub fn cancel(&self, i: usize, j: u32, count: u64) -> Result<Self> {
        let fail = Error::CannotCancel { i, j, count };
        if i == 0 || i + 1 > self.n || count == 0 {
            return Err(fail);
        }
        let (a, b) = (self.get(i, j), self.get(i + 1, j));
        if a < count || b < count {
            return Err(fail);
        }
        let mut out = self.clone();
        out.set(i, j, a - count);
        out.set(i + 1, j, b - count);
        Ok(out)
    }

    fn cancel_pair_maximally(&mut self, i: usize) {
        let degrees: Vec<u32> = self.column(i).map(|(j, _)| j).collect();
        for &j in degrees.iter().rev() {
            let c = self.get(i, j).min(self.get(i + 1, j));
            if c > 0 {
                let (a, b) = (self.get(i, j), self.get(i + 1, j));
                self.set(i, j, a - c);
                self.set(i + 1, j, b - c);
            }
        }
    }

    /// Diagrams after cancelling each column pair `(1,2), (2,3), ...` as far
    /// as possible, in that order; the last one is the greedy minimum.
    pub fn greedy_stages(&self) -> Vec<BettiDiagram> {
        let mut current = self.clone();
        let mut stages = Vec::new();
        for i in 1..self.n {
            current.cancel_pair_maximally(i);
            stages.push(current.clone());
        }
        stages
    }

    /// Left to right over column pairs, high degrees first, maximal counts.
    pub fn greedy_minimize(&self) -> BettiDiagram {
        self.greedy_stages().pop().unwrap_or_else(|| self.clone())
    }

    fn column_extremes(&self, pick_max: bool) -> Result<Vec<u32>> {
        let p = self.projective_dimension();
        (1..=p)
            .map(|i| {
                let mut col = self.column(i).map(|(j, _)| j);
                let value = if pick_max { col.last() } else { col.next() };
                value.ok_or_else(|| Error::Malformed(format!("column {i} is empty")))
            })
            .collect()
    }

    /// `(M_1, ..., M_p)`.
    pub fn max_shifts(&self) -> Result<Vec<u32>> {
        self.column_extremes(true)
    }

    /// `(m_1, ..., m_p)`.
    pub fn min_shifts(&self) -> Result<Vec<u32>> {
        self.column_extremes(false)
    }

    pub fn is_pure(&self) -> bool {
        let p = self.projective_dimension();
        (1..=p).all(|i| self.column(i).count() == 1)
    }

    /// `M_{i-1} <= m_i` for all `i >= 2`.
    pub fn is_quasipure(&self) -> bool {
        match (self.max_shifts(), self.min_shifts()) {
            (Ok(big), Ok(small)) => (1..big.len()).all(|k| big[k - 1] <= small[k]),
            _ => false,
        }
    }

    /// `(d_1 ... d_c) / c!` for a pure diagram of projective dimension `c`.
    pub fn huneke_miller(&self, c: usize) -> Result<Ratio> {
        if !self.is_pure() || self.projective_dimension() != c {
            return Err(Error::NotPure);
        }
        let shifts = self.max_shifts()?;
        let numer = checked_product(shifts.iter().map(|&d| u64::from(d)))?;
        Ok(Ratio::new(numer, factorial(c as u64)?))
    }

    /// Coefficients of `sum (-1)^i β_{i,j} t^j`.
    pub fn hilbert_numerator(&self) -> Vec<i128> {
        let top = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut num = vec![0i128; top + 1];
        for (&(i, j), &v) in &self.entries {
            let v = i128::from(v);
            num[j as usize] += if i % 2 == 0 { v } else { -v };
        }
        num
    }

    /// Hilbert function recovered as numerator / (1 - t)^n, which must be a
    /// polynomial with nonnegative coefficients.
    pub fn hilbert_function(&self) -> Result<HilbertFunction> {
        let mut poly = self.hilbert_numerator();
        for step in 0..self.n {
            if poly.iter().sum::<i128>() != 0 {
                return Err(Error::InconsistentDiagram(format!(
                    "numerator not divisible by (1-t)^{}",
                    step + 1
                )));
            }
            let mut acc = 0i128;
            let mut quotient = Vec::with_capacity(poly.len());
            for c in &poly {
                acc += c;
                quotient.push(acc);
            }
            // the last prefix sum is the zero total
            quotient.pop();
            poly = quotient;
        }
        let mut values = Vec::with_capacity(poly.len());
        for (d, c) in poly.into_iter().enumerate() {
            let v = u64::try_from(c).map_err(|_| {
                Error::InconsistentDiagram(format!("coefficient {c} in degree {d}"))
            })?;
            values.push(v);
        }
        HilbertFunction::new(values).map_err(|_| Error::InconsistentDiagram("H(0) != 1".into()))
    }

    /// `M_i >= M_{i-1} + 1` for all consecutive nonempty columns `i >= 2`.
    pub fn check_shift_growth(&self) -> bool {
        let mut prev: Option<u32> = None;
        for i in 1..=self.projective_dimension() {
            let Some((top, _)) = self.column(i).last() else {
                prev = None;
                continue;
            };
            if let Some(p) = prev {
                if top < p + 1 {
                    return false;
                }
            }
            prev = Some(top);
        }
        true
    }

    /// Rotates the diagram: `(i, j) -> (c - i, d - j)`.
    pub fn dual(&self, c: usize, d: u32) -> Result<BettiDiagram> {
        let mut out = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            if i > c || j > d {
                return Err(Error::Malformed(format!("entry ({i},{j}) lies outside the rotation")));
            }
            out.insert((c - i, d - j), v);
        }
        Ok(BettiDiagram { n: self.n, entries: out })
    }

    /// Every nonzero entry of `self` is at most the matching entry of `other`.
    pub fn is_dominated_by(&self, other: &BettiDiagram) -> bool {
        self.entries.iter().all(|(&(i, j), &v)| v <= other.get(i, j))
    }

    /// No consecutive cancellation applies.
    pub fn is_fully_cancelled(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == 0 || i + 1 > self.n || self.get(i + 1, j) == 0)
    }
}

/// Betti numbers of `R/I` for a stable ideal:
/// `β_{i+1, i+j} = sum over generators u of degree j of C(max(u) - 1, i)`.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<BettiDiagram> {
    if !ideal.is_stable() {
        return Err(Error::NotStable);
    }
    ek_betti_unchecked(ideal)
}

/// The Eliahou-Kervaire count without the stability check, for callers
/// that built the ideal as a lex segment.
pub fn ek_betti_unchecked(ideal: &MonomialIdeal) -> Result<BettiDiagram> {
    let n = ideal.nvars();
    let mut entries = BTreeMap::new();
    entries.insert((0usize, 0u32), 1u64);
    for g in ideal.generators() {
        let top = g.max_var() as u64;
        let deg = g.degree();
        for i in 0..top {
            let c = binomial(top - 1, i)?;
            let slot = entries.entry((i as usize + 1, deg + i as u32)).or_insert(0u64);
            *slot = slot.checked_add(c).ok_or(Error::Overflow("ek_betti"))?;
        }
    }
    BettiDiagram::from_entries(n, entries)
}

#[cfg(test)]
mod tests;
