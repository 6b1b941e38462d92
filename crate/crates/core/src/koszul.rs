//! Graded Betti numbers of monomial quotients from the Koszul complex.
//!
//! `Tor_i(R/I, k)` in multidegree `α` is the `i`-th homology of the strand
//! of `K(x) ⊗ R/I` in that multidegree. Its basis is `x^{α - e_S} ⊗ e_S`
//! for subsets `S` of the support of `α` with `x^{α - e_S}` standard, so
//! every strand is a tiny complex and ranks come from dense elimination
//! over `F_p`. Homology vanishes outside the box below the lcm of the
//! generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::betti::BettiDiagram;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::verdict::{upper_bound_holds, BoundVerdict};
use crate::{Error, Result};

pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// Characteristics used by [`cross_check`] when none are given.
pub const CROSS_CHECK_CHARACTERISTICS: [u64; 3] = [2, 3, 32003];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// Rank over `F_p` of a dense row-major matrix; the matrix is consumed.
fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][col], p);
        let (top, below) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = mul_mod(row[col], inv, p);
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - mul_mod(factor, y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// One multidegree strand: basis subsets grouped by size.
struct Strand {
    /// `basis[i]` lists the subsets `S` (bitmasks) with `|S| = i`.
    basis: Vec<Vec<u32>>,
}

impl Strand {
    fn build(ideal: &MonomialIdeal, alpha: &[u32]) -> Strand {
        let n = alpha.len();
        let support: u32 = (0..n).filter(|&k| alpha[k] > 0).fold(0, |m, k| m | 1 << k);
        let mut basis = vec![Vec::new(); n + 1];
        let mut exps = alpha.to_vec();
        // enumerate subsets of the support
        let mut s = support;
        loop {
            for k in 0..n {
                exps[k] = alpha[k] - (s >> k & 1);
            }
            if !ideal.contains(&Monomial::new(exps.clone())) {
                basis[s.count_ones() as usize].push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & support;
        }
        for b in &mut basis {
            b.sort_unstable();
        }
        Strand { basis }
    }

    /// Matrix of `d_i : K_i -> K_{i-1}`, rows indexed by `basis[i-1]`.
    fn differential(&self, i: usize, p: u64) -> Vec<Vec<u64>> {
        let src = &self.basis[i];
        let dst = &self.basis[i - 1];
        let mut m = vec![vec![0u64; src.len()]; dst.len()];
        for (c, &s) in src.iter().enumerate() {
            let mut pos = 0;
            for k in 0..32 {
                if s >> k & 1 == 0 {
                    continue;
                }
                // x_k times a standard monomial may land in I, giving zero
                if let Ok(r) = dst.binary_search(&(s & !(1 << k))) {
                    m[r][c] = if pos % 2 == 0 { 1 } else { p - 1 };
                }
                pos += 1;
            }
        }
        m
    }
}

fn composes_to_zero(outer: &[Vec<u64>], inner: &[Vec<u64>], p: u64) -> bool {
    let mid = inner.len();
    outer.iter().all(|row| {
        (0..inner.first().map_or(0, Vec::len)).all(|c| {
            (0..mid).fold(0u64, |acc, k| (acc + mul_mod(row[k], inner[k][c], p)) % p) == 0
        })
    })
}

/// Betti diagram of `R/I` over `F_p` for `p = characteristic`.
///
/// A non-Artinian ideal needs `degree_cap`; entries of internal degree above
/// the cap are then left out. A cap also applies to Artinian input.
pub fn koszul_betti(ideal: &MonomialIdeal, characteristic: u64, degree_cap: Option<u32>) -> Result<BettiDiagram> {
    if !is_prime(characteristic) {
        return Err(Error::NotPrime(characteristic));
    }
    if degree_cap.is_none() && !ideal.is_artinian() {
        return Err(Error::NeedsCap);
    }
    let n = ideal.nvars();
    if n > 31 {
        return Err(Error::Malformed(format!("{n} variables is too many for the Koszul strands")));
    }
    if ideal.contains(&Monomial::one(n)) {
        return Err(Error::Malformed("unit ideal has a zero quotient".into()));
    }
    let p = characteristic;
    let lcm = ideal.lcm();
    let bound = lcm.exponents();
    let mut entries: BTreeMap<(usize, u32), u64> = BTreeMap::new();
    let mut alpha = vec![0u32; n];
    loop {
        let degree: u32 = alpha.iter().sum();
        if degree_cap.is_none_or(|cap| degree <= cap) {
            let strand = Strand::build(ideal, &alpha);
            let ranks: Vec<usize> = (0..=n + 1)
                .map(|i| {
                    if i == 0 || i > n || strand.basis[i].is_empty() || strand.basis[i - 1].is_empty() {
                        0
                    } else {
                        rank_mod(strand.differential(i, p), p)
                    }
                })
                .collect();
            if cfg!(debug_assertions) {
                for i in 2..=n {
                    if !strand.basis[i].is_empty() && !strand.basis[i - 2].is_empty() {
                        let outer = strand.differential(i - 1, p);
                        let inner = strand.differential(i, p);
                        if !composes_to_zero(&outer, &inner, p) {
                            return Err(Error::LogicFault(format!("d∘d ≠ 0 in multidegree {alpha:?}")));
                        }
                    }
                }
            }
            for i in 0..=n {
                let dim = strand.basis[i].len();
                let beta = dim - ranks[i] - ranks[i + 1];
                if beta > 0 {
                    *entries.entry((i, degree)).or_insert(0) += beta as u64;
                }
            }
        }
        // odometer over the box
        let mut k = 0;
        while k < n && alpha[k] == bound[k] {
            alpha[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        alpha[k] += 1;
    }
    BettiDiagram::from_entries(n, entries)
}

/// Diagrams over several characteristics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicCheck {
    pub diagrams: Vec<(u64, BettiDiagram)>,
}

impl CharacteristicCheck {
    pub fn agree(&self) -> bool {
        self.diagrams.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

pub fn cross_check(ideal: &MonomialIdeal, characteristics: &[u64], degree_cap: Option<u32>) -> Result<CharacteristicCheck> {
    let diagrams = characteristics
        .iter()
        .map(|&p| koszul_betti(ideal, p, degree_cap).map(|d| (p, d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacteristicCheck { diagrams })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowComparison {
    pub row: i64,
    pub original: Vec<u64>,
    pub truncated: Vec<u64>,
}

impl RowComparison {
    pub fn equal(&self) -> bool {
        self.original == self.truncated
    }
}

/// Rows `r >= d` of the diagrams of `R/I` and `R/I_{>=d}` side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationRows {
    pub degree: u32,
    pub original: BettiDiagram,
    pub truncated: BettiDiagram,
    pub rows: Vec<RowComparison>,
}

impl TruncationRows {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(RowComparison::equal)
    }
}

fn row(d: &BettiDiagram, r: i64) -> Vec<u64> {
    (0..=d.nvars())
        .map(|i| u32::try_from(r + i as i64).map_or(0, |j| d.get(i, j)))
        .collect()
}

pub fn verify_truncation_rows(
    ideal: &MonomialIdeal,
    d: u32,
    characteristic: u64,
    degree_cap: Option<u32>,
) -> Result<TruncationRows> {
    let original = koszul_betti(ideal, characteristic, degree_cap)?;
    let truncated = koszul_betti(&ideal.truncate(d), characteristic, degree_cap)?;
    let last = [&original, &truncated]
        .iter()
        .filter_map(|x| x.regularity())
        .max()
        .unwrap_or(0);
    let rows = (i64::from(d)..=last)
        .map(|r| RowComparison { row: r, original: row(&original, r), truncated: row(&truncated, r) })
        .collect();
    Ok(TruncationRows { degree: d, original, truncated, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// The diagram is already quasipure.
    Quasipure,
    /// Truncating at the top generator degree gives a quasipure diagram with
    /// the same maximal shifts and at least the same multiplicity.
    Truncation {
        degree: u32,
        truncated: BettiDiagram,
        truncated_multiplicity: u64,
        truncated_verdict: BoundVerdict,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub diagram: BettiDiagram,
    pub regularity: i64,
    pub multiplicity: u64,
    pub shifts: Vec<u32>,
    pub route: Route,
    /// The upper bound for `R/I` itself.
    pub verdict: BoundVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotApplicable {
    /// No minimal generator in degree `reg` or `reg + 1`.
    NoHighDegreeGenerator { regularity: i64, max_generator_degree: u32 },
    TruncationNotQuasipure { degree: u32, truncated: BettiDiagram },
    ShiftsDiffer { original: Vec<u32>, truncated: Vec<u32> },
    MultiplicityDecreased { original: u64, truncated: u64 },
    BoundFailsOnTruncation(BoundVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruncationOutcome {
    Certified(Certificate),
    NotApplicable(NotApplicable),
}

/// Tries to certify the upper bound for an Artinian `R/I` either directly
/// from a quasipure diagram or by truncating at the top generator degree
/// when that degree is the regularity or one more.
pub fn truncation_analysis(ideal: &MonomialIdeal, characteristic: u64) -> Result<TruncationOutcome> {
    let n = ideal.nvars();
    let multiplicity = ideal.artinian_hilbert_function()?.multiplicity()?;
    let diagram = koszul_betti(ideal, characteristic, None)?;
    let regularity = diagram.regularity().unwrap_or(0);
    let shifts = diagram.max_shifts()?;
    let verdict = upper_bound_holds(multiplicity, &shifts, n)?;
    if diagram.is_quasipure() {
        if !verdict.holds {
            return Err(Error::LogicFault(format!("quasipure diagram violates the bound: {} > {}", verdict.lhs, verdict.rhs)));
        }
        return Ok(TruncationOutcome::Certified(Certificate {
            diagram,
            regularity,
            multiplicity,
            shifts,
            route: Route::Quasipure,
            verdict,
        }));
    }
    let g = ideal.max_generator_degree().unwrap_or(0);
    if i64::from(g) != regularity && i64::from(g) != regularity + 1 {
        return Ok(TruncationOutcome::NotApplicable(NotApplicable::NoHighDegreeGenerator {
            regularity,
            max_generator_degree: g,
        }));
    }
    let truncated_ideal = ideal.truncate(g);
    let truncated = koszul_betti(&truncated_ideal, characteristic, None)?;
    if !truncated.is_quasipure() {
        return Ok(TruncationOutcome::NotApplicable(NotApplicable::TruncationNotQuasipure { degree: g, truncated }));
    }
    let truncated_shifts = truncated.max_shifts()?;
    if truncated_shifts != shifts {
        return Ok(TruncationOutcome::NotApplicable(NotApplicable::ShiftsDiffer {
            original: shifts,
            truncated: truncated_shifts,
        }));
    }
    let truncated_multiplicity = truncated_ideal.artinian_hilbert_function()?.multiplicity()?;
    if multiplicity > truncated_multiplicity {
        return Ok(TruncationOutcome::NotApplicable(NotApplicable::MultiplicityDecreased {
            original: multiplicity,
            truncated: truncated_multiplicity,
        }));
    }
    let truncated_verdict = upper_bound_holds(truncated_multiplicity, &truncated_shifts, n)?;
    if !truncated_verdict.holds {
        return Ok(TruncationOutcome::NotApplicable(NotApplicable::BoundFailsOnTruncation(truncated_verdict)));
    }
    Ok(TruncationOutcome::Certified(Certificate {
        diagram,
        regularity,
        multiplicity,
        shifts,
        route: Route::Truncation { degree: g, truncated, truncated_multiplicity, truncated_verdict },
        verdict,
    }))
}
