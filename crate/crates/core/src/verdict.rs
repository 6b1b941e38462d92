//! Integer comparisons against the conjectured multiplicity bounds and the
//! numerical filters that rule out potential Betti diagrams.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{checked_product, factorial, Ratio};
use crate::betti::{ek_betti_unchecked, for_each_reachable, BettiDiagram};
use crate::hilbert::{aci_obstruction, is_o_sequence, AciVerdict, AciWitness, HilbertFunction};
use crate::monomial::LexTable;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `c! e <= M_1 ... M_c`
    Upper,
    /// `m_1 ... m_c <= c! e`
    Lower,
}

/// The outcome of one bound comparison, with both sides as exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundVerdict {
    pub kind: BoundKind,
    pub e: u64,
    pub shifts: Vec<u32>,
    pub codim: usize,
    pub holds: bool,
    pub lhs: u64,
    pub rhs: u64,
}

impl BoundVerdict {
    fn compute(kind: BoundKind, e: u64, shifts: &[u32], codim: usize) -> Result<Self> {
        if shifts.len() != codim || shifts.contains(&0) {
            return Err(Error::Malformed(format!("{} shifts for codimension {codim}", shifts.len())));
        }
        let scaled = factorial(codim as u64)?
            .checked_mul(e)
            .ok_or(Error::Overflow("c! * e"))?;
        let product = checked_product(shifts.iter().map(|&s| u64::from(s)))?;
        let (lhs, rhs) = match kind {
            BoundKind::Upper => (scaled, product),
            BoundKind::Lower => (product, scaled),
        };
        Ok(BoundVerdict { kind, e, shifts: shifts.to_vec(), codim, holds: lhs <= rhs, lhs, rhs })
    }

    /// `(s_1 ... s_c) / c!` as a reduced fraction.
    pub fn bound(&self) -> Ratio {
        let product = match self.kind {
            BoundKind::Upper => self.rhs,
            BoundKind::Lower => self.lhs,
        };
        let scale = match self.kind {
            BoundKind::Upper => self.lhs / self.e.max(1),
            BoundKind::Lower => self.rhs / self.e.max(1),
        };
        // c! is recomputed when e = 0 would lose it
        let scale = if self.e == 0 { factorial(self.codim as u64).unwrap_or(1) } else { scale };
        Ratio::new(product, scale)
    }
}

pub fn upper_bound_holds(e: u64, max_shifts: &[u32], codim: usize) -> Result<BoundVerdict> {
    BoundVerdict::compute(BoundKind::Upper, e, max_shifts, codim)
}

pub fn lower_bound_holds(e: u64, min_shifts: &[u32], codim: usize) -> Result<BoundVerdict> {
    BoundVerdict::compute(BoundKind::Lower, e, min_shifts, codim)
}

/// Column `i` starts in degree `t`, but fewer than `i` entries of column
/// `i - 1` lie below `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErViolation {
    pub i: usize,
    pub t: u32,
    pub below: u64,
}

/// Evans-Richert: for `i >= 2` with `t = m_i`, at least `i` entries of
/// column `i - 1` sit in degrees below `t`. Returns the first violation.
pub fn evans_richert(d: &BettiDiagram) -> Option<ErViolation> {
    for i in 2..=d.projective_dimension() {
        let Some((t, _)) = d.column(i).next() else { continue };
        let below: u64 = d.column(i - 1).take_while(|&(j, _)| j < t).map(|(_, v)| v).sum();
        if below < i as u64 {
            return Some(ErViolation { i, t, below });
        }
    }
    None
}

pub fn evans_richert_ok(d: &BettiDiagram) -> bool {
    evans_richert(d).is_none()
}

/// Betti diagram of the Koszul complex on forms of the given degrees.
pub fn koszul_shape(n: usize, degrees: &[u32]) -> BettiDiagram {
    let mut entries: BTreeMap<(usize, u32), u64> = BTreeMap::new();
    for mask in 0u32..(1 << degrees.len()) {
        let size = mask.count_ones() as usize;
        let sum: u32 = (0..degrees.len()).filter(|k| mask >> k & 1 == 1).map(|k| degrees[k]).sum();
        *entries.entry((size, sum)).or_insert(0) += 1;
    }
    BettiDiagram::from_entries(n, entries).expect("at most n columns")
}

/// An Artinian quotient of `k[x_1..x_n]` needs at least `n` generators, and
/// with exactly `n` it is a complete intersection resolved by its Koszul
/// complex.
pub fn generator_count_ok(d: &BettiDiagram, n: usize) -> bool {
    let total = d.column_total(1);
    match total.cmp(&(n as u64)) {
        core::cmp::Ordering::Greater => true,
        core::cmp::Ordering::Less => false,
        core::cmp::Ordering::Equal => {
            let mut degrees = Vec::new();
            for (j, v) in d.column(1) {
                degrees.extend(core::iter::repeat_n(j, v as usize));
            }
            koszul_shape(n, &degrees) == *d
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    EvansRichert,
    GeneratorCount,
    ShiftGrowth,
    Aci,
}

impl Filter {
    /// Evaluation order; a diagram is charged to the first filter it fails.
    pub const ALL: [Filter; 4] = [Filter::EvansRichert, Filter::GeneratorCount, Filter::ShiftGrowth, Filter::Aci];

    pub fn name(self) -> &'static str {
        match self {
            Filter::EvansRichert => "er",
            Filter::GeneratorCount => "gen",
            Filter::ShiftGrowth => "growth",
            Filter::Aci => "aci",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which filters are switched on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Filters([bool; 4]);

impl Filters {
    pub const ALL: Filters = Filters([true; 4]);
    pub const NONE: Filters = Filters([false; 4]);

    pub fn with(mut self, f: Filter) -> Self {
        self.0[f.index()] = true;
        self
    }

    pub fn contains(&self, f: Filter) -> bool {
        self.0[f.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = Filter> + '_ {
        Filter::ALL.into_iter().filter(|f| self.contains(*f))
    }
}

impl Default for Filters {
    fn default() -> Self {
        Filters::ALL
    }
}

impl fmt::Display for Filters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Filter::name).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for Filters {
    type Err = Error;

    /// Comma-separated subset of `er,gen,aci,growth`; empty means none.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Filters::NONE;
        let mut pos = 0;
        for tok in s.split(',') {
            let name = tok.trim();
            if !name.is_empty() {
                let f = Filter::ALL
                    .into_iter()
                    .find(|f| f.name() == name)
                    .ok_or_else(|| Error::Parse { pos, msg: format!("unknown filter {name:?}") })?;
                out = out.with(f);
            }
            pos += tok.len() + 1;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub filters: Filters,
    /// Search nodes allowed per Hilbert function.
    pub dfs_cap: usize,
    /// Surviving diagrams kept verbatim in an unresolved outcome.
    pub keep_survivors: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { filters: Filters::ALL, dfs_cap: 1_000_000, keep_survivors: 8 }
    }
}

/// What the search found among the potential diagrams violating the upper
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    /// Violating diagrams examined.
    pub violating: usize,
    /// How many violating diagrams each filter was the first to reject,
    /// indexed like [`Filter::ALL`].
    pub first_failure: [usize; 4],
    /// Violating diagrams that pass both the Evans-Richert and the
    /// generator-count test.
    pub pass_er_gen: usize,
    pub survivor_count: usize,
    pub survivors: Vec<BettiDiagram>,
    pub cap_exceeded: bool,
    pub nodes: usize,
    /// Evans-Richert violation of the greedy diagram itself.
    pub greedy_er: Option<ErViolation>,
    /// First almost-complete-intersection obstruction met, with its degree.
    pub aci: Option<(u32, AciWitness)>,
}

impl Residue {
    /// Filters that rejected at least one violating diagram first.
    pub fn reason(&self) -> Vec<Filter> {
        Filter::ALL.into_iter().filter(|f| self.first_failure[f.index()] > 0).collect()
    }

    pub fn reason_label(&self) -> String {
        if self.cap_exceeded {
            return String::from("cap_exceeded");
        }
        let names: Vec<&str> = self.reason().into_iter().map(Filter::name).collect();
        if names.is_empty() {
            String::from("none")
        } else {
            names.join("+")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The greedy diagram satisfies the bound, hence every module with this
    /// Hilbert function does.
    BoundHolds,
    /// Every violating potential diagram fails an enabled filter.
    Eliminated(Residue),
    /// Some violating diagram passes every enabled filter, or the search
    /// hit its node cap.
    Unresolved(Residue),
}

impl Outcome {
    pub fn status(&self) -> &'static str {
        match self {
            Outcome::BoundHolds => "BOUND_HOLDS",
            Outcome::Eliminated(_) => "ELIMINATED",
            Outcome::Unresolved(_) => "UNRESOLVED",
        }
    }

    pub fn residue(&self) -> Option<&Residue> {
        match self {
            Outcome::BoundHolds => None,
            Outcome::Eliminated(r) | Outcome::Unresolved(r) => Some(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub hf: HilbertFunction,
    pub multiplicity: u64,
    pub lex: BettiDiagram,
    pub greedy: BettiDiagram,
    pub verdict: BoundVerdict,
    pub outcome: Outcome,
}

pub fn classify(h: &HilbertFunction, n: usize, options: &ClassifyOptions) -> Result<Classification> {
    classify_with(&mut LexTable::new(n), h, options)
}

/// [`classify`] reusing a lex table for the ring.
pub fn classify_with(table: &mut LexTable, h: &HilbertFunction, options: &ClassifyOptions) -> Result<Classification> {
    let n = table.nvars();
    if !is_o_sequence(h, n) {
        return Err(Error::NotAdmissible(format!("{h}")));
    }
    let e = h.multiplicity()?;
    let lex = ek_betti_unchecked(&table.lex_ideal(h)?)?;
    let greedy = lex.greedy_minimize();
    let verdict = upper_bound_holds(e, &greedy.max_shifts()?, n)?;
    let outcome = if verdict.holds {
        Outcome::BoundHolds
    } else {
        examine_violations(h, n, &lex, &greedy, verdict.lhs, options)?
    };
    Ok(Classification { hf: h.clone(), multiplicity: e, lex, greedy, verdict, outcome })
}

fn examine_violations(
    h: &HilbertFunction,
    n: usize,
    lex: &BettiDiagram,
    greedy: &BettiDiagram,
    threshold: u64,
    options: &ClassifyOptions,
) -> Result<Outcome> {
    let filters = options.filters;
    let mut residue = Residue {
        violating: 0,
        first_failure: [0; 4],
        pass_er_gen: 0,
        survivor_count: 0,
        survivors: Vec::new(),
        cap_exceeded: false,
        nodes: 0,
        greedy_er: evans_richert(greedy),
        aci: None,
    };
    let mut aci_cache: BTreeMap<u32, AciVerdict> = BTreeMap::new();
    let mut failure: Option<Error> = None;

    let stats = for_each_reachable(lex, Some(threshold), options.dfs_cap, |d| {
        residue.violating += 1;
        let er_ok = evans_richert_ok(d);
        let gen_ok = generator_count_ok(d, n);
        if er_ok && gen_ok {
            residue.pass_er_gen += 1;
        }
        let mut rejected_by = None;
        for f in filters.iter() {
            let ok = match f {
                Filter::EvansRichert => er_ok,
                Filter::GeneratorCount => gen_ok,
                Filter::ShiftGrowth => d.check_shift_growth(),
                Filter::Aci => {
                    let gens: Vec<(u32, u64)> = d.column(1).collect();
                    match gens[..] {
                        [(deg, 4)] if n == 3 => {
                            let verdict = match aci_cache.get(&deg) {
                                Some(v) => v.clone(),
                                None => match aci_obstruction(h, u64::from(deg)) {
                                    Ok(v) => {
                                        aci_cache.insert(deg, v.clone());
                                        v
                                    }
                                    Err(e) => {
                                        failure.get_or_insert(e);
                                        AciVerdict::Inconclusive
                                    }
                                },
                            };
                            match verdict {
                                AciVerdict::Obstructed(w) => {
                                    residue.aci.get_or_insert((deg, w));
                                    false
                                }
                                AciVerdict::Inconclusive => true,
                            }
                        }
                        _ => true,
                    }
                }
            };
            if !ok {
                rejected_by = Some(f);
                break;
            }
        }
        match rejected_by {
            Some(f) => residue.first_failure[f.index()] += 1,
            None => {
                residue.survivor_count += 1;
                if residue.survivors.len() < options.keep_survivors {
                    residue.survivors.push(d.clone());
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    residue.nodes = stats.nodes;
    residue.cap_exceeded = stats.capped;
    if residue.cap_exceeded || residue.survivor_count > 0 {
        Ok(Outcome::Unresolved(residue))
    } else {
        Ok(Outcome::Eliminated(residue))
    }
}
