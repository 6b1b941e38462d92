//! Monomials, monomial ideals and lex-segment ideals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::binomial;
use crate::hilbert::{is_o_sequence, HilbertFunction};
use crate::{Error, Result};

/// Dense exponent vector; the exponent of `x_1` comes first.
///
/// The derived order is pure lex with `x_1 > x_2 > ... > x_n` when both
/// sides live in the same ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_{index+1}`.
    pub fn var(n: usize, index: usize) -> Self {
        let mut exps = vec![0; n];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// 1-based index of the last variable with a nonzero exponent, 0 for 1.
    pub fn max_var(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |k| k + 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Monomial { exps }
    }

    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.exps[index] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }
}

/// Lex comparison that refuses monomials from different rings.
pub fn lex_compare(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    if u.nvars() != v.nvars() {
        return Err(Error::VariableMismatch(u.nvars(), v.nvars()));
    }
    Ok(u.exps.cmp(&v.exps))
}

/// All monomials of degree `d` in `n` variables, largest first in lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill_descending(&mut exps, 0, d, &mut out);
    out
}

fn fill_descending(exps: &mut [u32], pos: usize, rest: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= exps.len() {
        if let Some(last) = exps.last_mut() {
            *last = rest;
            out.push(Monomial { exps: exps.to_vec() });
        } else if rest == 0 {
            out.push(Monomial { exps: Vec::new() });
        }
        return;
    }
    for e in (0..=rest).rev() {
        exps[pos] = e;
        fill_descending(exps, pos + 1, rest - e, out);
    }
    exps[pos] = 0;
}

pub fn variable_name(index: usize) -> char {
    (b'a' + index as u8) as char
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", variable_name(k))?;
            } else {
                write!(f, "{}^{}", variable_name(k), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A monomial ideal stored by its minimal generators, sorted by degree and
/// then descending lex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts the given generators.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
            return Err(Error::VariableMismatch(n, g.nvars()));
        }
        let mut gens = gens;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            // anything dividing g has degree <= deg g and is already placed
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal { n, gens: minimal })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    pub fn min_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    /// Pure-power exponent per variable, if present.
    fn pure_powers(&self) -> Vec<Option<u32>> {
        let mut powers = vec![None; self.n];
        for g in &self.gens {
            let support: Vec<usize> = (0..self.n).filter(|&k| g.exps[k] > 0).collect();
            if let [k] = support[..] {
                let e = g.exps[k];
                powers[k] = Some(powers[k].map_or(e, |p: u32| p.min(e)));
            }
        }
        powers
    }

    /// Every variable has a power in the ideal.
    pub fn is_artinian(&self) -> bool {
        self.pure_powers().iter().all(Option::is_some)
    }

    /// Above this degree every monomial lies in the ideal (Artinian only).
    fn vanishing_degree(&self) -> Option<u32> {
        let powers = self.pure_powers();
        let mut top = 0u32;
        for p in powers {
            top += p? - 1;
        }
        Some(top)
    }

    /// Componentwise lcm of all generators; the multidegrees carrying Tor
    /// all lie below it.
    pub fn lcm(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    /// Minimal generators of `I ∩ m^d`.
    pub fn truncate(&self, d: u32) -> MonomialIdeal {
        let mut gens: Vec<Monomial> =
            monomials_of_degree(self.n, d).into_iter().filter(|m| self.contains(m)).collect();
        gens.extend(self.gens.iter().filter(|g| g.degree() > d).cloned());
        MonomialIdeal::new(self.n, gens).expect("same ring")
    }

    /// Number of degree-`d` monomials outside the ideal.
    pub fn quotient_dimension(&self, d: u32) -> u64 {
        monomials_of_degree(self.n, d).iter().filter(|m| !self.contains(m)).count() as u64
    }

    /// Hilbert function of the quotient in degrees `0..=d_max`.
    pub fn quotient_hilbert_function(&self, d_max: u32) -> QuotientHilbert {
        let values: Vec<u64> = (0..=d_max).map(|d| self.quotient_dimension(d)).collect();
        let complete = self.vanishing_degree().is_some_and(|top| d_max >= top);
        let hf = HilbertFunction::new(values).expect("H(0) of a proper ideal is 1");
        QuotientHilbert { hf, complete }
    }

    /// The full Hilbert function of an Artinian quotient.
    pub fn artinian_hilbert_function(&self) -> Result<HilbertFunction> {
        let top = self.vanishing_degree().ok_or(Error::NotArtinian)?;
        Ok(self.quotient_hilbert_function(top).hf)
    }

    /// `x_s * m / x_{max(m)}` stays in the ideal for every generator `m`
    /// and every `s < max(m)`.
    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|g| {
            let top = g.max_var();
            (1..top).all(|s| {
                let shifted = g.div_var(top - 1).expect("max var divides").mul_var(s - 1);
                self.contains(&shifted)
            })
        })
    }
}

/// Values of a quotient Hilbert function up to a cap; `complete` is set
/// when the ideal is Artinian and the cap reaches the socle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientHilbert {
    pub hf: HilbertFunction,
    pub complete: bool,
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Degree-by-degree lex monomial lists with the lex rank of each divisor,
/// reusable across many lex-ideal constructions in a fixed ring.
#[derive(Debug, Clone)]
pub struct LexTable {
    n: usize,
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    monomials: Vec<Monomial>,
    /// Smallest lex rank among `m / x_k` in the previous degree.
    min_divisor_rank: Vec<usize>,
}

impl LexTable {
    pub fn new(n: usize) -> Self {
        let mut table = LexTable { n, levels: Vec::new() };
        table.ensure_degree(0);
        table
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    fn ensure_degree(&mut self, d: usize) {
        while self.levels.len() <= d {
            let deg = self.levels.len();
            let monomials = monomials_of_degree(self.n, deg as u32);
            let min_divisor_rank = match self.levels.last() {
                None => vec![usize::MAX; monomials.len()],
                Some(prev) => {
                    let rank: BTreeMap<&Monomial, usize> =
                        prev.monomials.iter().enumerate().map(|(r, m)| (m, r)).collect();
                    monomials
                        .iter()
                        .map(|m| {
                            (0..self.n)
                                .filter_map(|k| m.div_var(k))
                                .map(|q| rank[&q])
                                .min()
                                .unwrap_or(usize::MAX)
                        })
                        .collect()
                }
            };
            self.levels.push(Level { monomials, min_divisor_rank });
        }
    }

    /// The lex-segment ideal whose quotient has Hilbert function `h`.
    ///
    /// At every degree the monomials already in the ideal are checked to
    /// form an initial lex segment; a failure there is a logic fault.
    pub fn lex_ideal(&mut self, h: &HilbertFunction) -> Result<MonomialIdeal> {
        if !is_o_sequence(h, self.n) {
            return Err(Error::NotAdmissible(h.to_string()));
        }
        let top = h.len();
        self.ensure_degree(top);
        let mut gens = Vec::new();
        let mut prev_size = 0usize;
        for d in 0..=top {
            let level = &self.levels[d];
            let total = level.monomials.len();
            let hd = h.get(d) as usize;
            let size = total.checked_sub(hd).ok_or_else(|| Error::NotAdmissible(h.to_string()))?;
            let divisible = level.min_divisor_rank.iter().take_while(|&&r| r < prev_size).count();
            if level.min_divisor_rank[divisible..].iter().any(|&r| r < prev_size) {
                return Err(Error::LogicFault(format!("degree {d} multiples are not a lex segment")));
            }
            if divisible > size {
                return Err(Error::LogicFault(format!("degree {d} exceeds the lex segment")));
            }
            gens.extend_from_slice(&level.monomials[divisible..size]);
            prev_size = size;
        }
        Ok(MonomialIdeal { n: self.n, gens })
    }
}

/// One-shot lex-segment ideal construction.
pub fn lex_ideal(h: &HilbertFunction, n: usize) -> Result<MonomialIdeal> {
    LexTable::new(n).lex_ideal(h)
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> Result<u64> {
    if n == 0 {
        return Ok(u64::from(d == 0));
    }
    binomial(n as u64 - 1 + u64::from(d), u64::from(d))
}

/// Parses `a^3; b^4; a*b^2` (symbolic) or `(3,0,0); (0,4,0)` (exponent
/// tuples), separated by semicolons or newlines. With `n = None` the ring
/// has as many variables as the largest one used.
pub fn parse_ideal(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let mut parsed: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut offset = 0;
    for piece in text.split([';', '\n']) {
        let start = offset;
        offset += piece.len() + 1;
        if piece.trim().is_empty() {
            continue;
        }
        let lead = piece.len() - piece.trim_start().len();
        parsed.push((start + lead, parse_monomial_at(piece.trim(), start + lead)?));
    }
    let width = parsed.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let n = n.unwrap_or(width.max(1));
    let mut gens = Vec::with_capacity(parsed.len());
    for (pos, mut exps) in parsed {
        if exps.len() > n {
            return Err(Error::Parse { pos, msg: format!("monomial uses more than {n} variables") });
        }
        exps.resize(n, 0);
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::new(n, gens)
}

/// Parses a single monomial; the exponent vector is as long as the last
/// variable mentioned.
pub fn parse_monomial(text: &str) -> Result<Vec<u32>> {
    parse_monomial_at(text.trim(), 0)
}

fn parse_monomial_at(text: &str, base: usize) -> Result<Vec<u32>> {
    let err = |pos: usize, msg: String| Error::Parse { pos: base + pos, msg };
    if let Some(inner) = text.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(|| err(text.len(), "missing ')'".to_string()))?;
        let mut exps = Vec::new();
        let mut pos = 1;
        for tok in inner.split(',') {
            let t = tok.trim();
            exps.push(t.parse::<u32>().map_err(|_| err(pos, format!("bad exponent {t:?}")))?);
            pos += tok.len() + 1;
        }
        return Ok(exps);
    }
    let bytes = text.as_bytes();
    let mut exps: Vec<u32> = Vec::new();
    let mut i = 0;
    let mut expect_factor = true;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if expect_factor {
            if c == b'1' && exps.is_empty() && text[i + 1..].trim().is_empty() {
                return Ok(exps);
            }
            if !c.is_ascii_lowercase() {
                return Err(err(i, format!("expected a variable, found {:?}", c as char)));
            }
            let var = (c - b'a') as usize;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let mut power = 1u32;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = text[start..i]
                    .parse()
                    .map_err(|_| err(start, "expected an exponent after '^'".to_string()))?;
            }
            if exps.len() <= var {
                exps.resize(var + 1, 0);
            }
            exps[var] += power;
            expect_factor = false;
        } else {
            if c != b'*' {
                return Err(err(i, format!("expected '*', found {:?}", c as char)));
            }
            i += 1;
            expect_factor = true;
        }
    }
    if expect_factor {
        return Err(err(bytes.len(), "dangling '*' or empty monomial".to_string()));
    }
    Ok(exps)
}
