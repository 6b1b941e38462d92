//! Hilbert functions of Artinian graded quotients and Macaulay's growth
//! condition.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{binomial, checked_sum};
use crate::{Error, Result};

/// Values `H(0), H(1), ...` of a Hilbert function with trailing zeros
/// removed. Two functions compare equal iff their trimmed sequences do.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HilbertFunction {
    values: Vec<u64>,
}

impl HilbertFunction {
    /// Trims trailing zeros. A nonempty sequence must start with 1.
    ///
    /// Interior zeros are accepted so that sequences like `1,2,1,0,0,6,3,1`
    /// can be represented and then rejected by [`is_o_sequence`].
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        if let Some(&first) = values.first() {
            if first != 1 {
                return Err(Error::NotAdmissible("H(0) must be 1".to_string()));
            }
        }
        Ok(HilbertFunction { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    /// `H(d)`, zero past the end.
    pub fn get(&self, d: usize) -> u64 {
        self.values.get(d).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Last degree with a nonzero value.
    pub fn socle_degree(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// For an Artinian quotient this is the vector-space dimension.
    pub fn multiplicity(&self) -> Result<u64> {
        checked_sum(self.values.iter().copied())
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for HilbertFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut pos = 0;
        for token in s.split(',') {
            let t = token.trim();
            let v = t.parse::<u64>().map_err(|_| Error::Parse {
                pos,
                msg: alloc::format!("expected a nonnegative integer, found {t:?}"),
            })?;
            values.push(v);
            pos += token.len() + 1;
        }
        HilbertFunction::new(values)
    }
}

/// The `d`-th Macaulay representation of `h`: the strictly decreasing tops
/// `a_d > a_{d-1} > ... > a_j >= j >= 1` with `h = sum C(a_k, k)`.
pub fn macaulay_expansion(h: u64, d: u64) -> Result<Vec<u64>> {
    assert!(h >= 1 && d >= 1, "macaulay_expansion needs h >= 1 and d >= 1");
    let mut tops = Vec::new();
    let mut rest = h;
    let mut k = d;
    while rest > 0 {
        // largest a with C(a, k) <= rest; C(k, k) = 1 <= rest so a >= k
        let mut a = k;
        while binomial(a + 1, k)? <= rest {
            a += 1;
        }
        tops.push(a);
        rest -= binomial(a, k)?;
        k -= 1;
    }
    Ok(tops)
}

/// `h^<d>`, the largest value `H(d+1)` may take when `H(d) = h`.
pub fn macaulay_bound(h: u64, d: u64) -> Result<u64> {
    assert!(d >= 1, "macaulay_bound needs d >= 1");
    if h == 0 {
        return Ok(0);
    }
    let tops = macaulay_expansion(h, d)?;
    let mut total = 0u64;
    for (offset, &a) in tops.iter().enumerate() {
        let k = d - offset as u64;
        total = total
            .checked_add(binomial(a + 1, k + 1)?)
            .ok_or(Error::Overflow("macaulay_bound"))?;
    }
    Ok(total)
}

/// Macaulay's criterion on a raw value sequence (trailing zeros allowed).
pub fn is_o_sequence_values(values: &[u64], n: usize) -> bool {
    if values.first() != Some(&1) {
        return false;
    }
    if values.len() > 1 && values[1] > n as u64 {
        return false;
    }
    let mut seen_zero = false;
    for d in 1..values.len() {
        if seen_zero && values[d] != 0 {
            return false;
        }
        if values[d] == 0 {
            seen_zero = true;
            continue;
        }
        if d >= 2 {
            match macaulay_bound(values[d - 1], d as u64 - 1) {
                Ok(bound) if values[d] <= bound => {}
                _ => return false,
            }
        }
    }
    true
}

/// True iff `h` is the Hilbert function of some `k[x_1..x_n]/I`.
pub fn is_o_sequence(h: &HilbertFunction, n: usize) -> bool {
    is_o_sequence_values(h.values(), n)
}

/// Lexicographic stream of all O-sequences extending a prefix, with socle
/// degree at most `socle_max`. A sequence precedes all of its extensions.
pub fn enumerate_o_sequences(n: usize, socle_max: usize, prefix: &[u64]) -> Result<OSequences> {
    if !is_o_sequence_values(prefix, n) || prefix.contains(&0) {
        return Err(Error::InvalidPrefix(HilbertFunction { values: prefix.to_vec() }.to_string()));
    }
    Ok(OSequences {
        n,
        socle_max,
        prefix_len: prefix.len(),
        current: prefix.to_vec(),
        state: if prefix.len() <= socle_max + 1 { State::Fresh } else { State::Done },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

#[derive(Debug, Clone)]
pub struct OSequences {
    n: usize,
    socle_max: usize,
    prefix_len: usize,
    current: Vec<u64>,
    state: State,
}

impl OSequences {
    /// Positions the stream so that the next item is the successor of
    /// `cursor`.
    pub fn resume_after(mut self, cursor: &HilbertFunction) -> Result<Self> {
        let values = cursor.values();
        let ok = values.len() >= self.prefix_len
            && values[..self.prefix_len] == self.current[..self.prefix_len]
            && values.len() <= self.socle_max + 1
            && is_o_sequence_values(values, self.n);
        if !ok {
            return Err(Error::InvalidPrefix(alloc::format!(
                "cursor {cursor} is not in this enumeration"
            )));
        }
        self.current = values.to_vec();
        self.state = State::Running;
        Ok(self)
    }

    fn cap(&self, d: usize) -> Result<u64> {
        if d == 1 {
            Ok(self.n as u64)
        } else {
            macaulay_bound(self.current[d - 1], d as u64 - 1)
        }
    }

    fn advance(&mut self) -> Result<bool> {
        let next = self.current.len();
        if next <= self.socle_max && self.cap(next)? >= 1 {
            self.current.push(1);
            return Ok(true);
        }
        while self.current.len() > self.prefix_len {
            let d = self.current.len() - 1;
            if self.current[d] < self.cap(d)? {
                self.current[d] += 1;
                return Ok(true);
            }
            self.current.pop();
        }
        Ok(false)
    }
}

impl Iterator for OSequences {
    type Item = Result<HilbertFunction>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.state {
            State::Done => return None,
            State::Fresh => self.state = State::Running,
            State::Running => match self.advance() {
                Ok(true) => {}
                Ok(false) => {
                    self.state = State::Done;
                    return None;
                }
                Err(e) => {
                    self.state = State::Done;
                    return Some(Err(e));
                }
            },
        }
        Some(Ok(HilbertFunction { values: self.current.clone() }))
    }
}

/// Hilbert function of `k[x_1..x_n]/(f_1..f_n)` for a regular sequence of
/// forms of the given degrees.
pub fn ci_hilbert_function(degrees: &[u64]) -> Result<HilbertFunction> {
    assert!(!degrees.is_empty(), "need at least one degree");
    let mut coeffs = alloc::vec![1u64];
    for &d in degrees {
        assert!(d >= 1, "degrees must be positive");
        let d = d as usize;
        let mut next = alloc::vec![0u64; coeffs.len() + d - 1];
        for (k, &c) in coeffs.iter().enumerate() {
            for slot in &mut next[k..k + d] {
                *slot = slot.checked_add(c).ok_or(Error::Overflow("ci_hilbert_function"))?;
            }
        }
        coeffs = next;
    }
    HilbertFunction::new(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AciWitness {
    /// `H(degree)` exceeds the complete intersection's value.
    ExceedsCi { degree: usize },
    /// The difference is nonzero below the generator degree.
    LowDegreeDifference { degree: usize },
    /// The would-be Hilbert function of `S/J` fails Macaulay's criterion.
    ColonNotOSequence { colon: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AciVerdict {
    Obstructed(AciWitness),
    Inconclusive,
}

/// Can four degree-`d` forms in three variables generate an almost complete
/// intersection with Hilbert function `h`?
///
/// With `J = (f_1, f_2, f_3) : f_4` the sequence
/// `0 -> S/J(-d) -> S/(f_1, f_2, f_3) -> S/I -> 0` forces
/// `H(S/J)(t - d) = H_CI(t) - H(t)`; if that is not an O-sequence no such
/// ideal exists.
pub fn aci_obstruction(h: &HilbertFunction, d: u64) -> Result<AciVerdict> {
    let ci = ci_hilbert_function(&[d, d, d])?;
    let len = ci.len().max(h.len());
    let mut diff = Vec::with_capacity(len);
    for t in 0..len {
        match ci.get(t).checked_sub(h.get(t)) {
            Some(v) => diff.push(v),
            None => return Ok(AciVerdict::Obstructed(AciWitness::ExceedsCi { degree: t })),
        }
    }
    let d = d as usize;
    if let Some(t) = diff.iter().take(d).position(|&v| v != 0) {
        return Ok(AciVerdict::Obstructed(AciWitness::LowDegreeDifference { degree: t }));
    }
    let mut colon: Vec<u64> = diff.get(d..).map(<[u64]>::to_vec).unwrap_or_default();
    while colon.last() == Some(&0) {
        colon.pop();
    }
    if colon.is_empty() || is_o_sequence_values(&colon, 3) {
        Ok(AciVerdict::Inconclusive)
    } else {
        Ok(AciVerdict::Obstructed(AciWitness::ColonNotOSequence { colon }))
    }
}
