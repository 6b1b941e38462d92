use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::BettiDiagram;
use crate::{Error, Result};

impl BettiDiagram {
    fn row_range(&self) -> (i64, i64) {
        let rows = self.entries.keys().map(|&(i, j)| i64::from(j) - i as i64);
        let lo = rows.clone().min().unwrap_or(0).min(0);
        let hi = rows.max().unwrap_or(0);
        (lo, hi)
    }

    /// One `i j count` line per nonzero entry.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for (&(i, j), &v) in &self.entries {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
        out
    }
}

/// The usual table: a `total:` line, then row `r` holds `β_{i, i+r}` in
/// column `i`, with `.` for zero.
impl fmt::Display for BettiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.projective_dimension() + 1;
        let (lo, hi) = self.row_range();
        let mut lines: Vec<(String, Vec<String>)> = Vec::new();
        lines.push(("total:".to_string(), self.totals().iter().map(|t| t.to_string()).collect()));
        for r in lo..=hi {
            let cells = (0..cols)
                .map(|i| {
                    let j = r + i as i64;
                    let v = u32::try_from(j).map(|j| self.get(i, j)).unwrap_or(0);
                    if v == 0 { ".".to_string() } else { v.to_string() }
                })
                .collect();
            lines.push((format!("{r}:"), cells));
        }
        let label_width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> =
            (0..cols).map(|c| lines.iter().map(|(_, cells)| cells[c].len()).max().unwrap_or(1)).collect();
        for (k, (label, cells)) in lines.iter().enumerate() {
            write!(f, "{label:>label_width$}")?;
            for (cell, w) in cells.iter().zip(&widths) {
                write!(f, " {cell:>w$}")?;
            }
            if k + 1 < lines.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Reads the table written by `Display`. Totals are checked against the
/// entries.
pub fn parse_layout(text: &str, n: usize) -> Result<BettiDiagram> {
    let mut totals: Option<Vec<u64>> = None;
    let mut entries = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let mut tokens = line.split_whitespace();
        let Some(label) = tokens.next() else { continue };
        let perr = |msg: String| Error::Parse { pos, msg };
        if label == "total:" {
            let t = tokens
                .map(|tok| tok.parse::<u64>().map_err(|_| perr(format!("bad total {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            totals = Some(t);
            continue;
        }
        let row: i64 = label
            .strip_suffix(':')
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| perr(format!("bad row label {label:?}")))?;
        for (i, tok) in tokens.enumerate() {
            if tok == "." {
                continue;
            }
            let v: u64 = tok.parse().map_err(|_| perr(format!("bad entry {tok:?}")))?;
            let j = u32::try_from(row + i as i64).map_err(|_| perr("negative degree".to_string()))?;
            entries.push(((i, j), v));
        }
    }
    let diagram = BettiDiagram::from_entries(n, entries)?;
    if let Some(t) = totals {
        if t != diagram.totals() {
            return Err(Error::Malformed(format!("totals {t:?} disagree with the entries")));
        }
    }
    Ok(diagram)
}

/// Reads `i j count` lines; blank lines and `#` comments are skipped.
pub fn parse_machine(text: &str, n: usize) -> Result<BettiDiagram> {
    let mut entries = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| Error::Parse { pos, msg: format!("bad line {line:?}") })?;
        let [i, j, v] = nums[..] else {
            return Err(Error::Parse { pos, msg: "expected `i j count`".to_string() });
        };
        let j = u32::try_from(j).map_err(|_| Error::Parse { pos, msg: "degree too large".to_string() })?;
        entries.push(((i as usize, j), v));
    }
    BettiDiagram::from_entries(n, entries)
}
