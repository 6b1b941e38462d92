use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use multbound::hilbert::AciWitness;
use multbound::verdict::{Classification, Filter, Outcome};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParams {
    pub vars: usize,
    pub socle_max: usize,
    pub prefix: Vec<u64>,
    pub filters: String,
    pub dfs_cap: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub scanned: u64,
    pub bound_holds: u64,
    pub eliminated: u64,
    pub unresolved: u64,
    /// Eliminated functions keyed by the filters that rejected their
    /// violating diagrams, e.g. `er+aci`.
    pub eliminated_by: BTreeMap<String, u64>,
    /// Exceptions with a violating diagram passing both Evans-Richert and
    /// the generator count.
    pub remaining_after_er_gen: u64,
    /// Violating potential diagrams summed over all exceptions.
    pub violating_diagrams: u64,
    pub cap_exceeded: u64,
}

impl Counts {
    pub fn exceptions(&self) -> u64 {
        self.eliminated + self.unresolved
    }

    pub fn record(&mut self, record: Option<&ExceptionRecord>) {
        self.scanned += 1;
        let Some(r) = record else {
            self.bound_holds += 1;
            return;
        };
        match r.status.as_str() {
            "ELIMINATED" => {
                self.eliminated += 1;
                *self.eliminated_by.entry(r.reason.clone()).or_insert(0) += 1;
            }
            _ => self.unresolved += 1,
        }
        let w = &r.witnesses;
        if w.pass_er_gen > 0 {
            self.remaining_after_er_gen += 1;
        }
        self.violating_diagrams += w.violating_diagrams as u64;
        if w.cap_exceeded {
            self.cap_exceeded += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErWitness {
    pub i: usize,
    pub t: u32,
    pub below: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AciRecord {
    pub degree: u32,
    pub obstruction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// Evans-Richert failure of the greedy diagram.
    pub evans_richert: Option<ErWitness>,
    pub aci: Option<AciRecord>,
    pub violating_diagrams: usize,
    pub first_failure: BTreeMap<String, usize>,
    pub pass_er_gen: usize,
    pub survivors: usize,
    /// Up to a few surviving diagrams in `i j count` form.
    pub survivor_diagrams: Vec<String>,
    pub cap_exceeded: bool,
    pub search_nodes: usize,
}

/// One Hilbert function whose greedy diagram violates the upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    pub hf: String,
    pub e: u64,
    pub shifts: Vec<u32>,
    pub lhs: u64,
    pub rhs: u64,
    pub status: String,
    pub reason: String,
    /// The greedy diagram in `i j count` form.
    pub greedy: String,
    pub witnesses: Witnesses,
}

fn describe_aci(w: &AciWitness) -> String {
    match w {
        AciWitness::ExceedsCi { degree } => format!("exceeds the complete intersection in degree {degree}"),
        AciWitness::LowDegreeDifference { degree } => format!("differs from it below the generators, degree {degree}"),
        AciWitness::ColonNotOSequence { colon } => {
            let s: Vec<String> = colon.iter().map(u64::to_string).collect();
            format!("colon ({}) is not an O-sequence", s.join(","))
        }
    }
}

impl ExceptionRecord {
    /// `None` when the bound holds.
    pub fn from_classification(c: &Classification) -> Option<ExceptionRecord> {
        let residue = c.outcome.residue()?;
        let witnesses = Witnesses {
            evans_richert: residue.greedy_er.map(|v| ErWitness { i: v.i, t: v.t, below: v.below }),
            aci: residue.aci.as_ref().map(|(d, w)| AciRecord { degree: *d, obstruction: describe_aci(w) }),
            violating_diagrams: residue.violating,
            first_failure: Filter::ALL
                .into_iter()
                .zip(residue.first_failure)
                .filter(|&(_, k)| k > 0)
                .map(|(f, k)| (f.name().to_string(), k))
                .collect(),
            pass_er_gen: residue.pass_er_gen,
            survivors: residue.survivor_count,
            survivor_diagrams: residue.survivors.iter().map(|d| d.to_machine()).collect(),
            cap_exceeded: residue.cap_exceeded,
            search_nodes: residue.nodes,
        };
        let reason = match &c.outcome {
            Outcome::Unresolved(r) if !r.cap_exceeded => "survivors".to_string(),
            _ => residue.reason_label(),
        };
        Some(ExceptionRecord {
            hf: c.hf.to_string(),
            e: c.multiplicity,
            shifts: c.verdict.shifts.clone(),
            lhs: c.verdict.lhs,
            rhs: c.verdict.rhs,
            status: c.outcome.status().to_string(),
            reason,
            greedy: c.greedy.to_machine(),
            witnesses,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub params: ScanParams,
    pub counts: Counts,
    pub exceptions: Vec<ExceptionRecord>,
    /// Last Hilbert function fully processed, in enumeration order.
    pub cursor: Option<String>,
    /// `COMPLETE` or `INCOMPLETE`.
    pub status: String,
    pub elapsed_seconds: f64,
}

impl ScanReport {
    pub fn is_complete(&self) -> bool {
        self.status == "COMPLETE"
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }

    /// One row per exception.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["hf", "e", "shifts", "lhs", "rhs", "status", "reason"])?;
        for r in &self.exceptions {
            let shifts: Vec<String> = r.shifts.iter().map(u32::to_string).collect();
            w.write_record([
                r.hf.clone(),
                r.e.to_string(),
                shifts.join(" "),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.status.clone(),
                r.reason.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let c = &self.counts;
        let mut s = String::new();
        let p = &self.params;
        let prefix: Vec<String> = p.prefix.iter().map(u64::to_string).collect();
        s += &format!(
            "scan: vars={} prefix={} socle<={} filters={} dfs-cap={}\n",
            p.vars,
            prefix.join(","),
            p.socle_max,
            p.filters,
            p.dfs_cap
        );
        s += &format!("status: {}\n", self.status);
        s += &format!("scanned: {}\n", c.scanned);
        s += &format!("bound holds: {}\n", c.bound_holds);
        s += &format!("exceptions: {}\n", c.exceptions());
        s += &format!("eliminated: {}\n", c.eliminated);
        for (reason, k) in &c.eliminated_by {
            s += &format!("  by {reason}: {k}\n");
        }
        s += &format!("remaining after er+gen: {}\n", c.remaining_after_er_gen);
        s += &format!("unresolved: {}\n", c.unresolved);
        if c.cap_exceeded > 0 {
            s += &format!("  cap exceeded: {}\n", c.cap_exceeded);
        }
        s += &format!("violating diagrams: {}\n", c.violating_diagrams);
        for r in self.exceptions.iter().filter(|r| r.status == "UNRESOLVED") {
            s += &format!("UNRESOLVED {} ({})\n", r.hf, r.reason);
        }
        s += &format!("elapsed: {:.1}s\n", self.elapsed_seconds);
        s
    }
}
