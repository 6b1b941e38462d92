use std::fmt::Write;

use anyhow::Result;
use multbound::betti::BettiDiagram;
use multbound::hilbert::HilbertFunction;
use multbound::koszul::{
    cross_check, koszul_betti, truncation_analysis, verify_truncation_rows, NotApplicable, Route, TruncationOutcome,
    CROSS_CHECK_CHARACTERISTICS,
};
use multbound::monomial::{lex_ideal, MonomialIdeal};
use multbound::verdict::{classify, lower_bound_holds, upper_bound_holds, BoundVerdict, ClassifyOptions, Outcome};

use crate::report::ExceptionRecord;

fn tuple(v: &[u32]) -> String {
    let s: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", s.join(","))
}

fn indent(d: &BettiDiagram) -> String {
    d.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

/// `∏m/c! ≤ e ≤ ∏M/c!` with the comparison signs that actually hold.
pub fn bounds_line(lower: &BoundVerdict, upper: &BoundVerdict) -> String {
    let left = if lower.holds { "≤" } else { ">" };
    let right = if upper.holds { "≤" } else { ">" };
    format!("{} {left} {} {right} {}", lower.bound(), upper.e, upper.bound())
}

fn verdict_line(v: &BoundVerdict) -> String {
    let sign = if v.holds { "<=" } else { ">" };
    format!("{} {sign} {} ({})", v.lhs, v.rhs, if v.holds { "holds" } else { "fails" })
}

/// Classification of one Hilbert function with every intermediate diagram.
/// Returns the text and the outcome status.
pub fn check_hf(h: &HilbertFunction, n: usize, options: &ClassifyOptions) -> Result<(String, &'static str)> {
    let c = classify(h, n, options)?;
    let mut out = String::new();
    writeln!(out, "H = ({h}), n = {n}, e = {}", c.multiplicity)?;
    writeln!(out, "lex ideal: {}", lex_ideal(h, n)?)?;
    writeln!(out, "lex diagram:\n{}", indent(&c.lex))?;
    let stages = c.lex.greedy_stages();
    for (k, stage) in stages.iter().enumerate() {
        writeln!(out, "after cancelling columns {} and {}:\n{}", k + 1, k + 2, indent(stage))?;
    }
    let m = c.greedy.min_shifts()?;
    let big_m = c.greedy.max_shifts()?;
    writeln!(out, "minimal shifts m = {}, maximal shifts M = {}", tuple(&m), tuple(&big_m))?;
    let lower = lower_bound_holds(c.multiplicity, &m, n)?;
    let upper = upper_bound_holds(c.multiplicity, &big_m, n)?;
    writeln!(out, "bounds: {}", bounds_line(&lower, &upper))?;
    writeln!(out, "upper bound (c!e vs prod M): {}", verdict_line(&c.verdict))?;
    if let Some(r) = ExceptionRecord::from_classification(&c) {
        let w = &r.witnesses;
        if let Some(er) = &w.evans_richert {
            writeln!(out, "greedy diagram fails Evans-Richert at i={}, t={} ({} < {})", er.i, er.t, er.below, er.i)?;
        }
        writeln!(out, "violating potential diagrams: {}", w.violating_diagrams)?;
        for (f, k) in &w.first_failure {
            writeln!(out, "  rejected first by {f}: {k}")?;
        }
        writeln!(out, "  passing er and gen: {}", w.pass_er_gen)?;
        if let Some(aci) = &w.aci {
            writeln!(out, "  almost complete intersection in degree {}: {}", aci.degree, aci.obstruction)?;
        }
        if w.cap_exceeded {
            writeln!(out, "  search stopped at the node cap ({} nodes)", w.search_nodes)?;
        }
        if let Outcome::Unresolved(res) = &c.outcome {
            writeln!(out, "  surviving diagrams: {}", res.survivor_count)?;
            for d in &res.survivors {
                writeln!(out, "{}", indent(d))?;
            }
        }
        writeln!(out, "status: {} ({})", r.status, r.reason)?;
    } else {
        writeln!(out, "status: {}", c.outcome.status())?;
    }
    Ok((out, c.outcome.status()))
}

#[derive(Debug, Clone, Copy)]
pub struct IdealOptions {
    pub truncate: Option<u32>,
    pub characteristic: u64,
    pub degree_cap: Option<u32>,
    pub cross_check: bool,
}

/// Koszul Betti numbers, shifts, bounds and the truncation analysis of a
/// monomial quotient.
pub fn check_ideal(ideal: &MonomialIdeal, options: &IdealOptions) -> Result<String> {
    let n = ideal.nvars();
    let p = options.characteristic;
    let mut out = String::new();
    let plural = if n == 1 { "" } else { "s" };
    writeln!(out, "I = ({ideal}) in {n} variable{plural}, characteristic {p}")?;
    let d = koszul_betti(ideal, p, options.degree_cap)?;
    writeln!(out, "betti diagram:\n{}", indent(&d))?;
    if options.cross_check {
        let check = cross_check(ideal, &CROSS_CHECK_CHARACTERISTICS, options.degree_cap)?;
        let chars: Vec<String> = check.diagrams.iter().map(|(p, _)| p.to_string()).collect();
        let verdict = if check.agree() { "agree" } else { "DIFFER" };
        writeln!(out, "characteristics {}: {verdict}", chars.join(", "))?;
    }
    if let Some(reg) = d.regularity() {
        writeln!(out, "regularity: {reg}")?;
    }
    let m = d.min_shifts()?;
    let big_m = d.max_shifts()?;
    writeln!(out, "minimal shifts m = {}, maximal shifts M = {}", tuple(&m), tuple(&big_m))?;
    writeln!(out, "pure: {}, quasipure: {}", d.is_pure(), d.is_quasipure())?;

    if !ideal.is_artinian() {
        let cap = options.degree_cap.unwrap_or(0);
        let q = ideal.quotient_hilbert_function(cap);
        writeln!(out, "hilbert function through degree {cap}: ({})", q.hf)?;
        writeln!(out, "not Artinian: bounds and truncation analysis need a finite quotient")?;
        return Ok(out);
    }
    let h = ideal.artinian_hilbert_function()?;
    let e = h.multiplicity()?;
    writeln!(out, "hilbert function: ({h})")?;
    writeln!(out, "multiplicity: {e}")?;
    if m.len() == n {
        let lower = lower_bound_holds(e, &m, n)?;
        let upper = upper_bound_holds(e, &big_m, n)?;
        writeln!(out, "bounds: {}", bounds_line(&lower, &upper))?;
        writeln!(out, "lower bound (prod m vs c!e): {}", verdict_line(&lower))?;
        writeln!(out, "upper bound (c!e vs prod M): {}", verdict_line(&upper))?;
    }

    if let Some(t) = options.truncate {
        let truncated = ideal.truncate(t);
        let et = truncated.artinian_hilbert_function()?.multiplicity()?;
        let rows = verify_truncation_rows(ideal, t, p, options.degree_cap)?;
        writeln!(out, "truncation at degree {t}: ({truncated})")?;
        writeln!(out, "{}", indent(&rows.truncated))?;
        writeln!(out, "multiplicity {e} vs {et} after truncation (difference {})", et - e)?;
        let same: Vec<String> = rows.rows.iter().filter(|r| r.equal()).map(|r| r.row.to_string()).collect();
        writeln!(
            out,
            "rows >= {t} unchanged: {} (equal rows: {})",
            rows.all_equal(),
            if same.is_empty() { "-".to_string() } else { same.join(",") }
        )?;
    }

    match truncation_analysis(ideal, p)? {
        TruncationOutcome::Certified(c) => {
            let how = match &c.route {
                Route::Quasipure => "the diagram is quasipure".to_string(),
                Route::Truncation { degree, truncated_multiplicity, truncated_verdict, .. } => format!(
                    "generator in degree {degree}, e = {} <= {truncated_multiplicity} = e after truncating at {degree}, \
                     truncation quasipure with the same maximal shifts, {}",
                    c.multiplicity,
                    verdict_line(truncated_verdict)
                ),
            };
            writeln!(out, "truncation analysis: CERTIFIED (regularity {}; {how})", c.regularity)?;
        }
        TruncationOutcome::NotApplicable(why) => {
            let why = match why {
                NotApplicable::NoHighDegreeGenerator { regularity, max_generator_degree } => format!(
                    "generators stop in degree {max_generator_degree}, below the regularity {regularity}"
                ),
                NotApplicable::TruncationNotQuasipure { degree, .. } => {
                    format!("truncation at {degree} is not quasipure")
                }
                NotApplicable::ShiftsDiffer { original, truncated } => {
                    format!("maximal shifts change from {} to {}", tuple(&original), tuple(&truncated))
                }
                NotApplicable::MultiplicityDecreased { original, truncated } => {
                    format!("multiplicity drops from {original} to {truncated}")
                }
                NotApplicable::BoundFailsOnTruncation(v) => format!("bound fails on the truncation: {}", verdict_line(&v)),
            };
            writeln!(out, "truncation analysis: NOT_APPLICABLE ({why})")?;
        }
    }
    Ok(out)
}
