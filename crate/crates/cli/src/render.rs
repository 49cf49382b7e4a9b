//! Deterministic plain-text rendering of analysis results. Identical
//! reports must serialize to identical bytes, so every float goes through
//! the same 17-digit formatter and all iteration orders are fixed.

use std::fmt::Write as _;

use qsep_core::{
    AnalysisReport, CriterionResult, FamilyFinding, FamilyRule, Overall, SharpnessReport,
    VerifyReport,
};

use crate::files::fmt_f64;

fn subset_label(subset: &[usize]) -> String {
    let qs: Vec<String> = subset.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", qs.join(","))
}

fn criterion_line(r: &CriterionResult) -> String {
    let mut line = format!("{}  margin {}", r.verdict, fmt_f64(r.margin));
    if let Some(w) = &r.witness {
        let _ = write!(line, "  ({w})");
    }
    line
}

pub fn render_analysis(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "state: n = {}, dim = {}", report.n, 1usize << report.n);

    if report.peres.is_empty() {
        let _ = writeln!(out, "partial transpose: no proper subsets at n = 1");
    } else {
        let _ = writeln!(out, "partial transpose:");
        for (subset, r) in &report.peres {
            let _ = writeln!(out, "  qubits {}: {}", subset_label(subset), criterion_line(r));
        }
    }

    if report.cauchy_schwarz_cuts.is_empty() {
        let _ = writeln!(out, "cross terms: no cuts at n = 1");
    } else {
        let _ = writeln!(out, "cross terms:");
        for (cut, r) in &report.cauchy_schwarz_cuts {
            let _ = writeln!(out, "  cut {cut}: {}", criterion_line(r));
        }
    }

    let _ = writeln!(out, "anti-diagonal: {}", criterion_line(&report.antidiagonal));
    let _ = writeln!(out, "spin 1-norm: {}", fmt_f64(report.spin_norm));
    let _ = writeln!(
        out,
        "  norm bound (<= 1 certifies): {}",
        criterion_line(&report.spin_norm_sufficient)
    );
    let _ = writeln!(
        out,
        "  neighborhood bound (per-coefficient): {}",
        criterion_line(&report.random_neighborhood)
    );

    if let Some(f) = &report.family {
        let _ = writeln!(out, "family: {}", family_line(f));
    }
    out
}

fn family_line(f: &FamilyFinding) -> String {
    let rule = match f.rule {
        FamilyRule::Sufficient { .. } => "sufficient only",
        FamilyRule::IfAndOnlyIf { .. } => "decides separability",
    };
    format!("{}: {}  [{rule}]", f.label, criterion_line(&f.result))
}

pub fn verdict_line(overall: Overall) -> String {
    format!("verdict: {overall}")
}

pub fn exit_code(overall: Overall) -> i32 {
    match overall {
        Overall::FullySeparable { .. } => 0,
        Overall::NotFullySeparable => 1,
        Overall::Inconclusive => 2,
    }
}

pub fn render_verify(report: &VerifyReport, tolerance: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "terms sum to {}", fmt_f64(report.weight_sum));
    let _ = writeln!(
        out,
        "max deviation from target: {} (tolerance {})",
        fmt_f64(report.max_deviation),
        fmt_f64(tolerance)
    );
    for v in &report.violations {
        let _ = writeln!(out, "violation: {v}");
    }
    let _ = writeln!(out, "result: {}", if report.pass { "pass" } else { "fail" });
    out
}

/// The banded-family specifics: the equality decision, the norm identity,
/// the transpose blind spot, and the angle bookkeeping at n = 3.
pub fn render_sharpness_extras(report: &SharpnessReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "band decision (separable iff bands agree): {}",
        criterion_line(&report.decision)
    );
    let _ = writeln!(out, "spin 1-norm 1 + 2^(n-1)|c - d| = {}", fmt_f64(report.spin_norm));
    let _ = writeln!(
        out,
        "partial transpose over all {} proper subsets: {}",
        report.peres.len(),
        if report.peres_all_pass {
            "all pass"
        } else {
            "some fail"
        }
    );
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}
