use std::fmt::Write;

use detsing::catalog::{CatalogEntry, Comparison};
use detsing::gbasis::BasisDump;
use detsing::invariants::{InputReport, InvariantReport};
use detsing::polycore::Ring;

use crate::commands::RunRecord;

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn matrix(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

pub fn check(label: &str, r: &InputReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input          {label}");
    let _ = writeln!(s, "shape          {}x{} with maximal minors: {}", r.rows, r.cols, ok(r.shape_ok));
    let _ = writeln!(s, "codimension    dimension {} in {} variables: {}", r.dimension, r.ambient_dimension, ok(r.codimension_two));
    let _ = writeln!(s, "isolated       singular locus dimension {}: {}", r.singular_locus_dimension, ok(r.isolated));
    let _ = writeln!(s, "ambient bound  {} <= {}: {}", r.ambient_dimension, r.ambient_bound, ok(r.bound_ok));
    let _ = writeln!(s, "verdict        {}", if r.passed() { "pass" } else { "fail" });
    s
}

fn indent(s: &str, by: &str) -> String {
    s.lines().map(|l| format!("{by}{l}\n")).collect()
}

pub fn report(label: &str, r: &InvariantReport, verbose: bool) -> String {
    let mut s = String::new();
    let d = r.dimension;
    let _ = writeln!(s, "{:?} {label} in {}", r.kind, r.variables.join(", "));
    let _ = writeln!(s, "matrix         {}", matrix(&r.matrix));
    let _ = writeln!(s, "projection     p = {}", r.projection);
    let sm = &r.smoothing;
    let how = match sm.seed {
        Some(seed) => format!("auto, seed {seed}"),
        None => "template".to_string(),
    };
    let _ = writeln!(s, "smoothing      {how}, certified {}, {} attempt(s)", sm.certificate, sm.attempts);
    if verbose {
        let _ = writeln!(s, "  X_t          {}", matrix(&sm.matrix));
    }
    let c = &r.critical;
    let _ = writeln!(s, "critical pts   {} on X_t, nondegenerate {}", c.count, c.nondegenerate);
    if verbose {
        if let Some(f) = &c.separating_form {
            let _ = writeln!(s, "  separated by {f} after {} attempt(s)", c.separation_attempts);
        }
    }
    let _ = writeln!(s, "m_{d} = ind_PH   {}", r.m_d);
    if let (Some(m0), Some(m1)) = (r.m0, r.m1) {
        let _ = writeln!(s, "m_0, m_1       {m0}, {m1}");
        if let Some(l) = &r.multiplicity_form {
            let _ = writeln!(s, "  m_0 via      {l}");
        }
    }
    if let Some(mc) = r.mu_section {
        let _ = writeln!(s, "mu(section)    {mc}");
    }
    if let Some(mu) = r.mu {
        let _ = writeln!(s, "mu             {mu}");
    }
    if let Some(c) = r.combined {
        let _ = writeln!(s, "m_3 - mu(S)    {c}");
    }
    if let Some(chi) = r.euler_characteristic {
        let _ = writeln!(s, "euler char     {chi}");
    }
    let _ = writeln!(s, "consistency    {}", ok(r.consistency));
    let gl = &r.global;
    match (&gl.weights, gl.mu) {
        (Some(w), Some(mu)) => {
            let _ = writeln!(s, "global check   weights {w:?}: mu = {mu}, {}", if gl.agrees == Some(true) { "agrees" } else { "DISAGREES" });
        }
        (Some(w), None) => {
            let _ = writeln!(s, "global check   weights {w:?}: not available");
        }
        (None, _) => {
            let _ = writeln!(s, "global check   not weighted-homogeneous, local count only");
        }
    }
    if let Some(v) = &r.conjecture {
        let _ = writeln!(s, "mu = tau - 1   {} (tau = {})", v.equal_to_tau_minus_1, v.tau);
    }
    let _ = writeln!(s, "seed           {} (attempt {})", r.seed, r.attempts);
    if verbose {
        if let Some(sec) = &r.section {
            let _ = writeln!(s, "section:");
            s += &indent(&report("section", sec, true), "  ");
        }
    }
    s
}

pub fn comparisons(cs: &[Comparison]) -> String {
    let mut s = String::new();
    for c in cs {
        let got = c.got.map_or("-".to_string(), |v| v.to_string());
        let status = match (c.matches, c.binding) {
            (true, _) => "ok",
            (false, true) => "MISMATCH",
            (false, false) => "differs (not binding)",
        };
        let _ = writeln!(s, "expected       {} = {} [{:?}], got {got}: {status}", c.quantity, c.expected, c.source);
    }
    s
}

pub fn catalog_list(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let k = e.k_min.map_or(String::new(), |m| format!(" k>={m}"));
        let rows: Vec<Vec<String>> = e.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let _ = writeln!(s, "{:<12} {:<8}{k:<6} {}  {}", e.id, format!("{:?}", e.kind).to_lowercase(), matrix(&rows), e.description);
    }
    s
}

pub fn run_line(r: &RunRecord) -> String {
    let k = r.k.map_or(String::new(), |k| format!(" k={k}"));
    let head = format!("{}{k}", r.id);
    match r.error_text() {
        Some(e) => format!("FAIL {head:<16} {e}"),
        None => {
            let v = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
            let ind = r.ind_ph.map_or("-".to_string(), |v| v.to_string());
            let bad: Vec<String> = r.comparisons.iter().filter(|c| c.fails()).map(|c| format!("{} expected {}", c.quantity, c.expected)).collect();
            let note = if bad.is_empty() { String::new() } else { format!("  ({})", bad.join(", ")) };
            format!("{} {head:<16} mu={} mu_c={} ind={ind}{note}", if r.passed { "PASS" } else { "FAIL" }, v(r.mu), v(r.mu_c))
        }
    }
}

pub fn run_all(results: &[RunRecord], verbose: bool) -> String {
    let mut s = String::new();
    for r in results {
        s += &run_line(r);
        if verbose {
            let _ = write!(s, "  [{:.2} s]", r.seconds());
        }
        s.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(s, "{} run(s), {failed} failed", results.len());
    s
}

pub fn basis(ring: &Ring, d: &BasisDump) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "variables           {}", ring.names().join(", "));
    let _ = writeln!(s, "ordering            {:?}", d.ordering);
    if d.unit_ideal {
        let _ = writeln!(s, "unit ideal: the generators have no common zero");
        return s;
    }
    for (i, p) in d.basis.iter().enumerate() {
        let _ = writeln!(s, "{:<20}{p}", if i == 0 { "basis" } else { "" });
    }
    if let Some(dim) = d.dimension {
        let _ = writeln!(s, "dimension           {dim}");
    }
    match d.quotient_dimension {
        Some(q) => {
            let _ = writeln!(s, "quotient dimension  {q}");
        }
        None => {
            let _ = writeln!(s, "quotient dimension  infinite");
        }
    }
    s
}
