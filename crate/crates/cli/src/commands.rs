use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use detsing::catalog::{self, CatalogEntry, Comparison, GoldenFile, GoldenRecord};
use detsing::gbasis::{buchberger, dimension_at_origin, ideal_dimension, quotient_dimension, BasisDump};
use detsing::invariants::{check_input, milnor as run_milnor, InvariantError, InvariantReport, RunOptions};
use detsing::polycore::{parse_poly, Ordering, Ring};
use serde::Serialize;

use crate::input::{self, Resolved};
use crate::render;
use crate::{Format, Global, Outcome, Source};

/// Writes to stdout; a closed pipe is not an error.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit<T: Serialize>(g: &Global, doc: &T, text: impl FnOnce() -> String) {
    match g.format {
        Format::Structured => out(&(serde_json::to_string_pretty(doc).expect("reports serialize") + "\n")),
        Format::Text => out(&text()),
    }
}

fn resolve(source: &Source) -> Result<Resolved> {
    input::resolve(source.catalog.as_deref(), source.input.as_deref(), &source.params)
}

#[derive(Serialize)]
struct InputDoc {
    source: String,
    variables: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl InputDoc {
    fn new(r: &Resolved) -> Self {
        InputDoc { source: r.label.clone(), variables: r.matrix.ring().names().to_vec(), matrix: r.matrix.matrix().to_strings() }
    }
}

#[derive(Serialize)]
struct CheckDoc {
    command: &'static str,
    input: InputDoc,
    passed: bool,
    report: detsing::invariants::InputReport,
}

pub fn check(source: &Source, g: &Global) -> Result<Outcome> {
    let r = resolve(source)?;
    let report = check_input(&r.matrix).map_err(|e| anyhow!(e))?;
    let passed = report.passed();
    let doc = CheckDoc { command: "check", input: InputDoc::new(&r), passed, report };
    emit(g, &doc, || render::check(&r.label, &doc.report));
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct OptionsDoc {
    seed: u64,
    retries: u32,
    projection: String,
    perturbation: String,
}

#[derive(Serialize)]
struct ErrorDoc {
    stage: &'static str,
    message: String,
}

/// Pipeline stage an error is attributed to.
pub fn stage(e: &InvariantError) -> &'static str {
    match e {
        InvariantError::Input(_) | InvariantError::Matrix(_) | InvariantError::Poly(_) => "input",
        InvariantError::NonIsolated(_) => "isolatedness",
        InvariantError::SmoothingFailed { .. } => "smoothing",
        InvariantError::CriticalNotFinite { .. } | InvariantError::Degenerate { .. } => "critical-count",
        InvariantError::SeparationFailed { .. } => "separation",
        InvariantError::LocalCount(_) => "local-count",
        InvariantError::RetriesExhausted { .. } => "retries",
        InvariantError::Gb(_) => "groebner",
    }
}

#[derive(Serialize)]
struct MilnorDoc {
    command: &'static str,
    input: InputDoc,
    options: OptionsDoc,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<InvariantReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    expected: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorDoc>,
}

fn comparisons(r: &Resolved, report: &InvariantReport) -> Vec<Comparison> {
    let Some(e) = r.expected() else { return Vec::new() };
    let ind = Some(report.ind_ph as i64);
    e.compare(report.mu, report.mu_section, ind)
}

pub fn milnor(source: &Source, projection: &str, perturbation: &str, g: &Global) -> Result<Outcome> {
    let r = resolve(source)?;
    let opts = RunOptions {
        seed: g.seed,
        retries: g.retries,
        projection: input::projection(projection, &r.matrix)?,
        perturbation: input::perturbation(perturbation, &r)?,
    };
    let options = OptionsDoc { seed: g.seed, retries: g.retries, projection: projection.to_string(), perturbation: perturbation.to_string() };
    let started = Instant::now();
    let result = run_milnor(&r.matrix, &opts);
    let elapsed = started.elapsed();
    let mut doc = MilnorDoc { command: "milnor", input: InputDoc::new(&r), options, passed: false, report: None, expected: Vec::new(), error: None };
    match result {
        Ok(mut report) => {
            // only a published τ gives a meaningful verdict
            if let Some(tau) = r.expected().and_then(|e| e.tau).filter(|t| t.source == catalog::Source::Published) {
                report = report.with_conjecture(tau.value);
            }
            doc.expected = comparisons(&r, &report);
            doc.passed = report.consistency && report.global.agrees != Some(false) && !doc.expected.iter().any(Comparison::fails);
            doc.report = Some(report);
        }
        Err(e) if e.is_input_error() => return Err(anyhow!(e)),
        Err(e) => doc.error = Some(ErrorDoc { stage: stage(&e), message: e.to_string() }),
    }
    emit(g, &doc, || {
        let mut s = match (&doc.report, &doc.error) {
            (Some(rep), _) => render::report(&r.label, rep, g.verbose),
            (None, Some(e)) => format!("{}: failed at stage {}: {}\n", r.label, e.stage, e.message),
            (None, None) => unreachable!(),
        };
        s += &render::comparisons(&doc.expected);
        if g.verbose {
            s += &format!("elapsed        {:.2} s\n", elapsed.as_secs_f64());
        }
        s
    });
    Ok(if doc.passed { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
struct ListItem {
    id: &'static str,
    kind: catalog::EntryKind,
    description: &'static str,
    variables: &'static [&'static str],
    entries: [[&'static str; 3]; 2],
    k_min: Option<i64>,
    has_template: bool,
    provenance: &'static str,
}

pub fn catalog_list(g: &Global) -> Result<Outcome> {
    let items: Vec<ListItem> = catalog::list_entries()
        .iter()
        .map(|e| ListItem {
            id: e.id,
            kind: e.kind,
            description: e.description,
            variables: e.variables,
            entries: e.entries,
            k_min: e.k_min,
            has_template: e.template.is_some(),
            provenance: e.provenance,
        })
        .collect();
    emit(g, &items, || render::catalog_list(catalog::list_entries()));
    Ok(Outcome::Pass)
}

pub fn export(id: &str, params: &[String]) -> Result<Outcome> {
    let params = input::parse_params(params)?;
    if let Some(extra) = params.keys().find(|p| *p != "k") {
        bail!("catalog entries take only the parameter k, got `{extra}`");
    }
    let file = catalog::entry(id)?.file(params.get("k").copied())?;
    out(&file.to_toml());
    Ok(Outcome::Pass)
}

pub struct RunAllOptions {
    pub max_k: i64,
    pub only: Vec<String>,
    pub jobs: usize,
    pub freeze: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct RunRecord {
    pub id: &'static str,
    pub k: Option<i64>,
    pub passed: bool,
    pub mu: Option<i64>,
    pub mu_c: Option<i64>,
    pub ind_ph: Option<usize>,
    pub projection: Option<String>,
    pub attempts: Option<u32>,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorDoc>,
    #[serde(skip)]
    seconds: f64,
}

fn run_one(e: &'static CatalogEntry, k: Option<i64>, g: &Global) -> RunRecord {
    let started = Instant::now();
    let mut rec = RunRecord {
        id: e.id,
        k,
        passed: false,
        mu: None,
        mu_c: None,
        ind_ph: None,
        projection: None,
        attempts: None,
        comparisons: Vec::new(),
        error: None,
        seconds: 0.0,
    };
    let outcome = e.instantiate(k).map_err(|err| ErrorDoc { stage: "input", message: err.to_string() }).and_then(|m| {
        run_milnor(&m, &RunOptions { seed: g.seed, retries: g.retries, ..RunOptions::default() })
            .map_err(|err| ErrorDoc { stage: stage(&err), message: err.to_string() })
    });
    match outcome {
        Ok(report) => {
            let expected = e.expected(k).unwrap_or_default();
            rec.comparisons = expected.compare(report.mu, report.mu_section, Some(report.ind_ph as i64));
            rec.passed = report.consistency && report.global.agrees != Some(false) && !rec.comparisons.iter().any(Comparison::fails);
            rec.mu = report.mu;
            rec.mu_c = report.mu_section;
            rec.ind_ph = Some(report.ind_ph);
            rec.projection = Some(report.projection);
            rec.attempts = Some(report.attempts);
        }
        Err(err) => rec.error = Some(err),
    }
    rec.seconds = started.elapsed().as_secs_f64();
    rec
}

#[derive(Serialize)]
struct RunAllDoc {
    command: &'static str,
    seed: u64,
    retries: u32,
    passed: bool,
    results: Vec<RunRecord>,
}

pub fn run_all(o: &RunAllOptions, g: &Global) -> Result<Outcome> {
    for id in &o.only {
        catalog::entry(id)?;
    }
    let jobs: Vec<(&'static CatalogEntry, Option<i64>)> = catalog::list_entries()
        .iter()
        .filter(|e| o.only.is_empty() || o.only.iter().any(|id| id == e.id))
        .flat_map(|e| catalog::sweep(e).into_iter().filter(|k| k.is_none_or(|k| k <= o.max_k)).map(move |k| (e, k)))
        .collect();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunRecord>>> = Mutex::new(jobs.iter().map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..o.jobs.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, AtomicOrdering::Relaxed);
                let Some(&(e, k)) = jobs.get(i) else { break };
                let rec = run_one(e, k, g);
                if g.verbose {
                    eprintln!("{}", render::run_line(&rec));
                }
                slots.lock().expect("worker panicked")[i] = Some(rec);
            });
        }
    });
    let results: Vec<RunRecord> = slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every job ran")).collect();
    if let Some(path) = &o.freeze {
        let mut golden = GoldenFile::default();
        for r in results.iter().filter(|r| r.error.is_none()) {
            if let Some(k) = r.k {
                golden.freeze(r.id, GoldenRecord { k, mu: r.mu, mu_c: r.mu_c, ind: r.ind_ph.map(|v| v as i64) });
            }
        }
        std::fs::write(path, golden.to_toml()).with_context(|| format!("writing {}", path.display()))?;
    }
    let passed = results.iter().all(|r| r.passed);
    let doc = RunAllDoc { command: "catalog run-all", seed: g.seed, retries: g.retries, passed, results };
    emit(g, &doc, || render::run_all(&doc.results, g.verbose));
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

impl RunRecord {
    pub fn error_text(&self) -> Option<String> {
        self.error.as_ref().map(|e| format!("{}: {}", e.stage, e.message))
    }

    pub fn seconds(&self) -> f64 {
        self.seconds
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GbOrdering {
    Degrevlex,
    Lex,
    /// Negative degree reverse lexicographic; standard basis at the origin.
    Local,
}

/// Identifiers in order of first appearance.
fn infer_variables(lines: &[(usize, &str)]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for (_, line) in lines {
        let mut chars = line.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if c.is_ascii_alphabetic() || c == '_' {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                let name = &line[i..end];
                if !out.iter().any(|v| v == name) {
                    out.push(name.to_string());
                }
            }
        }
    }
    out
}

pub fn gb(path: &Path, ordering: GbOrdering, vars: Option<&str>, g: &Global) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#')).collect();
    if lines.is_empty() {
        bail!("{}: no generators", path.display());
    }
    let names = match vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => infer_variables(&lines),
    };
    if names.is_empty() {
        bail!("{}: no variables; pass --vars", path.display());
    }
    let ring = Ring::new(&names)?;
    let gens = lines
        .iter()
        .map(|&(n, l)| parse_poly(l, &ring).map_err(|e| anyhow!("{}:{n}:{}: {}", path.display(), e.column, e.message)))
        .collect::<Result<Vec<_>>>()?;
    let ord = match ordering {
        GbOrdering::Degrevlex => Ordering::DegRevLex,
        GbOrdering::Lex => Ordering::Lex,
        GbOrdering::Local => Ordering::NegDegRevLex,
    };
    let basis = buchberger(&gens, ord)?;
    let dimension = if ord.is_global() { ideal_dimension(&basis)? } else { dimension_at_origin(&basis)? };
    let dump = BasisDump {
        ordering: ord,
        basis: basis.basis().iter().map(|p| p.display(&ring).to_string()).collect(),
        unit_ideal: basis.is_unit_ideal(),
        dimension: Some(dimension),
        quotient_dimension: quotient_dimension(&basis).dimension,
    };
    emit(g, &dump, || render::basis(&ring, &dump));
    Ok(Outcome::Pass)
}
