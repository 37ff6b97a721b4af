//! Built-in normal forms of simple determinantal surfaces, the section
//! curves they induce, and their expected invariants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matgerm::{DeformationTemplate, MatrixError, MatrixFile, PresentationMatrix};
use crate::polycore::{rat, Ring};

/// Golden values for entries whose intermediate invariants are computed
/// once and then frozen.
pub const GOLDEN: &str = include_str!("golden.toml");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("`{id}` takes no parameter")]
    NotParametric { id: String },
    #[error("`{id}` needs the parameter k")]
    MissingParameter { id: String },
    #[error("k = {k} is outside the domain k >= {min} of `{id}`")]
    OutOfDomain { id: String, k: i64, min: i64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Stated in the literature and reproduced.
    Published,
    /// Stated in the literature for a special projection; not reproduced by
    /// a generic one. Reported, never fails a run.
    PublishedConflict,
    /// Follows from the conjectured equality `τ = μ + 1`.
    TauConjecture,
    /// Frozen from a certified run.
    Golden,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Value {
    pub value: i64,
    pub source: Source,
}

impl Value {
    fn published(value: i64) -> Option<Value> {
        Some(Value { value, source: Source::Published })
    }

    /// Values a run must reproduce.
    pub fn binding(&self) -> bool {
        self.source != Source::PublishedConflict
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub mu: Option<Value>,
    pub tau: Option<Value>,
    pub mu_c: Option<Value>,
    pub ind: Option<Value>,
}

/// One expected value set against a computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub quantity: &'static str,
    pub expected: i64,
    pub got: Option<i64>,
    pub source: Source,
    pub binding: bool,
    pub matches: bool,
}

impl Comparison {
    /// A binding value that was not reproduced.
    pub fn fails(&self) -> bool {
        self.binding && !self.matches
    }
}

impl Expected {
    /// Compares `μ`, `μ(C)` and `ind_PH`; `τ` is never computed.
    pub fn compare(&self, mu: Option<i64>, mu_c: Option<i64>, ind: Option<i64>) -> Vec<Comparison> {
        [("mu", self.mu, mu), ("mu_c", self.mu_c, mu_c), ("ind_ph", self.ind, ind)]
            .into_iter()
            .filter_map(|(quantity, e, got)| {
                e.map(|e| Comparison { quantity, expected: e.value, got, source: e.source, binding: e.binding(), matches: got == Some(e.value) })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Surface,
    Curve,
}

/// One catalog entry. Entry strings may use the parameter `k`.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub description: &'static str,
    pub variables: &'static [&'static str],
    pub entries: [[&'static str; 3]; 2],
    /// Smallest admissible `k`; `None` for fixed matrices.
    pub k_min: Option<i64>,
    /// Deformation by a parameter `lambda`, when a smoothing is recorded.
    pub template: Option<[[&'static str; 3]; 2]>,
    pub provenance: &'static str,
}

const SURFACE: &[&str] = &["x", "y", "z", "w"];
const CURVE: &[&str] = &["x", "y", "z"];

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "ex1",
        kind: EntryKind::Surface,
        description: "simplest determinantal surface singularity in 4-space",
        variables: SURFACE,
        entries: [["z", "y", "x"], ["w", "z", "y"]],
        k_min: None,
        template: None,
        provenance: "mu = 1, mu_C = 2, ind = 3 published; tau = 2 assumes tau = mu + 1",
    },
    CatalogEntry {
        id: "ex1-variant",
        kind: EntryKind::Surface,
        description: "first example obtained from the versal unfolding of its section curve (a = b = w, c = 0)",
        variables: SURFACE,
        entries: [["z", "y+w", "x"], ["w", "x", "y"]],
        k_min: None,
        template: Some([["0", "0", "lambda"], ["0", "0", "0"]]),
        provenance: "smoothing c = lambda of the versal unfolding; 3 critical points of w; values as for ex1",
    },
    CatalogEntry {
        id: "ex2",
        kind: EntryKind::Surface,
        description: "family from the Fruehbis-Krueger-Neumer list of simple determinantal surfaces",
        variables: SURFACE,
        entries: [["z", "w+x", "y^k"], ["w", "y", "x"]],
        k_min: Some(1),
        template: Some([["0", "0", "lambda"], ["0", "0", "0"]]),
        provenance: "mu = k published; ind = 2k and mu_C = k + 1 are stated for the projection w and do not add up (2k - (k+1) = k - 1); tau = k + 1 assumes tau = mu + 1",
    },
    CatalogEntry {
        id: "ex3",
        kind: EntryKind::Surface,
        description: "family with mu = 2k + 3",
        variables: SURFACE,
        entries: [["z", "y", "x"], ["x", "w", "y*z+y^k*w"]],
        k_min: Some(1),
        template: None,
        provenance: "mu = 2k + 3; for k = 1 also ind = 8 (projection y - z), mu_C = 3, tau = 6; mu_C and ind for k >= 2 are golden values",
    },
    CatalogEntry {
        id: "ex1-section",
        kind: EntryKind::Curve,
        description: "section curve of ex1-variant by w = 0",
        variables: CURVE,
        entries: [["z", "y", "x"], ["0", "x", "y"]],
        k_min: None,
        template: None,
        provenance: "mu = 2 published",
    },
    CatalogEntry {
        id: "ex2-section",
        kind: EntryKind::Curve,
        description: "section curve of ex2 by w = 0",
        variables: CURVE,
        entries: [["z", "x", "y^k"], ["0", "y", "x"]],
        k_min: Some(1),
        template: None,
        provenance: "mu = k + 1 published",
    },
    CatalogEntry {
        id: "ex3-section",
        kind: EntryKind::Curve,
        description: "section curve of ex3 (k = 1) by y = z",
        variables: &["x", "z", "w"],
        entries: [["w", "x", "z^2"], ["0", "z", "x"]],
        k_min: None,
        template: None,
        provenance: "mu = 3 (first normal form of the simple space curves)",
    },
];

/// All entries, in a fixed order.
pub fn list_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES.iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

impl CatalogEntry {
    pub fn is_parametric(&self) -> bool {
        self.k_min.is_some()
    }

    fn check_k(&self, k: Option<i64>) -> Result<Option<i64>, CatalogError> {
        match (self.k_min, k) {
            (None, None) => Ok(None),
            (None, Some(_)) => Err(CatalogError::NotParametric { id: self.id.into() }),
            (Some(_), None) => Err(CatalogError::MissingParameter { id: self.id.into() }),
            (Some(min), Some(k)) if k < min => Err(CatalogError::OutOfDomain { id: self.id.into(), k, min }),
            (Some(_), Some(k)) => Ok(Some(k)),
        }
    }

    /// Matrix file at parameter `k`.
    pub fn file(&self, k: Option<i64>) -> Result<MatrixFile, CatalogError> {
        let k = self.check_k(k)?;
        let grid = |g: &[[&str; 3]; 2]| g.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect();
        let mut params = BTreeMap::new();
        if let Some(k) = k {
            params.insert("k".to_string(), k);
        }
        if self.template.is_some() {
            params.insert("lambda".to_string(), 1);
        }
        Ok(MatrixFile {
            variables: self.variables.iter().map(|s| s.to_string()).collect(),
            entries: grid(&self.entries),
            deformation: self.template.as_ref().map(grid),
            params,
        })
    }

    pub fn instantiate(&self, k: Option<i64>) -> Result<PresentationMatrix, CatalogError> {
        self.file(k)?.presentation().map_err(file_error)
    }

    /// The recorded smoothing at `lambda = 1`.
    pub fn template(&self, k: Option<i64>) -> Result<Option<DeformationTemplate>, CatalogError> {
        self.file(k)?.template().map_err(file_error)
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.variables).expect("catalog variable names are valid")
    }

    pub fn expected(&self, k: Option<i64>) -> Result<Expected, CatalogError> {
        let k = self.check_k(k)?;
        let conj = |v: i64| Some(Value { value: v, source: Source::TauConjecture });
        let conflict = |v: i64| Some(Value { value: v, source: Source::PublishedConflict });
        Ok(match (self.id, k) {
            ("ex1" | "ex1-variant", _) => {
                Expected { mu: Value::published(1), tau: conj(2), mu_c: Value::published(2), ind: Value::published(3) }
            }
            ("ex2", Some(k)) => Expected { mu: Value::published(k), tau: conj(k + 1), mu_c: conflict(k + 1), ind: conflict(2 * k) },
            ("ex3", Some(1)) => Expected {
                mu: Value::published(5),
                tau: Value::published(6),
                mu_c: Value::published(3),
                ind: Value::published(8),
            },
            ("ex3", Some(k)) => {
                let g = golden(self.id, k);
                let frozen = |v: Option<i64>| v.map(|value| Value { value, source: Source::Golden });
                Expected {
                    mu: Value::published(2 * k + 3),
                    tau: conj(2 * k + 4),
                    mu_c: frozen(g.and_then(|g| g.mu_c)),
                    ind: frozen(g.and_then(|g| g.ind)),
                }
            }
            ("ex1-section", _) => Expected { mu: Value::published(2), ..Expected::default() },
            ("ex2-section", Some(k)) => Expected { mu: Value::published(k + 1), ..Expected::default() },
            ("ex3-section", _) => Expected { mu: Value::published(3), ..Expected::default() },
            _ => Expected::default(),
        })
    }

    /// Projection fixed by the published computation, if any.
    pub fn published_projection(&self, k: Option<i64>) -> Option<&'static str> {
        match (self.id, k) {
            ("ex3", Some(1)) => Some("y-z"),
            ("ex1-variant", _) => Some("w"),
            _ => None,
        }
    }
}

fn file_error(e: crate::matgerm::MatrixFileError) -> CatalogError {
    match e {
        crate::matgerm::MatrixFileError::Matrix(m) => CatalogError::Matrix(m),
        other => CatalogError::Matrix(MatrixError::Shape(other.to_string())),
    }
}

/// A frozen record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub k: i64,
    pub mu: Option<i64>,
    pub mu_c: Option<i64>,
    pub ind: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    #[serde(default)]
    pub entries: BTreeMap<String, Vec<GoldenRecord>>,
}

impl GoldenFile {
    pub fn parse(s: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(s)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("golden file is serializable")
    }

    pub fn get(&self, id: &str, k: i64) -> Option<GoldenRecord> {
        self.entries.get(id)?.iter().find(|r| r.k == k).copied()
    }

    /// Inserts or replaces the record for `(id, k)`.
    pub fn freeze(&mut self, id: &str, record: GoldenRecord) {
        let list = self.entries.entry(id.to_string()).or_default();
        list.retain(|r| r.k != record.k);
        list.push(record);
        list.sort_by_key(|r| r.k);
    }
}

fn golden(id: &str, k: i64) -> Option<GoldenRecord> {
    GoldenFile::parse(GOLDEN).expect("bundled golden file parses").get(id, k)
}

/// Parameter values swept by `run-all` for an entry.
pub fn sweep(e: &CatalogEntry) -> Vec<Option<i64>> {
    match e.k_min {
        Some(min) => (min..min + 4).map(Some).collect(),
        None => vec![None],
    }
}

/// `lambda = 0` member of a template, for negative certificate checks.
pub fn unperturbed(t: DeformationTemplate) -> DeformationTemplate {
    t.with_assignment("lambda", rat(0))
}

#[cfg(test)]
mod tests;
