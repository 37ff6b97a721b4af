use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{DeformationTemplate, Matrix, MatrixError, PresentationMatrix};
use crate::polycore::{parse_poly_with_params, rat, ParseError, Poly, Ring};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed matrix file: {0}")]
    Syntax(String),
    #[error("{field} row {row}, column {col}: polynomial parse error at {err}")]
    Entry { field: &'static str, row: usize, col: usize, err: ParseError },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] crate::polycore::PolyError),
}

/// On-disk matrix description (TOML).
///
/// ```toml
/// variables = ["x", "y", "z", "w"]
/// entries = [["z", "w+x", "y^k"], ["w", "y", "x"]]
/// deformation = [["0", "0", "lambda"], ["0", "0", "0"]]
///
/// [params]
/// k = 2
/// lambda = 1
/// ```
///
/// Parameters may appear as exponents or constant factors in `entries`.
/// Parameters mentioned in `deformation` become deformation parameters and
/// are assigned their listed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub variables: Vec<String>,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
}

impl MatrixFile {
    pub fn from_toml(s: &str) -> Result<Self, MatrixFileError> {
        toml::from_str(s).map_err(|e| MatrixFileError::Syntax(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, MatrixFileError> {
        let s = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io { path: path.display().to_string(), source })?;
        MatrixFile::from_toml(&s)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("matrix file is always serializable")
    }

    pub fn ring(&self) -> Result<Ring, MatrixFileError> {
        Ok(Ring::new(&self.variables)?)
    }

    /// Builds a file from a concrete matrix.
    pub fn from_matrix(m: &PresentationMatrix) -> Self {
        MatrixFile {
            variables: m.ring().names().to_vec(),
            entries: m.matrix().to_strings(),
            deformation: None,
            params: BTreeMap::new(),
        }
    }

    /// The germ matrix with parameters substituted.
    pub fn presentation(&self) -> Result<PresentationMatrix, MatrixFileError> {
        let ring = self.ring()?;
        let grid = parse_grid("entries", &self.entries, &ring, &self.params)?;
        Ok(PresentationMatrix::new(Matrix::new(ring, grid)?)?)
    }

    /// The deformation template, when a `deformation` block is present.
    pub fn template(&self) -> Result<Option<DeformationTemplate>, MatrixFileError> {
        let Some(def) = &self.deformation else {
            return Ok(None);
        };
        let base = self.presentation()?;
        let names: Vec<String> = self
            .params
            .keys()
            .filter(|k| !self.variables.contains(k) && def.iter().flatten().any(|s| mentions(s, k)))
            .cloned()
            .collect();
        let ext = base.ring().extended(&names)?;
        let grid = parse_grid("deformation", def, &ext, &self.params)?;
        let perturbation = Matrix::new(ext, grid)?;
        let assignment = names.iter().map(|n| (n.clone(), rat(self.params[n]))).collect();
        Ok(Some(DeformationTemplate::new(base, names, perturbation, assignment)?))
    }
}

fn mentions(s: &str, name: &str) -> bool {
    s.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).any(|tok| tok == name)
}

fn parse_grid(field: &'static str, grid: &[Vec<String>], ring: &Ring, params: &BTreeMap<String, i64>) -> Result<Vec<Vec<Poly>>, MatrixFileError> {
    grid.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_poly_with_params(s, ring, params).map_err(|err| MatrixFileError::Entry { field, row: i + 1, col: j + 1, err }))
                .collect()
        })
        .collect()
}

impl DeformationTemplate {
    /// Template as a file block: perturbation strings plus parameter values
    /// (integral assignments only).
    pub fn to_file_block(&self) -> (Vec<Vec<String>>, BTreeMap<String, i64>) {
        let params = self
            .assignment()
            .iter()
            .filter(|(_, v)| v.is_integer())
            .map(|(k, v)| (k.clone(), v.to_integer().try_into().unwrap_or(0)))
            .collect();
        (self.perturbation().to_strings(), params)
    }
}
