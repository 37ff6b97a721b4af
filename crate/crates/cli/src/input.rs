use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use detsing::catalog::{self, CatalogEntry, Expected};
use detsing::matgerm::{MatrixFile, Perturbation, PresentationMatrix, ProjectionData};

/// Where the matrix came from.
pub struct Resolved {
    pub label: String,
    pub file: MatrixFile,
    pub matrix: PresentationMatrix,
    pub entry: Option<(&'static CatalogEntry, Option<i64>)>,
}

impl Resolved {
    pub fn expected(&self) -> Option<Expected> {
        self.entry.and_then(|(e, k)| e.expected(k).ok())
    }
}

/// `name=N` pairs from repeated `--param` flags.
pub fn parse_params(raw: &[String]) -> Result<BTreeMap<String, i64>> {
    raw.iter()
        .map(|s| {
            let (k, v) = s.split_once('=').ok_or_else(|| anyhow!("--param expects name=N, got `{s}`"))?;
            let v: i64 = v.trim().parse().with_context(|| format!("--param {k}: `{v}` is not an integer"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

pub fn resolve(catalog_id: Option<&str>, input: Option<&Path>, params: &[String]) -> Result<Resolved> {
    let params = parse_params(params)?;
    match (catalog_id, input) {
        (Some(id), None) => {
            let e = catalog::entry(id)?;
            let k = params.get("k").copied();
            if let Some(extra) = params.keys().find(|p| *p != "k") {
                bail!("catalog entries take only the parameter k, got `{extra}`");
            }
            let file = e.file(k)?;
            let matrix = e.instantiate(k)?;
            let label = match k {
                Some(k) => format!("{id} (k={k})"),
                None => id.to_string(),
            };
            Ok(Resolved { label, file, matrix, entry: Some((e, k)) })
        }
        (None, Some(path)) => {
            let mut file = MatrixFile::read(path)?;
            file.params.extend(params);
            let matrix = file.presentation()?;
            Ok(Resolved { label: path.display().to_string(), file, matrix, entry: None })
        }
        (Some(_), Some(_)) => bail!("use either --catalog or --input, not both"),
        (None, None) => bail!("an input is required: --catalog ID or --input PATH"),
    }
}

pub fn projection(spec: &str, matrix: &PresentationMatrix) -> Result<Option<ProjectionData>> {
    if spec == "auto" {
        return Ok(None);
    }
    let p = ProjectionData::parse(spec, matrix.ring()).with_context(|| format!("--projection `{spec}`"))?;
    Ok(Some(p))
}

/// `auto`, `template` (the deformation block of the input) or a matrix file
/// with a deformation block whose base is the input matrix.
pub fn perturbation(spec: &str, resolved: &Resolved) -> Result<Perturbation> {
    let template = match spec {
        "auto" => return Ok(Perturbation::Auto),
        "template" => resolved.file.template()?.ok_or_else(|| anyhow!("{} has no deformation block", resolved.label))?,
        path => {
            let path = PathBuf::from(path);
            let mut file = MatrixFile::read(&path)?;
            for (k, v) in &resolved.file.params {
                file.params.entry(k.clone()).or_insert(*v);
            }
            file.template()?.ok_or_else(|| anyhow!("{} has no deformation block", path.display()))?
        }
    };
    if template.base() != &resolved.matrix {
        bail!("the perturbation's base matrix {} differs from the input {}", template.base(), resolved.matrix);
    }
    Ok(Perturbation::Template(template))
}
