//! Topological invariants of isolated codimension-two determinantal
//! singularities: smoothings, critical-point counts, Milnor numbers of
//! curves and surfaces, and the combined count for threefolds.

mod count;
mod pipeline;
mod weights;

use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use count::{
    certify_smoothing, count_critical_points, critical_ideal, hyperplane_multiplicity, local_critical_count, make_smoothing, multiplicity_m0,
    CriticalCount, SmoothingFamily, SmoothingSummary,
};
pub use pipeline::{
    conjecture_check, milnor, milnor_curve, milnor_surface, ph_index, threefold_combined, ConjectureVerdict, GlobalCheck, InvariantReport,
    VarietyKind,
};
pub use weights::weighted_homogeneous_weights;

use crate::gbasis::{buchberger, dimension_at_origin, ideal_dimension, GbError};
use crate::matgerm::{jacobian, kxk_minors, maximal_minors, IdealGens, MatrixError, Perturbation, PresentationMatrix, ProjectionData};
use crate::polycore::{Ordering, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("singular locus is not isolated at the origin (local dimension {0})")]
    NonIsolated(i32),
    #[error("no certified smoothing after {attempts} attempt(s)")]
    SmoothingFailed { attempts: u32 },
    #[error("critical locus of {projection} on the smoothing is not finite")]
    CriticalNotFinite { projection: String },
    #[error("critical points of {projection} are degenerate (minimal polynomial not squarefree)")]
    Degenerate { projection: String },
    #[error("no separating linear form after {attempts} attempt(s)")]
    SeparationFailed { attempts: u32 },
    #[error("local count failed: {0}")]
    LocalCount(String),
    #[error("genericity checks still failing after {attempts} attempt(s): {last}")]
    RetriesExhausted { attempts: u32, last: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl InvariantError {
    /// Errors caused by the input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, InvariantError::Input(_) | InvariantError::Matrix(_))
    }
}

/// Pipeline stages, each with its own random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Smoothing = 1,
    Projection = 2,
    Separation = 3,
    Section = 4,
    Multiplicity = 5,
    Level = 6,
}

/// Derives independent ChaCha8 streams from one user seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&self, stage: Stage, attempt: u32) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(((stage as u64) << 32) | attempt as u64);
        r
    }

    pub fn derive(&self, stage: Stage, attempt: u32) -> u64 {
        self.rng(stage, attempt).next_u64()
    }

    pub fn child(&self, stage: Stage, attempt: u32) -> SeedStream {
        SeedStream::new(self.derive(stage, attempt))
    }
}

/// Knobs shared by every pipeline entry point.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub retries: u32,
    /// Fixed projection; random when absent.
    pub projection: Option<ProjectionData>,
    pub perturbation: Perturbation,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, retries: 8, projection: None, perturbation: Perturbation::Auto }
    }
}

impl RunOptions {
    pub fn with_seed(seed: u64) -> Self {
        RunOptions { seed, ..RunOptions::default() }
    }

    pub fn projection(mut self, p: ProjectionData) -> Self {
        self.projection = Some(p);
        self
    }
}

/// Outcome of the input checks.
#[derive(Clone, Debug, Serialize)]
pub struct InputReport {
    pub rows: usize,
    pub cols: usize,
    pub ambient_dimension: usize,
    pub shape_ok: bool,
    /// Dimension at the origin of `V(I_t(M))`.
    pub dimension: i32,
    pub codimension_two: bool,
    pub singular_locus_dimension: i32,
    pub isolated: bool,
    /// `(n − t + 2)(p − t + 2)`.
    pub ambient_bound: usize,
    pub bound_ok: bool,
}

impl InputReport {
    pub fn passed(&self) -> bool {
        self.shape_ok && self.codimension_two && self.isolated && self.bound_ok
    }

    pub fn verdict(&self) -> Result<(), InvariantError> {
        if !self.shape_ok {
            return Err(InvariantError::Input(format!("{}x{} is not an (n+1)xn or nx(n+1) matrix with maximal minors", self.rows, self.cols)));
        }
        if !self.bound_ok {
            return Err(InvariantError::Input(format!("ambient dimension {} exceeds the bound {}", self.ambient_dimension, self.ambient_bound)));
        }
        if !self.codimension_two {
            return Err(InvariantError::Input(format!(
                "minors cut out a germ of dimension {} in {} variables, expected codimension 2",
                self.dimension, self.ambient_dimension
            )));
        }
        if !self.isolated {
            return Err(InvariantError::NonIsolated(self.singular_locus_dimension));
        }
        Ok(())
    }
}

/// Dimension at the origin: the global dimension when the global zero set is
/// no bigger than expected, a local standard basis otherwise.
fn dimension_near_origin(gens: &IdealGens, expected_at_most: i32) -> Result<i32, InvariantError> {
    if gens.is_empty() {
        return Ok(gens.ring().len() as i32);
    }
    let global = ideal_dimension(&buchberger(gens.gens(), Ordering::DegRevLex)?)?;
    if global <= expected_at_most {
        return Ok(global);
    }
    Ok(dimension_at_origin(&buchberger(gens.gens(), Ordering::NegDegRevLex)?)?)
}

/// `I_t(M)` together with the `c×c` minors of its Jacobian, `c` the codimension.
pub fn singular_locus_ideal(m: &PresentationMatrix) -> IdealGens {
    let f = maximal_minors(m);
    let j = jacobian(&f);
    match kxk_minors(&j, 2) {
        Ok(minors) => f.union(&minors),
        Err(_) => f,
    }
}

/// Shape, codimension, isolatedness and the ambient-dimension bound.
pub fn check_input(m: &PresentationMatrix) -> Result<InputReport, InvariantError> {
    let (rows, cols, r) = (m.rows(), m.cols(), m.nvars());
    let t = m.minor_size();
    let shape_ok = m.is_codim2_shape();
    let ambient_bound = (rows.max(cols) + 2).saturating_sub(t) * (rows.min(cols) + 2).saturating_sub(t);
    let expected = r as i32 - 2;
    let dimension = dimension_near_origin(&maximal_minors(m), expected)?;
    let singular_locus_dimension = if shape_ok { dimension_near_origin(&singular_locus_ideal(m), 0)? } else { -1 };
    Ok(InputReport {
        rows,
        cols,
        ambient_dimension: r,
        shape_ok,
        dimension,
        codimension_two: dimension == expected,
        singular_locus_dimension,
        isolated: shape_ok && singular_locus_dimension <= 0,
        ambient_bound,
        bound_ok: r <= ambient_bound,
    })
}

/// The singular locus of a (deformed) matrix as a global ideal.
#[derive(Clone, Debug, Serialize)]
pub struct SingularLocusReport {
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    /// −1 for the empty set.
    pub dimension: i32,
    /// Number of points with multiplicity when finite.
    pub degree: Option<usize>,
}

pub fn singular_locus_report(m: &PresentationMatrix) -> Result<SingularLocusReport, InvariantError> {
    let ideal = singular_locus_ideal(m);
    let ring = m.ring();
    if ideal.is_empty() {
        return Ok(SingularLocusReport { generators: Vec::new(), basis: Vec::new(), dimension: ring.len() as i32, degree: None });
    }
    let g = buchberger(ideal.gens(), Ordering::DegRevLex)?;
    let info = crate::gbasis::quotient_dimension(&g);
    Ok(SingularLocusReport {
        generators: ideal.to_strings(),
        basis: g.basis().iter().map(|p| p.display(ring).to_string()).collect(),
        dimension: ideal_dimension(&g)?,
        degree: info.dimension.filter(|d| !d.is_zero()),
    })
}

#[cfg(test)]
mod tests;
