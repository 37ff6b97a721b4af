use serde::Serialize;

use super::count::{global_level_count, random_form, SmoothingSummary};
use super::{
    check_input, count_critical_points, hyperplane_multiplicity, local_critical_count, make_smoothing, weighted_homogeneous_weights, CriticalCount,
    InvariantError, RunOptions, SeedStream, SmoothingFamily, Stage,
};
use crate::matgerm::{hyperplane_section, hyperplane_section_at, maximal_minors, nonzero_in_range, Perturbation, PresentationMatrix, ProjectionData};
use crate::polycore::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarietyKind {
    Curve,
    Surface,
    Threefold,
}

impl VarietyKind {
    pub fn dimension(self) -> usize {
        match self {
            VarietyKind::Curve => 1,
            VarietyKind::Surface => 2,
            VarietyKind::Threefold => 3,
        }
    }

    fn ambient(self) -> usize {
        self.dimension() + 2
    }
}

/// Global counts on the smoothing, compared with the local ones when the
/// germ is weighted-homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalCheck {
    pub weighted_homogeneous: bool,
    pub weights: Option<Vec<u32>>,
    /// Certified global count of critical points of the projection.
    pub critical_points: usize,
    /// μ recomputed from global counts only.
    pub mu: Option<i64>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub mu: i64,
    pub tau: i64,
    pub equal_to_tau_minus_1: bool,
}

/// `μ = τ − 1`.
pub fn conjecture_check(mu: i64, tau: i64) -> ConjectureVerdict {
    ConjectureVerdict { mu, tau, equal_to_tau_minus_1: mu == tau - 1 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub kind: VarietyKind,
    pub dimension: usize,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub projection: String,
    /// Critical points of the projection converging to the origin; equals
    /// the top polar multiplicity and the Poincaré–Hopf index.
    pub m_d: usize,
    pub ind_ph: usize,
    /// `None` for threefolds.
    pub mu: Option<i64>,
    pub mu_section: Option<i64>,
    pub m0: Option<usize>,
    pub m1: Option<usize>,
    pub multiplicity_form: Option<String>,
    /// `m₃ − μ(section)` for threefolds. The cell count identifies it with
    /// `μ − b₂`, so it may be negative.
    pub combined: Option<i64>,
    pub euler_characteristic: Option<i64>,
    /// Euler-characteristic identity of the cell count.
    pub consistency: bool,
    pub section: Option<Box<InvariantReport>>,
    pub smoothing: SmoothingSummary,
    pub critical: CriticalCount,
    pub global: GlobalCheck,
    /// Set when the germ is not weighted-homogeneous, so the global count
    /// cannot be used to double-check the local one.
    pub global_count_caveat: bool,
    pub seed: u64,
    pub attempts: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureVerdict>,
}

impl InvariantReport {
    pub fn with_conjecture(mut self, tau: i64) -> Self {
        if let Some(mu) = self.mu {
            self.conjecture = Some(conjecture_check(mu, tau));
        }
        self
    }
}

fn require(m: &PresentationMatrix, kind: VarietyKind) -> Result<(), InvariantError> {
    if m.nvars() != kind.ambient() {
        return Err(InvariantError::Input(format!(
            "a {kind:?} needs {} variables, the matrix has {}",
            kind.ambient(),
            m.nvars()
        )));
    }
    check_input(m)?.verdict()
}

/// Dispatches on the number of variables.
pub fn milnor(m: &PresentationMatrix, opts: &RunOptions) -> Result<InvariantReport, InvariantError> {
    match m.nvars() {
        3 => milnor_curve(m, opts),
        4 => milnor_surface(m, opts),
        5 => threefold_combined(m, opts),
        r => Err(InvariantError::Input(format!("expected 3, 4 or 5 variables, got {r}"))),
    }
}

/// Failures that fresh random choices can cure.
fn is_genericity_failure(e: &InvariantError) -> bool {
    matches!(
        e,
        InvariantError::CriticalNotFinite { .. }
            | InvariantError::Degenerate { .. }
            | InvariantError::SeparationFailed { .. }
            | InvariantError::LocalCount(_)
            | InvariantError::RetriesExhausted { .. }
    )
}

fn attempt_seeds(opts: &RunOptions, attempt: u32) -> SeedStream {
    let base = SeedStream::new(opts.seed);
    if attempt == 0 {
        base
    } else {
        base.child(Stage::Level, attempt)
    }
}

/// Nothing random is left to resample.
fn deterministic(opts: &RunOptions) -> bool {
    opts.projection.is_some() && matches!(opts.perturbation, Perturbation::Template(_))
}

struct Polar {
    family: SmoothingFamily,
    projection: ProjectionData,
    critical: CriticalCount,
    local: usize,
}

fn polar_count(m: &PresentationMatrix, opts: &RunOptions, seeds: SeedStream) -> Result<Polar, InvariantError> {
    let family = make_smoothing(m, &opts.perturbation, seeds, opts.retries)?;
    let projection = opts.projection.clone().unwrap_or_else(|| random_form(m.nvars(), seeds, Stage::Projection, 0));
    if projection.nvars() != m.nvars() {
        return Err(InvariantError::Input(format!("projection has {} coefficients for {} variables", projection.nvars(), m.nvars())));
    }
    let critical = count_critical_points(&family.deformed, &projection, seeds, opts.retries)?;
    let local = local_critical_count(&family, &projection)?;
    Ok(Polar { family, projection, critical, local })
}

/// Runs `body` with fresh seeds until it succeeds and passes the global
/// cross-check. A result that only fails the cross-check is kept as a
/// fallback.
fn with_retries(
    opts: &RunOptions,
    mut body: impl FnMut(SeedStream, u32) -> Result<InvariantReport, InvariantError>,
) -> Result<InvariantReport, InvariantError> {
    let mut fallback = None;
    let mut last = String::new();
    for attempt in 0..=opts.retries {
        match body(attempt_seeds(opts, attempt), attempt + 1) {
            Ok(r) if r.global.agrees == Some(false) => {
                last = format!("global count gives μ = {:?}, local count μ = {:?}", r.global.mu, r.mu);
                fallback.get_or_insert(r);
            }
            Ok(r) => return Ok(r),
            Err(e) if is_genericity_failure(&e) => last = e.to_string(),
            Err(e) => return Err(e),
        }
        if deterministic(opts) {
            break;
        }
    }
    fallback.ok_or(InvariantError::RetriesExhausted { attempts: opts.retries + 1, last })
}

fn variables(m: &PresentationMatrix) -> Vec<String> {
    m.ring().names().to_vec()
}

fn level(seeds: SeedStream) -> i64 {
    nonzero_in_range(&mut seeds.rng(Stage::Level, 0), 5)
}

/// μ(C) = m₁ − m₀ + 1 for a curve in ℂ³, with `m₀` the intersection
/// multiplicity of the curve with the kernel of the projection.
pub fn milnor_curve(m: &PresentationMatrix, opts: &RunOptions) -> Result<InvariantReport, InvariantError> {
    require(m, VarietyKind::Curve)?;
    let weights = weighted_homogeneous_weights(maximal_minors(m).gens());
    with_retries(opts, |seeds, attempt| {
        let polar = polar_count(m, opts, seeds)?;
        // Riemann–Hurwitz for p on X_t needs the degree of p on X, which is
        // the multiplicity only for generic p
        let Some(m0) = hyperplane_multiplicity(m, &polar.projection)? else {
            let msg = format!("{} vanishes on a branch of the curve", polar.projection.render(m.ring()));
            return Err(if opts.projection.is_some() { InvariantError::Input(msg) } else { InvariantError::LocalCount(msg) });
        };
        let l = &polar.projection;
        let m1 = polar.local;
        let mu = m1 as i64 - m0 as i64 + 1;
        if mu < 0 {
            return Err(InvariantError::LocalCount(format!("negative Milnor number {mu}")));
        }
        let global_mu = match &weights {
            Some(_) => global_level_count(&polar.family.deformed, &polar.projection, level(seeds))?
                .map(|m0g| polar.critical.count as i64 - m0g as i64 + 1),
            None => None,
        };
        Ok(InvariantReport {
            kind: VarietyKind::Curve,
            dimension: 1,
            variables: variables(m),
            matrix: m.matrix().to_strings(),
            projection: polar.projection.render(m.ring()),
            m_d: m1,
            ind_ph: m1,
            mu: Some(mu),
            mu_section: None,
            m0: Some(m0),
            m1: Some(m1),
            multiplicity_form: Some(l.render(m.ring())),
            combined: None,
            euler_characteristic: Some(1 - mu),
            consistency: 1 - mu == m0 as i64 - m1 as i64,
            section: None,
            smoothing: polar.family.summary(),
            global: GlobalCheck {
                weighted_homogeneous: weights.is_some(),
                weights: weights.clone(),
                critical_points: polar.critical.count,
                mu: global_mu,
                agrees: global_mu.map(|g| g == mu),
            },
            critical: polar.critical,
            global_count_caveat: weights.is_none(),
            seed: opts.seed,
            attempts: attempt,
            conjecture: None,
        })
    })
}

/// Options for a section: same seed family and budget, random projection,
/// automatic smoothing.
fn section_options(opts: &RunOptions, seeds: SeedStream) -> RunOptions {
    RunOptions { seed: seeds.derive(Stage::Section, 0), retries: opts.retries, projection: None, perturbation: Perturbation::Auto }
}

fn section_of(m: &PresentationMatrix, p: &ProjectionData, opts: &RunOptions) -> Result<PresentationMatrix, InvariantError> {
    let c = hyperplane_section(m, p)?;
    let report = check_input(&c)?;
    if !report.passed() {
        let msg = format!("section by {} is not an isolated determinantal germ", p.render(m.ring()));
        // a fixed projection will not get better on retry
        return Err(if opts.projection.is_some() { InvariantError::Input(msg) } else { InvariantError::LocalCount(msg) });
    }
    Ok(c)
}

/// μ(X) = m₂ − μ(C) for a surface in ℂ⁴, with `C` the section by the
/// projection's kernel.
pub fn milnor_surface(m: &PresentationMatrix, opts: &RunOptions) -> Result<InvariantReport, InvariantError> {
    require(m, VarietyKind::Surface)?;
    let weights = weighted_homogeneous_weights(maximal_minors(m).gens());
    with_retries(opts, |seeds, attempt| {
        let polar = polar_count(m, opts, seeds)?;
        let curve = milnor_curve(&section_of(m, &polar.projection, opts)?, &section_options(opts, seeds))?;
        let mu_c = curve.mu.expect("curves have μ");
        let m2 = polar.local;
        let mu = m2 as i64 - mu_c;
        if mu < 0 {
            return Err(InvariantError::LocalCount(format!("negative Milnor number {mu}")));
        }
        let global_mu = match &weights {
            Some(_) => global_surface_mu(&polar, seeds)?,
            None => None,
        };
        Ok(InvariantReport {
            kind: VarietyKind::Surface,
            dimension: 2,
            variables: variables(m),
            matrix: m.matrix().to_strings(),
            projection: polar.projection.render(m.ring()),
            m_d: m2,
            ind_ph: m2,
            mu: Some(mu),
            mu_section: Some(mu_c),
            m0: None,
            m1: None,
            multiplicity_form: None,
            combined: None,
            euler_characteristic: Some(1 + mu),
            consistency: 1 + mu == (1 - mu_c) + m2 as i64,
            section: Some(Box::new(curve)),
            smoothing: polar.family.summary(),
            global: GlobalCheck {
                weighted_homogeneous: weights.is_some(),
                weights: weights.clone(),
                critical_points: polar.critical.count,
                mu: global_mu,
                agrees: global_mu.map(|g| g == mu),
            },
            critical: polar.critical,
            global_count_caveat: weights.is_none(),
            seed: opts.seed,
            attempts: attempt,
            conjecture: None,
        })
    })
}

/// μ from global counts: critical points of `p` on `X_t`, minus μ of the
/// smooth affine curve `X_t ∩ {p = c}` computed the same way one level down.
fn global_surface_mu(polar: &Polar, seeds: SeedStream) -> Result<Option<i64>, InvariantError> {
    let y = hyperplane_section_at(&polar.family.deformed, &polar.projection, &rat(level(seeds)))?;
    let q = random_form(3, seeds, Stage::Section, 1);
    let m1 = match count_critical_points(&y, &q, seeds, 0) {
        Ok(c) => c.count,
        Err(_) => return Ok(None),
    };
    let Some(m0) = global_level_count(&y, &q, level(seeds.child(Stage::Level, 1)))? else {
        return Ok(None);
    };
    Ok(Some(polar.critical.count as i64 - (m1 as i64 - m0 as i64 + 1)))
}

/// `m₃ − μ(section)` for a threefold in ℂ⁵; `μ` and `b₂` are not separated.
pub fn threefold_combined(m: &PresentationMatrix, opts: &RunOptions) -> Result<InvariantReport, InvariantError> {
    require(m, VarietyKind::Threefold)?;
    let weights = weighted_homogeneous_weights(maximal_minors(m).gens());
    with_retries(opts, |seeds, attempt| {
        let polar = polar_count(m, opts, seeds)?;
        let surface = milnor_surface(&section_of(m, &polar.projection, opts)?, &section_options(opts, seeds))?;
        let mu_s = surface.mu.expect("surfaces have μ");
        let m3 = polar.local;
        let combined = m3 as i64 - mu_s;
        Ok(InvariantReport {
            kind: VarietyKind::Threefold,
            dimension: 3,
            variables: variables(m),
            matrix: m.matrix().to_strings(),
            projection: polar.projection.render(m.ring()),
            m_d: m3,
            ind_ph: m3,
            mu: None,
            mu_section: Some(mu_s),
            m0: None,
            m1: None,
            multiplicity_form: None,
            combined: Some(combined),
            euler_characteristic: None,
            consistency: combined + mu_s == m3 as i64,
            section: Some(Box::new(surface)),
            smoothing: polar.family.summary(),
            global: GlobalCheck {
                weighted_homogeneous: weights.is_some(),
                weights: weights.clone(),
                critical_points: polar.critical.count,
                mu: None,
                agrees: None,
            },
            critical: polar.critical,
            global_count_caveat: weights.is_none(),
            seed: opts.seed,
            attempts: attempt,
            conjecture: None,
        })
    })
}

/// Certified local Poincaré–Hopf index of a generic projection.
pub fn ph_index(m: &PresentationMatrix, opts: &RunOptions) -> Result<usize, InvariantError> {
    check_input(m)?.verdict()?;
    let mut last = String::new();
    for attempt in 0..=opts.retries {
        match polar_count(m, opts, attempt_seeds(opts, attempt)) {
            Ok(p) => return Ok(p.local),
            Err(e) if is_genericity_failure(&e) => last = e.to_string(),
            Err(e) => return Err(e),
        }
        if deterministic(opts) {
            break;
        }
    }
    Err(InvariantError::RetriesExhausted { attempts: opts.retries + 1, last })
}
