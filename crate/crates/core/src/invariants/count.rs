use serde::Serialize;

use super::{singular_locus_ideal, InvariantError, SeedStream, Stage};
use crate::gbasis::{buchberger, ideal_dimension, local_length, minimal_polynomial, quotient_dimension, GroebnerBasis};
use crate::matgerm::{
    bordered_matrix, jacobian, kxk_minors, maximal_minors, perturb, IdealGens, Matrix, Perturbation, PerturbationKind, PresentationMatrix,
    nonzero_in_range, ProjectionData, PERTURBATION_BOUND,
};
use crate::polycore::{Monomial, Ordering, Poly};

/// A germ together with one certified (or rejected) member of a deformation.
#[derive(Clone, Debug)]
pub struct SmoothingFamily {
    pub base: PresentationMatrix,
    pub deformed: PresentationMatrix,
    pub kind: PerturbationKind,
    /// Seed handed to the perturbation (auto mode only).
    pub seed: Option<u64>,
    pub certificate: bool,
    pub attempts: u32,
}

impl SmoothingFamily {
    pub fn summary(&self) -> SmoothingSummary {
        SmoothingSummary {
            kind: self.kind,
            seed: self.seed,
            certificate: self.certificate,
            attempts: self.attempts,
            matrix: self.deformed.matrix().to_strings(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothingSummary {
    pub kind: PerturbationKind,
    pub seed: Option<u64>,
    pub certificate: bool,
    pub attempts: u32,
    pub matrix: Vec<Vec<String>>,
}

/// True when `X_t` has the expected dimension and its singular-locus ideal is
/// the unit ideal.
pub fn certify_smoothing(deformed: &PresentationMatrix) -> Result<bool, InvariantError> {
    let f = maximal_minors(deformed);
    if f.is_empty() {
        return Ok(false);
    }
    let gf = buchberger(f.gens(), Ordering::DegRevLex)?;
    if ideal_dimension(&gf)? != deformed.nvars() as i32 - 2 {
        return Ok(false);
    }
    Ok(buchberger(singular_locus_ideal(deformed).gens(), Ordering::DegRevLex)?.is_unit_ideal())
}

/// Perturbs `m` until the smoothness certificate holds. Templates are
/// deterministic, so a failing template is not retried.
pub fn make_smoothing(m: &PresentationMatrix, mode: &Perturbation, seeds: SeedStream, retries: u32) -> Result<SmoothingFamily, InvariantError> {
    for attempt in 0..=retries {
        let seed = match mode {
            Perturbation::Auto => Some(seeds.derive(Stage::Smoothing, attempt)),
            Perturbation::Template(_) => None,
        };
        let deformed = perturb(m, mode, seed.unwrap_or(0))?;
        if certify_smoothing(&deformed)? {
            return Ok(SmoothingFamily { base: m.clone(), deformed, kind: mode.kind(), seed, certificate: true, attempts: attempt + 1 });
        }
        if seed.is_none() {
            return Err(InvariantError::SmoothingFailed { attempts: attempt + 1 });
        }
    }
    Err(InvariantError::SmoothingFailed { attempts: retries + 1 })
}

/// `I_t(M_t)` plus the `(c+1)×(c+1)` minors of `[Jf; ω]`.
pub fn critical_ideal(deformed: &PresentationMatrix, p: &ProjectionData) -> Result<IdealGens, InvariantError> {
    let f = maximal_minors(deformed);
    let b = bordered_matrix(&jacobian(&f), p)?;
    Ok(f.union(&kxk_minors(&b, 3)?))
}

/// Certified global count of the critical points of `p` on a smoothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalCount {
    pub count: usize,
    pub projection: String,
    /// Form whose minimal polynomial has degree `count` and is squarefree.
    pub separating_form: Option<String>,
    pub separation_attempts: u32,
    pub nondegenerate: bool,
}

/// Counts critical points of `p` on `X_t` and certifies they are simple: a
/// random linear form must have a squarefree minimal polynomial of degree
/// equal to the quotient dimension.
pub fn count_critical_points(deformed: &PresentationMatrix, p: &ProjectionData, seeds: SeedStream, retries: u32) -> Result<CriticalCount, InvariantError> {
    let ring = deformed.ring();
    let projection = p.render(ring);
    let ideal = critical_ideal(deformed, p)?;
    if ideal.is_empty() {
        return Err(InvariantError::CriticalNotFinite { projection });
    }
    let g = buchberger(ideal.gens(), Ordering::DegRevLex)?;
    let d = quotient_dimension(&g).dimension.ok_or_else(|| InvariantError::CriticalNotFinite { projection: projection.clone() })?;
    if d == 0 {
        return Ok(CriticalCount { count: 0, projection, separating_form: None, separation_attempts: 0, nondegenerate: true });
    }
    for attempt in 0..=retries {
        let l = random_form(deformed.nvars(), seeds, Stage::Separation, attempt);
        let mp = minimal_polynomial(&l.linear_form(), &g)?;
        if !mp.is_squarefree() {
            return Err(InvariantError::Degenerate { projection });
        }
        if mp.degree() == Some(d) {
            return Ok(CriticalCount {
                count: d,
                projection,
                separating_form: Some(l.render(ring)),
                separation_attempts: attempt + 1,
                nondegenerate: true,
            });
        }
    }
    Err(InvariantError::SeparationFailed { attempts: retries + 1 })
}

/// Number of critical points of `p` on `X_s` (the family `M + s(M_t − M)`)
/// that converge to the origin as `s → 0`.
///
/// Computed as the length at the origin of `(J : s^∞) + (s)`, where `J` is the
/// critical ideal of the family in `ℚ[x, s]`. The saturation comes from a
/// degrevlex basis of the homogenisation with `s` last.
pub fn local_critical_count(family: &SmoothingFamily, p: &ProjectionData) -> Result<usize, InvariantError> {
    let base = &family.base;
    let n = base.nvars();
    let ring = base.ring().extended(["s_"])?;
    let embed: Vec<usize> = (0..n).collect();
    let s = Poly::var(n + 1, n);
    let mut grid = Vec::with_capacity(base.rows());
    for i in 0..base.rows() {
        let row = (0..base.cols())
            .map(|j| {
                let b = base.entry(i, j);
                let delta = family.deformed.entry(i, j) - b;
                &b.remap(n + 1, &embed) + &(&s * &delta.remap(n + 1, &embed))
            })
            .collect();
        grid.push(row);
    }
    let f = IdealGens::new(ring.clone(), Matrix::new(ring.clone(), grid)?.all_minors(base.minor_size())?);
    let mut jac: Vec<Vec<Poly>> = f.gens().iter().map(|g| (0..n).map(|v| g.differentiate(v)).collect()).collect();
    jac.push(p.coefficients().iter().map(|c| Poly::constant(n + 1, c.clone())).collect());
    let crit = f.union(&kxk_minors(&Matrix::new(ring, jac)?, 3)?);
    let g = buchberger(crit.gens(), Ordering::DegRevLex)?;
    if g.is_unit_ideal() {
        return Ok(0);
    }
    let limit = flat_limit(&g, n);
    if limit.is_empty() {
        return Err(InvariantError::LocalCount("the special fibre of the critical family is everything".into()));
    }
    let lg = buchberger(&limit, Ordering::DegRevLex)?;
    local_length(&lg).map_err(|_| InvariantError::LocalCount(format!("critical points of {} accumulate along a curve", p.render(base.ring()))))
}

/// Generators of `(J : s^∞) + (s)` in `ℚ[x]`, from a basis of `J ⊂ ℚ[x, s]`
/// (`s` is variable `n`).
fn flat_limit(g: &GroebnerBasis, n: usize) -> Vec<Poly> {
    // ring (x, h, s)
    let hom: Vec<Poly> = g
        .basis()
        .iter()
        .map(|q| {
            let d = q.total_degree().unwrap_or(0);
            Poly::from_terms(
                n + 2,
                q.terms().iter().map(|(m, c)| {
                    let mut e = m.exponents()[..n].to_vec();
                    e.push((d - m.degree()) as u16);
                    e.push(m.exponent(n));
                    (Monomial::from_exponents(&e), c.clone())
                }),
            )
        })
        .collect();
    let gh = buchberger(&hom, Ordering::DegRevLex).expect("nonempty homogenised basis");
    gh.basis()
        .iter()
        .map(|q| {
            let k = q.terms().iter().map(|(m, _)| m.exponent(n + 1)).min().unwrap_or(0);
            Poly::from_terms(
                n,
                q.terms().iter().filter(|(m, _)| m.exponent(n + 1) == k).map(|(m, c)| (Monomial::from_exponents(&m.exponents()[..n]), c.clone())),
            )
        })
        .filter(|q| !q.is_zero())
        .collect()
}

/// Local intersection multiplicity of a curve germ with a generic hyperplane.
/// Two random forms are tried per attempt and the smaller (finite) value is
/// kept, since non-generic forms can only increase it.
pub fn multiplicity_m0(m: &PresentationMatrix, seeds: SeedStream, retries: u32) -> Result<(usize, ProjectionData), InvariantError> {
    let mut best: Option<(usize, ProjectionData)> = None;
    for attempt in 0..=retries {
        for l in [random_form(m.nvars(), seeds, Stage::Multiplicity, 2 * attempt), random_form(m.nvars(), seeds, Stage::Multiplicity, 2 * attempt + 1)] {
            if let Some(v) = hyperplane_multiplicity(m, &l)? {
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, l));
                }
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
    }
    Err(InvariantError::LocalCount(format!("no hyperplane met the curve in finitely many points after {} attempt(s)", retries + 1)))
}

/// Length of `O/(I_t(M) + ⟨ℓ⟩)` at the origin; `None` when infinite.
pub fn hyperplane_multiplicity(m: &PresentationMatrix, l: &ProjectionData) -> Result<Option<usize>, InvariantError> {
    let mut gens = maximal_minors(m).gens().to_vec();
    gens.push(l.linear_form());
    let g = buchberger(&gens, Ordering::NegDegRevLex)?;
    Ok(quotient_dimension(&g).dimension)
}

/// Global count of points of `X_t ∩ {ℓ = c}`; `None` when infinite.
pub(super) fn global_level_count(deformed: &PresentationMatrix, l: &ProjectionData, level: i64) -> Result<Option<usize>, InvariantError> {
    let n = deformed.nvars();
    let mut gens = maximal_minors(deformed).gens().to_vec();
    gens.push(&l.linear_form() - &Poly::from_int(n, level));
    let g = buchberger(&gens, Ordering::DegRevLex)?;
    Ok(quotient_dimension(&g).dimension)
}

/// Random form with coefficients in `[-B, B]`, all nonzero.
pub(super) fn random_form(nvars: usize, seeds: SeedStream, stage: Stage, attempt: u32) -> ProjectionData {
    let mut rng = seeds.rng(stage, attempt);
    let c: Vec<i64> = (0..nvars).map(|_| nonzero_in_range(&mut rng, PERTURBATION_BOUND)).collect();
    ProjectionData::from_ints(&c).expect("nonzero coefficients")
}
