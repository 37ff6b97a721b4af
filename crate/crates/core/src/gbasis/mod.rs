//! Gröbner bases for global orderings, Mora standard bases for the local
//! ordering, and the zero-dimensional toolkit built on them: quotient
//! dimensions, minimal polynomials of linear forms, elimination.

mod engine;
mod ipoly;
mod quotient;

use num_traits::One;
use serde::Serialize;

pub use engine::EngineStats;
pub use quotient::{local_length, minimal_polynomial, quotient_dimension, QuotientInfo};

use crate::polycore::{Monomial, Ordering, Poly, Rational};
use engine::{full_reduce, mora_reduce, Engine};
use ipoly::IPoly;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("operation requires a global ordering")]
    LocalOrdering,
    #[error("operation requires the local ordering")]
    GlobalOrdering,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("empty generator list")]
    NoGenerators,
}

/// Reduced Gröbner basis (global orderings) or minimal standard basis (local
/// ordering). Basis elements are monic and sorted by increasing leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ordering: Ordering,
    nvars: usize,
    basis: Vec<Poly>,
    leads: Vec<Monomial>,
    work: Vec<IPoly>,
    cutoff: Option<u32>,
    stats: EngineStats,
}

impl GroebnerBasis {
    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.len() == 1 && self.leads[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Weak normal form for local orderings, full normal form otherwise.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, self)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        normal_form(p, self).is_zero()
    }
}

/// Computes a Gröbner basis (global `ord`) or standard basis (local `ord`).
/// Zero generators are ignored; `1 ∈ I` yields the basis `{1}`.
pub fn buchberger(gens: &[Poly], ord: Ordering) -> Result<GroebnerBasis, GbError> {
    let nvars = gens.first().ok_or(GbError::NoGenerators)?.nvars();
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(GbError::RingMismatch);
    }
    let work_in: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| IPoly::from_poly(g, ord).0).collect();
    let (mut work, cutoff, stats) = Engine::new(ord).run(work_in);
    if ord.is_global() && !(work.len() == 1 && work[0].lm().is_one()) {
        // inter-reduce tails
        for k in 0..work.len() {
            let others: Vec<IPoly> = work.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
            let (mut r, _) = full_reduce(work[k].clone(), &others, ord, Rational::one(), true);
            r.make_primitive();
            work[k] = r;
        }
    }
    if work.len() == 1 && work[0].lm().is_one() {
        work = vec![IPoly { terms: vec![(Monomial::one(nvars), 1.into())] }];
    }
    work.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let basis = work.iter().map(|g| g.to_monic_poly(nvars)).collect();
    let leads = work.iter().map(|g| *g.lm()).collect();
    Ok(GroebnerBasis { ordering: ord, nvars, basis, leads, work, cutoff, stats })
}

/// Normal form of `p` with respect to `g`.
///
/// For global orderings no term of the result is divisible by a leading
/// monomial of the basis. For the local ordering this is Mora's weak normal
/// form: only the leading monomial is guaranteed irreducible, and the result
/// is determined up to a unit.
pub fn normal_form(p: &Poly, g: &GroebnerBasis) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let (ip, c) = IPoly::from_poly(p, g.ordering);
    if g.ordering.is_global() {
        let (r, scale) = full_reduce(ip, &g.work, g.ordering, c.recip(), false);
        r.to_poly_scaled(g.nvars, &scale)
    } else {
        let r = mora_reduce(ip, &g.work, g.ordering, g.cutoff);
        r.to_poly_scaled(g.nvars, &c.recip())
    }
}

/// Krull dimension from the leading-monomial ideal: the largest set of
/// variables containing the support of no leading monomial. The unit ideal
/// has dimension −1.
pub fn ideal_dimension(g: &GroebnerBasis) -> Result<i32, GbError> {
    if !g.ordering.is_global() {
        return Err(GbError::LocalOrdering);
    }
    Ok(leading_dimension(g))
}

/// Dimension of the localisation at the origin, read off a standard basis for
/// the local ordering; −1 when the origin is not on the variety.
pub fn dimension_at_origin(g: &GroebnerBasis) -> Result<i32, GbError> {
    if g.ordering.is_global() {
        return Err(GbError::GlobalOrdering);
    }
    Ok(leading_dimension(g))
}

fn leading_dimension(g: &GroebnerBasis) -> i32 {
    if g.is_unit_ideal() {
        return -1;
    }
    let n = g.nvars;
    let supports: Vec<u32> = g.leads.iter().map(|m| m.support().fold(0u32, |a, i| a | (1 << i))).collect();
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let size = s.count_ones();
        if size > best && supports.iter().all(|&sup| sup & !s != 0) {
            best = size;
        }
    }
    best as i32
}

/// Generators of `I ∩ ℚ[keep]`, computed with a block elimination ordering.
pub fn eliminate(gens: &[Poly], keep: &[usize]) -> Result<Vec<Poly>, GbError> {
    let nvars = gens.first().ok_or(GbError::NoGenerators)?.nvars();
    let elim: Vec<usize> = (0..nvars).filter(|v| !keep.contains(v)).collect();
    let g = buchberger(gens, Ordering::eliminating(&elim))?;
    Ok(g.basis.iter().filter(|p| p.used_vars().iter().all(|v| keep.contains(v))).cloned().collect())
}

/// Serializable view of a basis for diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct BasisDump {
    pub ordering: Ordering,
    pub basis: Vec<String>,
    pub unit_ideal: bool,
    pub dimension: Option<i32>,
    pub quotient_dimension: Option<usize>,
}
