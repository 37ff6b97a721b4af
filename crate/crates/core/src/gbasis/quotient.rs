use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{normal_form, GbError, GroebnerBasis};
use crate::polycore::{Monomial, Poly, Rational, UniPoly};

/// Vector-space dimension of `k[x]/I` (or of the localisation at the
/// origin, for the local ordering) together with the standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInfo {
    pub zero_dimensional: bool,
    /// `None` when the quotient is infinite-dimensional.
    pub dimension: Option<usize>,
    pub standard_monomials: Vec<Monomial>,
}

impl Serialize for QuotientInfo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.dimension {
            Some(d) => s.serialize_u64(d as u64),
            None => s.serialize_str("infinite"),
        }
    }
}

/// Counts monomials outside the leading-monomial ideal.
pub fn quotient_dimension(g: &GroebnerBasis) -> QuotientInfo {
    let n = g.nvars();
    let leads = g.leading_monomials();
    if g.is_unit_ideal() {
        return QuotientInfo { zero_dimensional: true, dimension: Some(0), standard_monomials: Vec::new() };
    }
    let zero_dim = (0..n).all(|v| leads.iter().any(|m| m.pure_power_var() == Some(v)));
    if !zero_dim {
        return QuotientInfo { zero_dimensional: false, dimension: None, standard_monomials: Vec::new() };
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    let one = Monomial::one(n);
    seen.insert(one);
    queue.push_back(one);
    while let Some(m) = queue.pop_front() {
        out.push(m);
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v, 1));
            if !seen.contains(&next) && !leads.iter().any(|l| l.divides(&next)) {
                seen.insert(next);
                queue.push_back(next);
            }
        }
    }
    out.sort_by(|a, b| g.ordering().cmp(a, b));
    QuotientInfo { zero_dimensional: true, dimension: Some(out.len()), standard_monomials: out }
}

/// Least-degree monic `m` with `m(ℓ) ∈ I`, found from the first linear
/// dependence among the normal forms of `1, ℓ, ℓ², …`.
pub fn minimal_polynomial(l: &Poly, g: &GroebnerBasis) -> Result<UniPoly, GbError> {
    if !g.ordering().is_global() {
        return Err(GbError::LocalOrdering);
    }
    let info = quotient_dimension(g);
    let d = info.dimension.ok_or(GbError::NotZeroDimensional)?;
    if d == 0 {
        return Ok(UniPoly::new(vec![Rational::one()]));
    }
    let index: HashMap<Monomial, usize> = info.standard_monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let to_vec = |p: &Poly| {
        let mut v = vec![Rational::zero(); d];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };

    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut cur = normal_form(&Poly::one(g.nvars()), g);
    for i in 0..=d {
        let mut v = to_vec(&cur);
        let mut combo = vec![Rational::zero(); d + 1];
        combo[i] = Rational::one();
        for (p, row, rc) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = &v[*p] / &row[*p];
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => {
                combo.truncate(i + 1);
                return Ok(UniPoly::new(combo).monic());
            }
            Some(p) => rows.push((p, v, combo)),
        }
        cur = normal_form(&(l * &cur), g);
    }
    unreachable!("more than dim(quotient) independent powers")
}

/// Length of the local ring at the origin of a zero-dimensional ideal,
/// computed from a global basis: the part of `k[x]/I` annihilated by a
/// power of the maximal ideal. Equals the local quotient dimension but avoids
/// a standard-basis computation.
pub fn local_length(g: &GroebnerBasis) -> Result<usize, GbError> {
    if !g.ordering().is_global() {
        return Err(GbError::LocalOrdering);
    }
    let info = quotient_dimension(g);
    let d = info.dimension.ok_or(GbError::NotZeroDimensional)?;
    if d == 0 {
        return Ok(0);
    }
    let n = g.nvars();
    let index: HashMap<Monomial, usize> = info.standard_monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // mult[v][k][j]: coefficient of basis element k in x_v * b_j
    let mult: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|v| {
            let mut m = vec![vec![Rational::zero(); d]; d];
            for (j, b) in info.standard_monomials.iter().enumerate() {
                let nf = normal_form(&Poly::monomial(b.mul(&Monomial::var(n, v, 1)), Rational::one()), g);
                for (mono, c) in nf.terms() {
                    m[index[mono]][j] = c.clone();
                }
            }
            m
        })
        .collect();
    // Rows of `q` cut out S_j; S_{j+1} = { a : x_v a ∈ S_j for all v }.
    let mut q: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    loop {
        let mut rows = Vec::with_capacity(q.len() * n);
        for row in &q {
            for m in &mult {
                rows.push((0..d).map(|j| row.iter().zip(m).filter(|(a, _)| !a.is_zero()).map(|(a, mk)| a * &mk[j]).sum()).collect());
            }
        }
        let next = echelon(rows);
        if next.len() == q.len() {
            return Ok(d - q.len());
        }
        q = next;
    }
}

/// Row echelon basis of the span of `rows`.
fn echelon(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    for mut v in rows {
        for (p, r) in &out {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(r) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        if let Some(p) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[p].recip();
            for a in v.iter_mut() {
                *a *= &inv;
            }
            for (_, r) in out.iter_mut() {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    for (a, b) in r.iter_mut().zip(&v) {
                        if !b.is_zero() {
                            *a -= &f * b;
                        }
                    }
                }
            }
            out.push((p, v));
        }
    }
    out.into_iter().map(|(_, r)| r).collect()
}
