//! Integer-coefficient working representation used inside the engines.

use std::cmp::Ordering as CmpOrdering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polycore::{Monomial, Ordering, Poly, Rational};

/// Primitive integer polynomial with terms sorted decreasingly under the
/// working ordering (leading term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

#[inline]
pub(crate) fn var_mask(m: &Monomial) -> u32 {
    m.support().fold(0u32, |acc, i| acc | (1 << i))
}

impl IPoly {
    /// Clears denominators and sorts under `ord`. Returns the polynomial and
    /// the factor `c` such that `self = c * p`.
    pub fn from_poly(p: &Poly, ord: Ordering) -> (IPoly, Rational) {
        let den = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> =
            p.terms().iter().map(|(m, c)| (*m, (c * Rational::from_integer(den.clone())).to_integer())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        let content = out.make_primitive();
        (out, Rational::new(den, content))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides by the content and makes the leading coefficient positive.
    /// Returns the divisor used (signed).
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        g
    }

    /// Total degree (maximum over terms).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `deg(f) - deg(LM(f))`.
    pub fn ecart(&self) -> u32 {
        self.degree() - self.lm().degree()
    }

    /// Monic rational polynomial with the same leading monomial.
    pub fn to_monic_poly(&self, nvars: usize) -> Poly {
        if self.terms.is_empty() {
            return Poly::zero(nvars);
        }
        let lc = self.lc().clone();
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (*m, Rational::new(c.clone(), lc.clone()))))
    }

    pub fn to_poly_scaled(&self, nvars: usize, scale: &Rational) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (*m, Rational::from_integer(c.clone()) * scale)))
    }
}

/// `a*f - b*q*g`, merging two sorted term lists.
pub(crate) fn lin_comb(f: &IPoly, a: &BigInt, g: &IPoly, q: &Monomial, b: &BigInt, ord: Ordering) -> IPoly {
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    while i < f.terms.len() && j < g.terms.len() {
        let gm = g.terms[j].0.mul(q);
        match ord.cmp(&f.terms[i].0, &gm) {
            CmpOrdering::Greater => {
                let c = if a_one { f.terms[i].1.clone() } else { &f.terms[i].1 * a };
                out.push((f.terms[i].0, c));
                i += 1;
            }
            CmpOrdering::Less => {
                out.push((gm, -(&g.terms[j].1 * b)));
                j += 1;
            }
            CmpOrdering::Equal => {
                let c = if a_one { f.terms[i].1.clone() } else { &f.terms[i].1 * a } - &g.terms[j].1 * b;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for (m, c) in &f.terms[i..] {
        out.push((*m, if a_one { c.clone() } else { c * a }));
    }
    for (m, c) in &g.terms[j..] {
        out.push((m.mul(q), -(c * b)));
    }
    IPoly { terms: out }
}

/// Cancels the term of `f` at monomial `m` (coefficient `cf`) using `g`.
/// Returns the new polynomial and the factor `f` was multiplied by.
pub(crate) fn reduce_term(f: &IPoly, cf: &BigInt, m: &Monomial, g: &IPoly, ord: Ordering) -> (IPoly, BigInt) {
    let q = g.lm().quotient_of(m);
    let d = cf.gcd(g.lc());
    let mut a = g.lc() / &d;
    let mut b = cf / &d;
    if a.is_negative() {
        a = -a;
        b = -b;
    }
    (lin_comb(f, &a, g, &q, &b, ord), a)
}

/// S-polynomial of two primitive polynomials.
pub(crate) fn spoly(f: &IPoly, g: &IPoly, ord: Ordering) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let qf = f.lm().quotient_of(&l);
    let qg = g.lm().quotient_of(&l);
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let fq = IPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect() };
    let mut s = lin_comb(&fq, &a, g, &qg, &b, ord);
    s.make_primitive();
    s
}
