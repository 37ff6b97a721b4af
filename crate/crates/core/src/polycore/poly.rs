use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::Ordering;
use super::{PolyError, Rational, Ring};

/// Sparse polynomial over ℚ.
///
/// Terms are kept sorted in decreasing degrevlex order with no zero
/// coefficients, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

fn canon_cmp(a: &Monomial, b: &Monomial) -> CmpOrdering {
    Ordering::DegRevLex.cmp(b, a)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<MonoKey, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "term lives in a different ring");
            *map.entry(MonoKey(m)).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.0, c)).collect();
        terms.sort_by(|a, b| canon_cmp(&a.0, &b.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: Ordering) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut mask = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for i in m.support() {
                mask[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| mask[i]).collect()
    }

    pub fn check_same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::RingMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(other)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => canon_cmp(&a.0, &b.0),
                (Some(_), None) => CmpOrdering::Less,
                (None, _) => CmpOrdering::Greater,
            };
            match ord {
                CmpOrdering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                CmpOrdering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                CmpOrdering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut map: std::collections::HashMap<Monomial, Rational> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canon_cmp(&a.0, &b.0));
        Poly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index out of range");
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(var) > 0).map(|(m, c)| {
            let e = m.exponent(var);
            let mut d = *m;
            d.set_exponent(var, e - 1);
            (d, c * Rational::from_integer(BigInt::from(e)))
        });
        Poly::from_terms(self.nvars, terms)
    }

    /// Gradient, one entry per variable.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.differentiate(i)).collect()
    }

    /// Composition: variable `i` is replaced by `images[i]` (all in one target ring).
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::RingMismatch { left: self.nvars, right: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(p) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::RingMismatch { left: target, right: p.nvars });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes the given variables, leaving the others fixed.
    pub fn substitute(&self, assignment: &[(usize, Poly)]) -> Result<Poly, PolyError> {
        let mut images: Vec<Poly> = (0..self.nvars).map(|i| Poly::var(self.nvars, i)).collect();
        for (v, p) in assignment {
            if *v >= self.nvars {
                return Err(PolyError::UnknownVariable(format!("x{v}")));
            }
            self.check_same_ring(p)?;
            images[*v] = p.clone();
        }
        self.compose(&images)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t *= num_traits::pow(point[i].clone(), m.exponent(i) as usize);
            }
            acc += t;
        }
        acc
    }

    /// Moves the polynomial into a ring of `nvars` variables, sending old
    /// variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.remap(nvars, map), c.clone())))
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: Ordering) -> Poly {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient (degrevlex). Used as a canonical representative for
    /// deduplication up to units.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let den_lcm = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
        let nums: Vec<BigInt> = self.terms.iter().map(|(_, c)| (c * Rational::from_integer(den_lcm.clone())).to_integer()).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| num_integer::Integer::gcd(&acc, n));
        if nums[0].is_negative() {
            g = -g;
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().zip(nums).map(|((m, _), n)| (*m, Rational::from_integer(n / &g))).collect(),
        }
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ring }
    }
}

#[derive(PartialEq, Eq)]
struct MonoKey(Monomial);

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        canon_cmp(&self.0, &other.0)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::default_names(self.nvars);
        write!(f, "{}", self.display(&ring))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    ring: &'a Ring,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for i in m.support() {
                let name = self.ring.name(i);
                match m.exponent(i) {
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
