use num_traits::{One, Zero};

use super::{Monomial, Poly, PolyError, Rational};

/// Dense univariate polynomial, coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer((i as i64).into())).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            Some(lc) => UniPoly::new(self.coeffs.iter().map(|c| c / lc).collect()),
            None => self.clone(),
        }
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lc = d.coeffs.last().unwrap();
        while r.len() > dd {
            let top = r.pop().unwrap() / lc;
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dd;
            for (i, c) in d.coeffs[..dd].iter().enumerate() {
                r[shift + i] -= &top * c;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Reads `p` as a polynomial in variable `var` of its ring.
    pub fn from_poly(p: &Poly, var: usize) -> Result<UniPoly, PolyError> {
        let other: Vec<usize> = p.used_vars().into_iter().filter(|&v| v != var).collect();
        if !other.is_empty() {
            return Err(PolyError::NotUnivariate(p.used_vars()));
        }
        let deg = p.terms().iter().map(|(m, _)| m.exponent(var) as usize).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exponent(var) as usize] += c;
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(nvars, var, i as u16), c.clone())),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn leading_is_one(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }
}

fn common_var(a: &Poly, b: &Poly) -> Result<usize, PolyError> {
    a.check_same_ring(b)?;
    let mut vars = a.used_vars();
    vars.extend(b.used_vars());
    vars.sort_unstable();
    vars.dedup();
    match vars.len() {
        0 => Ok(0),
        1 => Ok(vars[0]),
        _ => Err(PolyError::NotUnivariate(vars)),
    }
}

/// Monic gcd of two univariate polynomials in the same variable.
pub fn univariate_gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    let v = if a.nvars() == 0 { return Ok(Poly::one(0)) } else { common_var(a, b)? };
    let g = UniPoly::from_poly(a, v)?.gcd(&UniPoly::from_poly(b, v)?);
    Ok(g.to_poly(a.nvars(), v))
}

/// `true` iff `gcd(m, m')` is constant.
pub fn squarefree(m: &Poly) -> Result<bool, PolyError> {
    let v = common_var(m, m)?;
    Ok(UniPoly::from_poly(m, v)?.is_squarefree())
}
