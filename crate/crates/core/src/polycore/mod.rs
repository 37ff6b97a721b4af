//! Exact multivariate polynomials over ℚ, monomial orderings and a few
//! univariate utilities.

mod monomial;
mod order;
mod parse;
mod poly;
mod univariate;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use monomial::{Monomial, MAX_VARS};
pub use order::{mono_compare, Ordering};
pub use parse::{parse_poly, parse_poly_with_params, ParseError};
pub use poly::{Poly, PolyDisplay};
pub use univariate::{squarefree, univariate_gcd, UniPoly};

/// Coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ring mismatch: {left} vs {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected a univariate polynomial, got one in variables {0:?}")]
    NotUnivariate(Vec<usize>),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

/// Variable names of a polynomial ring, in declaration order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ring { names })
    }

    pub(crate) fn default_names(n: usize) -> Self {
        let std = ["x", "y", "z", "w", "v", "u"];
        let names = (0..n).map(|i| if n <= std.len() { std[i].to_string() } else { format!("x{i}") }).collect();
        Ring { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Ring with variable `i` removed.
    pub fn without(&self, i: usize) -> Ring {
        let mut names = self.names.clone();
        names.remove(i);
        Ring { names }
    }

    /// Ring with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Ring, PolyError> {
        Ring::new(self.names.iter().map(|s| s.as_str().to_string()).chain(extra.into_iter().map(|s| s.as_ref().to_string())))
    }

    pub fn var(&self, name: &str) -> Result<Poly, PolyError> {
        let i = self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(self.len(), i))
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", self.names)
    }
}
