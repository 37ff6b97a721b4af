use std::cmp::Ordering as CmpOrdering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::PolyError;

/// Monomial orderings used by the kernel.
///
/// `Elimination` compares the total degree in the masked block first (degrevlex
/// on that block), then falls back to degrevlex on all variables. It is an
/// elimination ordering for the masked variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    DegRevLex,
    Lex,
    Elimination { mask: u32 },
    NegDegRevLex,
}

impl Ordering {
    pub fn eliminating(vars: &[usize]) -> Self {
        let mask = vars.iter().fold(0u32, |m, &v| m | (1 << v));
        Ordering::Elimination { mask }
    }

    pub fn is_global(&self) -> bool {
        !matches!(self, Ordering::NegDegRevLex)
    }

    pub fn is_local(&self) -> bool {
        !self.is_global()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> CmpOrdering {
        match self {
            Ordering::DegRevLex => degrevlex(a, b),
            Ordering::Lex => a.exponents().cmp(b.exponents()),
            Ordering::Elimination { mask } => {
                let block = |m: &Monomial| -> u32 {
                    m.support().filter(|i| mask & (1 << i) != 0).map(|i| m.exponent(i) as u32).sum()
                };
                block(a).cmp(&block(b)).then_with(|| {
                    // reverse-lex tie-break restricted to the block
                    for i in (0..a.nvars()).rev() {
                        if mask & (1 << i) != 0 && a.exponent(i) != b.exponent(i) {
                            return b.exponent(i).cmp(&a.exponent(i));
                        }
                    }
                    degrevlex(a, b)
                })
            }
            Ordering::NegDegRevLex => b.degree().cmp(&a.degree()).then_with(|| revlex_tie(a, b)),
        }
    }
}

#[inline]
fn revlex_tie(a: &Monomial, b: &Monomial) -> CmpOrdering {
    for i in (0..a.nvars()).rev() {
        let (x, y) = (a.exponent(i), b.exponent(i));
        if x != y {
            // smaller exponent in the last differing variable is bigger
            return y.cmp(&x);
        }
    }
    CmpOrdering::Equal
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial) -> CmpOrdering {
    a.degree().cmp(&b.degree()).then_with(|| revlex_tie(a, b))
}

/// Compares two monomials under `ord`, checking that they live in the same ring.
pub fn mono_compare(a: &Monomial, b: &Monomial, ord: Ordering) -> Result<CmpOrdering, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::RingMismatch { left: a.nvars(), right: b.nvars() });
    }
    Ok(ord.cmp(a, b))
}
