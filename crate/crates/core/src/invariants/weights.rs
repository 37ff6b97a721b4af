use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polycore::{Poly, Rational};

/// Positive integer weights making every generator weighted-homogeneous, or
/// `None`. Among the candidates found the one with the smallest weight sum
/// is returned, normalised to coprime entries.
pub fn weighted_homogeneous_weights(gens: &[Poly]) -> Option<Vec<u32>> {
    let n = gens.first()?.nvars();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        let Some((first, _)) = g.terms().first() else { continue };
        for (m, _) in &g.terms()[1..] {
            rows.push((0..n).map(|v| Rational::from_integer(BigInt::from(m.exponent(v) as i64 - first.exponent(v) as i64))).collect());
        }
    }
    let kernel = nullspace(rows, n);
    if kernel.is_empty() {
        return None;
    }
    let m = kernel.len();
    let range = 3i64;
    let mut best: Option<Vec<u32>> = None;
    let total = (2 * range + 1).pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let coeffs: Vec<i64> = (0..m)
            .map(|_| {
                let d = c % (2 * range + 1);
                c /= 2 * range + 1;
                d - range
            })
            .collect();
        let w: Vec<Rational> = (0..n)
            .map(|v| kernel.iter().zip(&coeffs).fold(Rational::zero(), |acc, (k, &a)| acc + &k[v] * Rational::from_integer(a.into())))
            .collect();
        if !w.iter().all(Signed::is_positive) {
            continue;
        }
        let cand = normalise(&w)?;
        if best.as_ref().map_or(true, |b| cand.iter().sum::<u32>() < b.iter().sum::<u32>()) {
            best = Some(cand);
        }
    }
    best
}

fn normalise(w: &[Rational]) -> Option<Vec<u32>> {
    let den = w.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = w.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_u32()).collect()
}

/// Basis of `{w : row·w = 0}`.
fn nullspace(rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let mut pivots: Vec<(usize, Vec<Rational>)> = Vec::new();
    for mut v in rows {
        for (p, r) in &pivots {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= &f * b;
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else { continue };
        let inv = v[p].recip();
        v.iter_mut().for_each(|a| *a *= &inv);
        for (_, r) in pivots.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (a, b) in r.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push((p, v));
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.iter().any(|(p, _)| p == c)).collect();
    free.iter()
        .map(|&f| {
            let mut k = vec![Rational::zero(); n];
            k[f] = Rational::one();
            for (p, r) in &pivots {
                k[*p] = -r[f].clone();
            }
            k
        })
        .collect()
}
