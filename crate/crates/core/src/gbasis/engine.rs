//! Buchberger's algorithm (global orderings) and Mora's tangent-cone
//! algorithm (local orderings) over a shared pair queue.

use num_bigint::BigInt;
use num_traits::One;

use super::ipoly::{reduce_term, spoly, var_mask, IPoly};
use crate::polycore::{Monomial, Ordering, Rational};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Counters reported by a basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pairs_considered: usize,
    pub zero_reductions: usize,
    pub basis_insertions: usize,
}

pub(crate) struct Engine {
    ord: Ordering,
    polys: Vec<IPoly>,
    masks: Vec<u32>,
    ecarts: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    /// Local ordering only: once the leading monomials contain every
    /// monomial of this degree, `m^cutoff` lies in the ideal and terms of
    /// higher degree can be dropped.
    cutoff: Option<u32>,
    pub stats: EngineStats,
}

impl Engine {
    pub fn new(ord: Ordering) -> Self {
        Engine {
            ord,
            polys: Vec::new(),
            masks: Vec::new(),
            ecarts: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            cutoff: None,
            stats: EngineStats::default(),
        }
    }

    /// Runs the completion on the given (primitive) generators and returns
    /// the minimal set of active elements, ordered by insertion.
    ///
    /// Generators are reduced and inserted first, lowest degree first; pairs
    /// then follow the normal selection strategy (smallest lcm, by degree
    /// first for the local ordering).
    pub fn run(mut self, mut gens: Vec<IPoly>) -> (Vec<IPoly>, Option<u32>, EngineStats) {
        gens.retain(|g| !g.is_zero());
        let ord = self.ord;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ord.cmp(a.lm(), b.lm())));
        for g in gens {
            let h = self.reduce(g);
            if self.accept(h) {
                return (vec![self.polys.pop().expect("unit element")], None, self.stats);
            }
        }
        while let Some(k) = self.best_pair() {
            let pair = self.pairs.swap_remove(k);
            self.stats.pairs_considered += 1;
            let s = spoly(&self.polys[pair.i], &self.polys[pair.j], self.ord);
            let h = self.reduce(s);
            if self.accept(h) {
                return (vec![self.polys.pop().expect("unit element")], None, self.stats);
            }
        }
        let out = (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.polys[i].clone()).collect();
        (out, self.cutoff, self.stats)
    }

    /// Inserts a nonzero remainder; returns true when it is a unit.
    fn accept(&mut self, h: IPoly) -> bool {
        if h.is_zero() {
            self.stats.zero_reductions += 1;
            return false;
        }
        let unit = h.lm().is_one();
        if unit {
            self.polys.push(h);
        } else {
            self.insert(h);
        }
        unit
    }

    fn best_pair(&self) -> Option<usize> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = if ord.is_global() {
                ord.cmp(&a.lcm, &b.lcm)
            } else {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| Ordering::DegRevLex.cmp(&a.lcm, &b.lcm))
            };
            if c.then_with(|| (a.i, a.j).cmp(&(b.i, b.j))) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        Some(best)
    }

    fn reduce(&self, h: IPoly) -> IPoly {
        if self.ord.is_global() {
            self.global_reduce(h)
        } else {
            self.mora_nf(h)
        }
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = var_mask(m);
        let mut best: Option<usize> = None;
        for (k, g) in self.polys.iter().enumerate() {
            if !self.active[k] || self.masks[k] & !mask != 0 || !g.lm().divides(m) {
                continue;
            }
            if best.is_none_or(|b| g.terms.len() < self.polys[b].terms.len()) {
                best = Some(k);
            }
        }
        best
    }

    /// Reduces every term against the active elements. The content is
    /// removed once at the end: per-step gcds cost more than the growth
    /// they prevent.
    fn global_reduce(&self, mut h: IPoly) -> IPoly {
        let mut pos = 0;
        while pos < h.terms.len() {
            let m = h.terms[pos].0;
            let Some(k) = self.find_reducer(&m) else {
                pos += 1;
                continue;
            };
            let c = h.terms[pos].1.clone();
            h = reduce_term(&h, &c, &m, &self.polys[k], self.ord).0;
        }
        h.make_primitive();
        h
    }

    /// Mora's weak normal form: among admissible reducers pick the one of
    /// minimal écart; when that écart exceeds the current one, the current
    /// polynomial joins the reducer set.
    fn mora_nf(&self, mut h: IPoly) -> IPoly {
        self.truncate(&mut h);
        let mut extra: Vec<(IPoly, u32, u32)> = Vec::new();
        while !h.is_zero() {
            let m = *h.lm();
            let mask = var_mask(&m);
            // (ecart, is_extra, index)
            let mut best: Option<(u32, bool, usize)> = None;
            for (k, g) in self.polys.iter().enumerate() {
                if self.active[k] && self.masks[k] & !mask == 0 && g.lm().divides(&m) {
                    let cand = (self.ecarts[k], false, k);
                    if best.is_none_or(|b| cand.0 < b.0) {
                        best = Some(cand);
                    }
                }
            }
            for (k, (g, e, gm)) in extra.iter().enumerate() {
                if gm & !mask == 0 && g.lm().divides(&m) && best.is_none_or(|b| *e < b.0) {
                    best = Some((*e, true, k));
                }
            }
            let Some((e, is_extra, k)) = best else { break };
            let he = h.ecart();
            let g = if is_extra { extra[k].0.clone() } else { self.polys[k].clone() };
            if e > he {
                h.make_primitive();
                extra.push((h.clone(), he, mask));
            }
            let lc = h.lc().clone();
            h = reduce_term(&h, &lc, &m, &g, self.ord).0;
            self.truncate(&mut h);
        }
        h.make_primitive();
        h
    }

    fn truncate(&self, h: &mut IPoly) {
        if let Some(c) = self.cutoff {
            h.terms.retain(|(m, _)| m.degree() <= c);
        }
    }

    /// Smallest `N` such that every monomial of degree `N` is divisible by
    /// an active leading monomial, if the staircase is finite.
    fn update_cutoff(&mut self) {
        let leads: Vec<Monomial> = (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| *self.polys[i].lm()).collect();
        let Some(n) = leads.first().map(|m| m.nvars()) else { return };
        if !(0..n).all(|v| leads.iter().any(|m| m.pure_power_var() == Some(v))) {
            return;
        }
        let mut frontier = vec![Monomial::one(n)];
        let mut seen = std::collections::HashSet::new();
        let mut top = 0;
        while let Some(m) = frontier.pop() {
            top = top.max(m.degree());
            for v in 0..n {
                let next = m.mul(&Monomial::var(n, v, 1));
                if !leads.iter().any(|l| l.divides(&next)) && seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let c = top + 1;
        if self.cutoff.is_none_or(|old| c < old) {
            self.cutoff = Some(c);
        }
    }

    /// Inserts `h` and updates the pair set with the Gebauer–Möller criteria.
    fn insert(&mut self, h: IPoly) {
        self.stats.basis_insertions += 1;
        let hi = self.polys.len();
        let hm = *h.lm();
        self.masks.push(var_mask(&hm));
        self.ecarts.push(h.ecart());
        self.polys.push(h);
        self.active.push(true);

        let cands: Vec<(usize, Monomial)> =
            (0..hi).filter(|&g| self.active[g]).map(|g| (g, hm.lcm(self.polys[g].lm()))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = hm.is_coprime(self.polys[*g].lm());
            let dominated = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l)) || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, *l));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(self.polys[*g].lm()))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !hm.divides(&p.lcm)
                || hm.lcm(polys[p.i].lm()) == p.lcm
                || hm.lcm(polys[p.j].lm()) == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        if self.ord.is_local() {
            self.update_cutoff();
            if let Some(c) = self.cutoff {
                for g in (0..self.polys.len()).filter(|&g| self.active[g]) {
                    self.polys[g].terms.retain(|(m, _)| m.degree() <= c);
                }
            }
        }
    }
}

/// Reduces every term of `f` by `reducers` (global orderings only).
/// Returns the result and the rational factor `s` with `NF = result * s`
/// relative to the input scaled by `scale`.
pub(crate) fn full_reduce(mut f: IPoly, reducers: &[IPoly], ord: Ordering, scale: Rational, skip_lead: bool) -> (IPoly, Rational) {
    let mut scale = scale;
    let masks: Vec<u32> = reducers.iter().map(|g| var_mask(g.lm())).collect();
    let mut pos = usize::from(skip_lead);
    while pos < f.terms.len() {
        let m = f.terms[pos].0;
        let mask = var_mask(&m);
        let found = reducers
            .iter()
            .enumerate()
            .filter(|(k, g)| masks[*k] & !mask == 0 && g.lm().divides(&m))
            .min_by_key(|(_, g)| g.terms.len())
            .map(|(k, _)| k);
        match found {
            Some(k) => {
                let c = f.terms[pos].1.clone();
                let (nf, a) = reduce_term(&f, &c, &m, &reducers[k], ord);
                f = nf;
                scale /= Rational::from_integer(a);
            }
            None => pos += 1,
        }
    }
    let g = content_keep_sign(&mut f);
    scale *= Rational::from_integer(g);
    (f, scale)
}

fn content_keep_sign(f: &mut IPoly) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::from(0);
    for (_, c) in &f.terms {
        g = g.gcd(c);
        if g.is_one() {
            return g;
        }
    }
    if g > BigInt::one() {
        for (_, c) in &mut f.terms {
            *c /= &g;
        }
    }
    if g == BigInt::from(0) {
        BigInt::one()
    } else {
        g
    }
}

/// Mora weak normal form against a fixed standard basis.
pub(crate) fn mora_reduce(h: IPoly, basis: &[IPoly], ord: Ordering, cutoff: Option<u32>) -> IPoly {
    let mut e = Engine::new(ord);
    e.cutoff = cutoff;
    for g in basis {
        e.masks.push(var_mask(g.lm()));
        e.ecarts.push(g.ecart());
        e.polys.push(g.clone());
        e.active.push(true);
    }
    e.mora_nf(h)
}
