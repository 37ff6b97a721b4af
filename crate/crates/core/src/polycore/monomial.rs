use std::fmt;

/// Maximum number of ring variables supported by the packed monomial.
pub const MAX_VARS: usize = 12;

/// Exponent vector stored inline; the total degree is cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, deg: 0 }
    }

    pub fn var(nvars: usize, index: usize, power: u16) -> Self {
        let mut m = Self::one(nvars);
        assert!(index < nvars);
        m.exps[index] = power;
        m.deg = power as u32;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Self::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] += other.exps[i];
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = *other;
        for i in 0..self.nvars as usize {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nvars as usize).filter(move |&i| self.exps[i] > 0)
    }

    /// If this monomial is a pure power `x_i^e` with `e > 0`, returns `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for i in self.support() {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u16) {
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }

    /// Re-embeds into a ring with `nvars` variables using `map[i]` as the new
    /// index of old variable `i`.
    pub(crate) fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut out = Monomial::one(nvars);
        for i in self.support() {
            out.exps[map[i]] += self.exps[i];
        }
        out.deg = self.deg;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}
