use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// Default upper bound on a single exponent.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

static EXPONENT_CAP: AtomicU32 = AtomicU32::new(DEFAULT_EXPONENT_CAP);

/// Current exponent cap shared by every monomial operation.
pub fn exponent_cap() -> u32 {
    EXPONENT_CAP.load(Ordering::Relaxed)
}

/// Changes the exponent cap. Existing monomials are not re-checked.
pub fn set_exponent_cap(cap: u32) {
    EXPONENT_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// A power product `x^a y^b z^c`. Variables beyond the arity of the owning
/// polynomial always carry exponent zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u32; 3],
}

fn check(e: u64) -> Result<u32> {
    let cap = exponent_cap();
    if e > cap as u64 {
        Err(Error::ExponentOverflow { exponent: e, cap })
    } else {
        Ok(e as u32)
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; 3] };

    pub fn new(exps: &[u32]) -> Result<Self> {
        assert!(exps.len() <= 3, "at most three variables");
        let mut m = [0u32; 3];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = check(e as u64)?;
        }
        Ok(Monomial { exps: m })
    }

    /// The monomial consisting of the single variable `index`.
    pub fn var(index: usize) -> Self {
        let mut exps = [0; 3];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 3]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree `sum w_i e_i`; missing weights count as zero.
    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = [0; 3];
        for i in 0..3 {
            exps[i] = check(self.exps[i] as u64 + other.exps[i] as u64)?;
        }
        Ok(Monomial { exps })
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = [0; 3];
        for i in 0..3 {
            exps[i] = check(self.exps[i] as u64 * k as u64)?;
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0; 3];
        for i in 0..3 {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; 3];
        for i in 0..3 {
            exps[i] = self.exps[i].max(other.exps[i]);
        }
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Formal derivative with respect to variable `index`: `(e, m / x_index)`.
    pub fn derivative(&self, index: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[index];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps;
        exps[index] -= 1;
        Some((e, Monomial { exps }))
    }

    /// Index of the single variable if this monomial is a pure power `x_i^e`, `e >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..3).filter(|&i| self.exps[i] > 0).collect();
        match nonzero.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }
}
