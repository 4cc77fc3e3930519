use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cohomology::{H2Kind, MilnorData};
use crate::error::{Error, Result};
use crate::poly::Rational;

/// Finitely supported coefficients `c^k_{l,i}` and `cbar^k_r` of the
/// canonical family. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffTable {
    c: BTreeMap<(usize, usize, usize), Rational>,
    cbar: BTreeMap<(usize, usize), Rational>,
}

impl CoeffTable {
    /// Sets `c^k_{l,i}`.
    pub fn set_c(&mut self, k: usize, l: usize, i: usize, value: Rational) {
        if value.is_zero() {
            self.c.remove(&(k, l, i));
        } else {
            self.c.insert((k, l, i), value);
        }
    }

    /// Sets `cbar^k_r`.
    pub fn set_cbar(&mut self, k: usize, r: usize, value: Rational) {
        if value.is_zero() {
            self.cbar.remove(&(k, r));
        } else {
            self.cbar.insert((k, r), value);
        }
    }

    pub fn c(&self, k: usize, l: usize, i: usize) -> Rational {
        self.c.get(&(k, l, i)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn cbar(&self, k: usize, r: usize) -> Rational {
        self.cbar.get(&(k, r)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries `((k, l, i), c^k_{l,i})`.
    pub fn c_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.c.iter()
    }

    /// Entries `((k, r), cbar^k_r)`.
    pub fn cbar_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.cbar.iter()
    }

    /// Sets the order-`k` coefficient of an H^2 basis class.
    pub fn set_class(&mut self, k: usize, kind: H2Kind, value: Rational) {
        match kind {
            H2Kind::PhiPow { l, j } => self.set_c(k, l, j, value),
            H2Kind::GradU { r } => self.set_cbar(k, r, value),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty() && self.cbar.is_empty()
    }

    /// Highest order carrying a nonzero entry.
    pub fn max_order(&self) -> usize {
        let a = self.c.keys().map(|k| k.0).max().unwrap_or(0);
        let b = self.cbar.keys().map(|k| k.0).max().unwrap_or(0);
        a.max(b)
    }

    /// Highest power of `phi` used.
    pub fn max_phi_power(&self) -> usize {
        self.c.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Entries of order at most `order`.
    pub fn truncated(&self, order: usize) -> CoeffTable {
        CoeffTable {
            c: self.c.iter().filter(|(k, _)| k.0 <= order).map(|(k, v)| (*k, v.clone())).collect(),
            cbar: self.cbar.iter().filter(|(k, _)| k.0 <= order).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Checks `k >= 1`, `i` in `E_phi` and `1 <= r < mu`.
    pub fn validate(&self, m: &MilnorData) -> Result<()> {
        for &(k, l, i) in self.c.keys() {
            if k == 0 {
                return Err(Error::IndexOutOfRange(format!("c^0_{{{l},{i}}}: orders start at 1")));
            }
            if !m.e_phi.contains(&i) {
                return Err(Error::IndexOutOfRange(format!(
                    "c^{k}_{{{l},{i}}}: index {i} is not in E_phi"
                )));
            }
        }
        for &(k, r) in self.cbar.keys() {
            if k == 0 {
                return Err(Error::IndexOutOfRange(format!("cbar^0_{r}: orders start at 1")));
            }
            if r == 0 || r >= m.mu {
                return Err(Error::IndexOutOfRange(format!(
                    "cbar^{k}_{r}: index must lie in 1..{}",
                    m.mu
                )));
            }
        }
        Ok(())
    }
}
