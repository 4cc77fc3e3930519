//! Buchberger's algorithm over the rationals for ideals in two or three
//! variables, under a weighted graded reverse-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, WeightSystem};

/// Weighted degree first, then total degree, then reverse lexicographic with
/// x > y > z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: WeightSystem,
}

impl MonomialOrder {
    pub fn new(weights: WeightSystem) -> Self {
        MonomialOrder { weights }
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.weights
            .degree(a)
            .cmp(&self.weights.degree(b))
            .then_with(|| a.total_degree().cmp(&b.total_degree()))
            .then_with(|| {
                let (ea, eb) = (a.exponents(), b.exponents());
                for i in (0..3).rev() {
                    if ea[i] != eb[i] {
                        // smaller power of the last differing variable wins
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            })
    }

    pub fn leading(&self, p: &Poly) -> Option<(Monomial, Rational)> {
        p.terms()
            .max_by(|(a, _), (b, _)| self.cmp(a, b))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn leading_monomial(&self, p: &Poly) -> Option<Monomial> {
        self.leading(p).map(|(m, _)| m)
    }

    /// Sorts monomials ascending in this order.
    pub fn sort(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.cmp(a, b));
    }
}

fn monic(p: &Poly, order: &MonomialOrder) -> Poly {
    match order.leading(p) {
        Some((_, c)) => p.scale(&(Rational::one() / c)),
        None => p.clone(),
    }
}

/// Full normal form of `p` modulo `basis` (multivariate division remainder).
pub fn normal_form(p: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    let leads: Vec<(Monomial, Rational)> = basis
        .iter()
        .map(|g| order.leading(g).expect("nonzero divisor"))
        .collect();
    let mut rest = p.clone();
    let mut remainder = Poly::zero(p.arity());
    while let Some((m, c)) = order.leading(&rest) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let q = lm.quotient_of(&m).expect("divides");
                let factor = -(c / lc);
                let sub = basis[k]
                    .mul_monomial(&q, &factor)
                    .expect("quotient never exceeds the dividend exponents");
                rest += &sub;
            }
            None => {
                rest.add_term(m, -c.clone());
                remainder.add_term(m, c);
            }
        }
    }
    remainder
}

fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Result<Poly> {
    let (mf, cf) = order.leading(f).expect("nonzero");
    let (mg, cg) = order.leading(g).expect("nonzero");
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&mf.quotient_of(&l).unwrap(), &(Rational::one() / cf))?;
    let b = g.mul_monomial(&mg.quotient_of(&l).unwrap(), &(Rational::one() / cg))?;
    Ok(&a - &b)
}

/// Reduced Gröbner basis of the ideal generated by `generators`, monic and
/// sorted by ascending leading monomial. The zero ideal gives an empty basis.
pub fn groebner_basis(generators: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| monic(g, order))
        .collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_first() {
        let li = order.leading_monomial(&basis[i]).unwrap();
        let lj = order.leading_monomial(&basis[j]).unwrap();
        if li.is_coprime(&lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(monic(&r, order));
            for i in 0..k {
                pairs.insert((i, k));
            }
        }
    }
    Ok(interreduce(basis, order))
}

fn interreduce(basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    // Drop elements whose leading monomial is divisible by another one.
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| order.leading_monomial(g).unwrap())
        .collect();
    let mut keep: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| {
            j != k && lj.divides(&leads[k]) && (lj != &leads[k] || j < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = order.leading(&keep[k]).unwrap();
        let tail = &keep[k] - &Poly::term(keep[k].arity(), lm, lc.clone());
        let tail = normal_form(&tail, &others, order);
        let g = &Poly::term(keep[k].arity(), lm, lc) + &tail;
        reduced.push(monic(&g, order));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            &order.leading_monomial(a).unwrap(),
            &order.leading_monomial(b).unwrap(),
        )
    });
    reduced
}

/// Monomials not divisible by any leading monomial of `basis`, sorted
/// ascending in `order`. Fails with [`Error::InfiniteDimension`] unless
/// every variable has a pure power among the leading monomials.
pub fn standard_monomials(basis: &[Poly], order: &MonomialOrder, arity: usize) -> Result<Vec<Monomial>> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| order.leading_monomial(g).unwrap())
        .collect();
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    let mut bounds = [0u32; 3];
    for (i, bound) in bounds.iter_mut().enumerate().take(arity) {
        *bound = leads
            .iter()
            .filter(|m| m.pure_power_of() == Some(i))
            .map(|m| m.exponent(i))
            .min()
            .ok_or(Error::InfiniteDimension)?;
    }
    let mut out = Vec::new();
    let top = |i: usize| if i < arity { bounds[i] } else { 1 };
    for a in 0..top(0) {
        for b in 0..top(1) {
            for c in 0..top(2) {
                let m = Monomial::new(&[a, b, c])?;
                if !leads.iter().any(|l| l.divides(&m)) {
                    out.push(m);
                }
            }
        }
    }
    order.sort(&mut out);
    Ok(out)
}

/// True when `p` lies in the ideal with Gröbner basis `basis`.
pub fn ideal_contains(p: &Poly, basis: &[Poly], order: &MonomialOrder) -> bool {
    normal_form(p, basis, order).is_zero()
}
