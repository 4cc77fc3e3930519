//! Weight-graded exact solves for coboundary equations.
//!
//! Every coboundary operator maps the weight-`d` component of k-derivations
//! to the weight-`d + shift` component of (k+1)-derivations, and each
//! component is finite-dimensional, so equations are solved one weight at a
//! time.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{delta, delta2, H2BasisElem, H2Kind, PhiContext};
use crate::error::{Error, Result};
use crate::linalg::ColumnSystem;
use crate::multivector::MultiDer;
use crate::poly::{Monomial, Poly, Rational};

type Key = (usize, Monomial);

fn entries(m: &MultiDer) -> Vec<(Key, Rational)> {
    m.parts()
        .into_iter()
        .enumerate()
        .flat_map(|(i, p)| p.terms().map(move |(mono, c)| ((i, *mono), c.clone())))
        .collect()
}

/// Columns for `delta` on the monomial basis of weight-`d` k-derivations.
struct GradedSystem {
    system: ColumnSystem<Key>,
    unknowns: Vec<(usize, Monomial)>,
    degree: usize,
}

impl GradedSystem {
    fn new(ctx: &PhiContext, degree: usize, d: i64) -> Self {
        let unknowns = MultiDer::graded_basis(degree, d, ctx.weights());
        let mut system = ColumnSystem::new();
        for &(i, m) in &unknowns {
            let image = delta(&MultiDer::basis_element(degree, i, m), ctx);
            system.push_column(entries(&image));
        }
        GradedSystem {
            system,
            unknowns,
            degree,
        }
    }

    fn push_extra(&mut self, m: &MultiDer) {
        self.system.push_column(entries(m));
    }

    /// Solution split into the preimage and the extra coefficients.
    fn solve(&mut self, target: &MultiDer) -> Option<(MultiDer, Vec<Rational>)> {
        let x = self.system.solve(entries(target))?;
        let n = self.unknowns.len();
        let width = if self.degree == 0 || self.degree == 3 { 1 } else { 3 };
        let mut parts = vec![Poly::zero(3); width];
        for (k, &(i, m)) in self.unknowns.iter().enumerate() {
            if !x[k].is_zero() {
                parts[i].add_term(m, x[k].clone());
            }
        }
        Some((MultiDer::zero(self.degree).with_parts(parts), x[n..].to_vec()))
    }
}

/// Finds `xi` with `delta(xi) = target`, weight by weight. Returns `None`
/// when no preimage exists.
pub fn solve_coboundary(target: &MultiDer, ctx: &PhiContext) -> Option<MultiDer> {
    let k = target.degree().checked_sub(1)?;
    let mut out = MultiDer::zero(k);
    for (d, piece) in target.graded_parts(ctx.weights()) {
        let mut sys = GradedSystem::new(ctx, k, d - ctx.shift());
        let (pre, _) = sys.solve(&piece)?;
        out += &pre;
    }
    Some(out)
}

/// Result of writing a 2-cocycle as `sum a_k basis_k + d1(xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub coeffs: Vec<Rational>,
    pub xi: MultiDer,
}

/// Largest power `l` such that some class `phi^l u_j grad phi` has a weight
/// occurring in `p`; zero when none does.
pub fn required_phi_power(p: &MultiDer, ctx: &PhiContext) -> usize {
    let m = ctx.milnor();
    let mut best = 0;
    for d in p.graded_parts(ctx.weights()).keys() {
        for &j in &m.e_phi {
            let rest = d - m.degrees[j] - ctx.shift();
            if rest >= 0 && rest % ctx.degree() == 0 {
                best = best.max((rest / ctx.degree()) as usize);
            }
        }
    }
    best
}

fn phi_power_bound(basis: &[H2BasisElem]) -> usize {
    basis
        .iter()
        .filter_map(|b| match b.kind {
            H2Kind::PhiPow { l, .. } => Some(l),
            H2Kind::GradU { .. } => None,
        })
        .max()
        .unwrap_or(0)
}

/// Decomposes a 2-cocycle over `basis` modulo coboundaries.
pub fn cocycle_decompose(
    p: &MultiDer,
    ctx: &PhiContext,
    basis: &[H2BasisElem],
) -> Result<Decomposition> {
    if p.degree() != 2 {
        return Err(Error::Precondition("cocycle_decompose takes a bivector".into()));
    }
    if !delta2(p, ctx).is_zero() {
        return Err(Error::NotACocycle);
    }
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, b) in basis.iter().enumerate() {
        by_weight.entry(b.kind.weight(ctx)).or_default().push(k);
    }
    let mut coeffs = vec![Rational::zero(); basis.len()];
    let mut xi = MultiDer::zero(1);
    for (d, piece) in p.graded_parts(ctx.weights()) {
        let mut sys = GradedSystem::new(ctx, 1, d - ctx.shift());
        let extra = by_weight.get(&d).cloned().unwrap_or_default();
        for &k in &extra {
            sys.push_extra(&basis[k].realized);
        }
        let Some((pre, a)) = sys.solve(&piece) else {
            return Err(Error::NotInSpan {
                bound: phi_power_bound(basis),
            });
        };
        xi += &pre;
        for (k, a) in extra.into_iter().zip(a) {
            coeffs[k] = a;
        }
    }
    Ok(Decomposition { coeffs, xi })
}

/// True when the classes of `basis` are linearly independent modulo
/// coboundaries.
pub fn classes_independent(ctx: &PhiContext, basis: &[H2BasisElem]) -> bool {
    let mut by_weight: BTreeMap<i64, Vec<&H2BasisElem>> = BTreeMap::new();
    for b in basis {
        by_weight.entry(b.kind.weight(ctx)).or_default().push(b);
    }
    by_weight.into_iter().all(|(d, elems)| {
        let mut sys = GradedSystem::new(ctx, 1, d - ctx.shift());
        let before = sys.system.rank();
        for b in &elems {
            sys.push_extra(&b.realized);
        }
        sys.system.rank() == before + elems.len()
    })
}
