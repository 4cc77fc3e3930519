//! Truncated formal deformations `pi_0 + pi_1 nu + ... + pi_N nu^N` of the
//! bracket `{.,.}_phi`.
//!
//! The canonical family is `pi = chi grad(phi_nu)` with
//!
//! ```text
//! chi    = 1   + sum_a (sum_{l,i} c^a_{l,i} phi^l u_i) nu^a
//! phi_nu = phi + sum_b (sum_r    cbar^b_r  u_r)        nu^b
//! ```
//!
//! whose order-`n` term is the sum of `phi^l u_i grad u_r` cross terms with
//! `a + b = n`, the `phi^m u_j grad phi` terms and the `grad u_s` terms.

mod casimir;
mod normalize;
mod table;

use std::sync::Arc;


use crate::cohomology::{delta2, PhiContext};
use crate::error::{Error, Result};
use crate::multivector::{schouten, MultiDer, Vec3};
use crate::poly::{rat, Poly, Rational};

pub use casimir::{
    casimir_identity_holds, casimir_pair, verify_casimir, weighted_gauge_closed_form, CasimirPair,
    ClosedFormTable, Convention, ExponentBase, WeightedGauge,
};
pub use normalize::{extend_order, normalize, normalize_auto, trivialize_1cocycle};
pub use table::CoeffTable;

/// A truncated series `pi_1 nu + ... + pi_N nu^N` over the implicit
/// `pi_0 = grad phi`.
#[derive(Clone, Debug)]
pub struct FormalDeformation {
    ctx: Arc<PhiContext>,
    terms: Vec<MultiDer>,
    provenance: Option<CoeffTable>,
}

impl PartialEq for FormalDeformation {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl FormalDeformation {
    /// Wraps `pi_1, ..., pi_N` without checking the deformation equation.
    pub fn new(ctx: Arc<PhiContext>, terms: Vec<MultiDer>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.degree() != 2) {
            return Err(Error::Precondition(format!(
                "deformation terms must be bivectors, found degree {}",
                t.degree()
            )));
        }
        Ok(FormalDeformation {
            ctx,
            terms,
            provenance: None,
        })
    }

    pub fn trivial(ctx: Arc<PhiContext>, order: usize) -> Self {
        FormalDeformation {
            ctx,
            terms: vec![MultiDer::zero(2); order],
            provenance: None,
        }
    }

    pub fn ctx(&self) -> &Arc<PhiContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `pi_1, ..., pi_N`.
    pub fn terms(&self) -> &[MultiDer] {
        &self.terms
    }

    /// `pi_n` for `0 <= n <= N`.
    pub fn term(&self, n: usize) -> MultiDer {
        if n == 0 {
            self.ctx.pi0()
        } else {
            self.terms[n - 1].clone()
        }
    }

    /// `pi_0, ..., pi_N`.
    pub fn series(&self) -> Vec<MultiDer> {
        (0..=self.order()).map(|n| self.term(n)).collect()
    }

    pub fn provenance(&self) -> Option<&CoeffTable> {
        self.provenance.as_ref()
    }

    /// Keeps `pi_1, ..., pi_n`.
    pub fn truncate(&self, n: usize) -> Self {
        FormalDeformation {
            ctx: self.ctx.clone(),
            terms: self.terms[..n.min(self.order())].to_vec(),
            provenance: self.provenance.as_ref().map(|t| t.truncated(n)),
        }
    }

    fn from_series(ctx: Arc<PhiContext>, mut series: Vec<MultiDer>) -> Self {
        series.remove(0);
        FormalDeformation {
            ctx,
            terms: series,
            provenance: None,
        }
    }
}

/// `xi_1 nu + ... + xi_N nu^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    terms: Vec<MultiDer>,
}

impl GaugeElement {
    pub fn new(terms: Vec<MultiDer>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.degree() != 1) {
            return Err(Error::Precondition(format!(
                "gauge terms must be derivations, found degree {}",
                t.degree()
            )));
        }
        Ok(GaugeElement { terms })
    }

    pub fn zero(order: usize) -> Self {
        GaugeElement {
            terms: vec![MultiDer::zero(1); order],
        }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[MultiDer] {
        &self.terms
    }

    /// `xi_n`, zero beyond the stored order.
    pub fn term(&self, n: usize) -> MultiDer {
        match n {
            0 => MultiDer::zero(1),
            n if n <= self.order() => self.terms[n - 1].clone(),
            _ => MultiDer::zero(1),
        }
    }

    pub fn neg(&self) -> Self {
        GaugeElement {
            terms: self.terms.iter().map(|t| -t).collect(),
        }
    }

    pub(crate) fn set(&mut self, n: usize, xi: MultiDer) {
        while self.terms.len() < n {
            self.terms.push(MultiDer::zero(1));
        }
        self.terms[n - 1] = xi;
    }
}

/// Truncated product of two series: `[a, b]_n = sum_{i+j=n} [a_i, b_j]`.
pub(crate) fn bracket_series(a: &[MultiDer], b: &[MultiDer], order: usize) -> Result<Vec<MultiDer>> {
    let degree = a[0].degree() + b[0].degree() - 1;
    let mut out = vec![MultiDer::zero(degree); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += &schouten(ai, bj)?;
            }
        }
    }
    Ok(out)
}

fn poly_series_coefficient(
    table: &CoeffTable,
    ctx: &PhiContext,
    order: usize,
) -> (Vec<Poly>, Vec<Poly>) {
    let m = ctx.milnor();
    let mut chi = vec![Poly::zero(3); order + 1];
    let mut psi = vec![Poly::zero(3); order + 1];
    chi[0] = Poly::one(3);
    psi[0] = ctx.phi().clone();
    for (&(k, l, i), c) in table.c_entries() {
        if k <= order {
            chi[k] += &(&ctx.phi().pow(l as u32) * &m.u(i)).scale(c);
        }
    }
    for (&(k, r), c) in table.cbar_entries() {
        if k <= order {
            psi[k] += &m.u(r).scale(c);
        }
    }
    (chi, psi)
}

/// The canonical deformation with coefficients `table`, truncated at `order`.
pub fn build_pi(table: &CoeffTable, order: usize, ctx: &Arc<PhiContext>) -> Result<FormalDeformation> {
    table.validate(ctx.milnor())?;
    let (chi, psi) = poly_series_coefficient(table, ctx, order);
    let grads: Vec<Vec3> = psi.iter().map(Vec3::grad).collect();
    let mut terms = Vec::with_capacity(order);
    for n in 1..=order {
        let mut v = Vec3::zero();
        for a in 0..=n {
            if !chi[a].is_zero() && !psi[n - a].is_zero() {
                v += &grads[n - a].mul_poly(&chi[a]);
            }
        }
        let t = MultiDer::Bivector(v);
        ctx.check_degree(&t)?;
        terms.push(t);
    }
    Ok(FormalDeformation {
        ctx: ctx.clone(),
        terms,
        provenance: Some(table.truncated(order)),
    })
}

/// Per-order defects of the deformation equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// `D_n = d2(pi_n) - 1/2 sum_{i+j=n, i,j>=1} [pi_i, pi_j]` for `n = 1..=N`.
    pub defects: Vec<MultiDer>,
    /// Coefficients of `[pi, pi]_S` for `n = 1..=N`.
    pub jacobi: Vec<MultiDer>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.defects.iter().all(MultiDer::is_zero)
    }

    /// First order with a nonzero defect.
    pub fn first_failure(&self) -> Option<usize> {
        self.defects.iter().position(|d| !d.is_zero()).map(|i| i + 1)
    }

    /// The two computations agree: `[pi,pi]_n = -2 D_n`.
    pub fn consistent(&self) -> bool {
        let m2 = rat(-2);
        self.defects
            .iter()
            .zip(&self.jacobi)
            .all(|(d, j)| d.scale(&m2) == *j)
    }
}

pub fn verify(pi: &FormalDeformation) -> Result<Verification> {
    let series = pi.series();
    let n = pi.order();
    let jac = bracket_series(&series, &series, n)?;
    let half = Rational::new(1.into(), 2.into());
    let mut defects = Vec::with_capacity(n);
    for k in 1..=n {
        let mut d = delta2(&series[k], &pi.ctx);
        for i in 1..k {
            d -= &schouten(&series[i], &series[k - i])?.scale(&half);
        }
        defects.push(d);
    }
    Ok(Verification {
        defects,
        jacobi: jac[1..].to_vec(),
    })
}

/// `exp(ad_xi)(pi)` truncated at the order of `pi`.
pub fn gauge_exp(xi: &GaugeElement, pi: &FormalDeformation) -> Result<FormalDeformation> {
    let n = pi.order();
    let xi_series: Vec<MultiDer> = (0..=n).map(|k| xi.term(k)).collect();
    let mut total = pi.series();
    let mut term = total.clone();
    for k in 1..=n {
        term = bracket_series(&xi_series, &term, n)?;
        let inv = Rational::new(1.into(), (k as i64).into());
        for t in term.iter_mut() {
            *t = t.scale(&inv);
        }
        if term.iter().all(MultiDer::is_zero) {
            break;
        }
        for (acc, t) in total.iter_mut().zip(&term) {
            *acc += t;
        }
    }
    for t in &total {
        pi.ctx.check_degree(t)?;
    }
    Ok(FormalDeformation::from_series(pi.ctx.clone(), total))
}
