//! Reduction of a deformation to the canonical family, order by order.

use std::sync::Arc;

use num_traits::Zero;

use super::{bracket_series, build_pi, gauge_exp, verify, CoeffTable, FormalDeformation, GaugeElement};
use crate::cohomology::{
    cocycle_decompose, h1_is_zero, h2_basis, required_phi_power, solve_coboundary, PhiContext,
};
use crate::error::{Error, Result};
use crate::multivector::MultiDer;
use crate::poly::Poly;

/// Finds `(T, xi)` with `gauge_exp(xi, build_pi(T, N)) = pi`.
///
/// At order `n` the difference between `pi` and the current candidate is a
/// 2-cocycle; its class fixes the order-`n` coefficients and its coboundary
/// part (negated) becomes `xi_n`. With `bound = None` the power of `phi`
/// needed at each order is computed from the difference.
fn normalize_with(pi: &FormalDeformation, bound: Option<usize>) -> Result<(CoeffTable, GaugeElement)> {
    let check = verify(pi)?;
    if let Some(order) = check.first_failure() {
        return Err(Error::NotADeformation { order });
    }
    let ctx = pi.ctx();
    let n_max = pi.order();
    let mut table = CoeffTable::default();
    let mut xi = GaugeElement::zero(n_max);
    let mut current = FormalDeformation::trivial(ctx.clone(), n_max);
    for n in 1..=n_max {
        let diff = &pi.term(n) - &current.term(n);
        if diff.is_zero() {
            continue;
        }
        let b = bound.unwrap_or_else(|| required_phi_power(&diff, ctx));
        let basis = h2_basis(ctx, b)?;
        let dec = cocycle_decompose(&diff, ctx, &basis).map_err(|e| match e {
            Error::NotACocycle => Error::NotADeformation { order: n },
            e => e,
        })?;
        for (elem, a) in basis.iter().zip(&dec.coeffs) {
            if !a.is_zero() {
                table.set_class(n, elem.kind, a.clone());
            }
        }
        xi.set(n, -&dec.xi);
        current = gauge_exp(&xi, &build_pi(&table, n_max, ctx)?)?;
        debug_assert_eq!(current.term(n), pi.term(n));
    }
    Ok((table, xi))
}

/// Normal form using classes `phi^l u_j grad phi` with `l <= phi_power_bound`.
/// Fails with [`Error::NotInSpan`] when a higher power is needed.
pub fn normalize(pi: &FormalDeformation, phi_power_bound: usize) -> Result<(CoeffTable, GaugeElement)> {
    normalize_with(pi, Some(phi_power_bound))
}

/// Normal form with the power bound chosen per order.
pub fn normalize_auto(pi: &FormalDeformation) -> Result<(CoeffTable, GaugeElement)> {
    normalize_with(pi, None)
}

/// A deformation of order `N + 1` agreeing with `pi` through `nu^N`.
pub fn extend_order(pi: &FormalDeformation) -> Result<FormalDeformation> {
    let (table, xi) = normalize_auto(pi)?;
    let n = pi.order() + 1;
    let mut terms = xi.terms().to_vec();
    terms.push(MultiDer::zero(1));
    let xi = GaugeElement::new(terms)?;
    let canonical = build_pi(&table, n, pi.ctx())?;
    if xi.terms().iter().all(MultiDer::is_zero) {
        return Ok(canonical);
    }
    gauge_exp(&xi, &canonical)
}

/// Solves `psi + [H, pi]_S = 0` mod `nu^(N+1)` for a function series `H`,
/// given a derivation series `psi_0, ..., psi_N` with `[psi, pi]_S = 0`.
pub fn trivialize_1cocycle(psi: &[MultiDer], pi: &FormalDeformation) -> Result<Vec<Poly>> {
    let ctx: &Arc<PhiContext> = pi.ctx();
    if !h1_is_zero(ctx) {
        return Err(Error::Precondition(
            "first cohomology does not vanish for this phi".into(),
        ));
    }
    let n = pi.order();
    if psi.len() != n + 1 || psi.iter().any(|p| p.degree() != 1) {
        return Err(Error::Precondition(format!(
            "expected {} derivation coefficients",
            n + 1
        )));
    }
    let series = pi.series();
    if bracket_series(psi, &series, n)?.iter().any(|t| !t.is_zero()) {
        return Err(Error::NotACocycle);
    }
    let mut h: Vec<MultiDer> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        // d0(h_m) = psi_m + sum_{a<m} [h_a, pi_{m-a}]
        let mut target = psi[m].clone();
        for (a, ha) in h.iter().enumerate() {
            target += &crate::multivector::schouten(ha, &series[m - a])?;
        }
        let hm = solve_coboundary(&target, ctx).ok_or(Error::H1Obstruction { order: m })?;
        h.push(hm);
    }
    Ok(h.into_iter()
        .map(|f| f.as_poly().cloned().expect("degree 0"))
        .collect())
}
