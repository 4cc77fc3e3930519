//! Formal Casimirs of the canonical family and its image under the Euler
//! gauge `exp(ad_{e nu})`.

use std::sync::Arc;

use num_traits::One;

use super::{build_pi, gauge_exp, CoeffTable, FormalDeformation, GaugeElement};
use crate::cohomology::PhiContext;
use crate::error::{Error, Result};
use crate::multivector::{euler_field, MultiDer, Vec3};
use crate::poly::{rat, Poly, Rational};

/// `chi` and `phi_nu` with `pi = chi grad(phi_nu)`; `phi_nu` is a formal
/// Casimir of `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirPair {
    /// `chi_0 = 1, chi_1, ..., chi_N`.
    pub chi: Vec<Poly>,
    /// `phi, phi_1, ..., phi_N`.
    pub phinu: Vec<Poly>,
}

pub fn casimir_pair(table: &CoeffTable, order: usize, ctx: &PhiContext) -> Result<CasimirPair> {
    table.validate(ctx.milnor())?;
    let (chi, phinu) = super::poly_series_coefficient(table, ctx, order);
    Ok(CasimirPair { chi, phinu })
}

/// Checks `pi[phi_nu, x] = pi[phi_nu, y] = pi[phi_nu, z] = 0` mod
/// `nu^(N+1)`. Since `pi[F, x_i]` is the `i`-th component of `pi x grad F`,
/// this is the vanishing of every coefficient of `pi x grad(phi_nu)`.
pub fn verify_casimir(pair: &CasimirPair, pi: &FormalDeformation) -> bool {
    let n = pi.order();
    if pair.phinu.len() < n + 1 {
        return false;
    }
    let series = pi.series();
    let grads: Vec<Vec3> = pair.phinu.iter().map(Vec3::grad).collect();
    (0..=n).all(|k| {
        let mut acc = Vec3::zero();
        for a in 0..=k {
            let pa = series[a].as_vec3().expect("bivector");
            acc += &pa.cross(&grads[k - a]);
        }
        acc.is_zero()
    })
}

/// Checks `(chi grad(phi_nu)) x grad(phi_nu) = 0` coefficientwise.
pub fn casimir_identity_holds(pair: &CasimirPair, order: usize) -> bool {
    let grads: Vec<Vec3> = pair.phinu.iter().map(Vec3::grad).collect();
    let at = |k: usize| grads.get(k).cloned().unwrap_or_else(Vec3::zero);
    let chi = |k: usize| pair.chi.get(k).cloned().unwrap_or_else(|| Poly::zero(3));
    (0..=order).all(|n| {
        let mut acc = Vec3::zero();
        for a in 0..=n {
            for b in 0..=n - a {
                let left = at(b).mul_poly(&chi(a));
                acc += &left.cross(&at(n - a - b));
            }
        }
        acc.is_zero()
    })
}

/// Lower end of the `r` summation in the closed-form primed coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `r >= 0`: the unprimed coefficient survives as the `r = 0` term.
    FromZero,
    /// `r >= 1`, as the sum is written over `k, r >= 1`.
    FromOne,
}

/// Base of the `r`-th power multiplying `c^k_{l,i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentBase {
    /// The weight of `phi^l u_i grad phi`: `l|w| + w(u_i)`.
    Weight,
    /// `|w|(l - 1) - w(u_i)`, as printed in the source formula.
    Printed,
}

/// One candidate closed form and whether it reproduces the direct gauge
/// computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormTable {
    pub convention: Convention,
    pub base: ExponentBase,
    pub table: CoeffTable,
    pub matches_gauge: bool,
}

/// Every closed-form variant next to the ground truth
/// `exp(ad_{e nu})(build_pi(table, N))`.
#[derive(Clone, Debug)]
pub struct WeightedGauge {
    pub direct: FormalDeformation,
    pub candidates: Vec<ClosedFormTable>,
    /// True when the gauge leaves the deformation unchanged.
    pub fixed_point: bool,
}

impl WeightedGauge {
    /// Variants that match the direct computation.
    pub fn matching(&self) -> impl Iterator<Item = &ClosedFormTable> {
        self.candidates.iter().filter(|c| c.matches_gauge)
    }

    /// The table of the unique matching variant, if exactly one matches.
    pub fn primed(&self) -> Option<&CoeffTable> {
        let mut it = self.matching();
        match (it.next(), it.next()) {
            (Some(c), None) => Some(&c.table),
            _ => None,
        }
    }
}

fn factorial(r: usize) -> Rational {
    (1..=r).fold(Rational::one(), |acc, k| acc * rat(k as i64))
}

fn primed_table(
    table: &CoeffTable,
    order: usize,
    ctx: &PhiContext,
    convention: Convention,
    base: ExponentBase,
) -> CoeffTable {
    let m = ctx.milnor();
    let ws = ctx.weights().weight_sum();
    let start = match convention {
        Convention::FromZero => 0,
        Convention::FromOne => 1,
    };
    let spread = |k: usize, beta: i64, c: &Rational, out: &mut dyn FnMut(usize, Rational)| {
        let beta = rat(beta);
        for r in start..=order.saturating_sub(k) {
            let mut term = c / factorial(r);
            for _ in 0..r {
                term *= &beta;
            }
            out(k + r, term);
        }
    };
    let mut out = CoeffTable::default();
    for (&(k, l, i), c) in table.c_entries() {
        let beta = match base {
            ExponentBase::Weight => l as i64 * ws + m.degrees[i],
            ExponentBase::Printed => ws * (l as i64 - 1) - m.degrees[i],
        };
        spread(k, beta, c, &mut |n, v| {
            let cur = out.c(n, l, i);
            out.set_c(n, l, i, cur + v);
        });
    }
    for (&(k, s), c) in table.cbar_entries() {
        let beta = m.degrees[s] - ws;
        spread(k, beta, c, &mut |n, v| {
            let cur = out.cbar(n, s);
            out.set_cbar(n, s, cur + v);
        });
    }
    out
}

/// Compares the closed-form primed coefficients with the direct gauge by
/// `xi = e nu` for `w(phi) = |w|`.
pub fn weighted_gauge_closed_form(
    table: &CoeffTable,
    order: usize,
    ctx: &Arc<PhiContext>,
) -> Result<WeightedGauge> {
    if !ctx.degree_is_weight_sum() {
        return Err(Error::WrongWeightClass);
    }
    let pi = build_pi(table, order, ctx)?;
    let mut xi = vec![MultiDer::zero(1); order];
    if order > 0 {
        xi[0] = euler_field(ctx.weights());
    }
    let direct = gauge_exp(&GaugeElement::new(xi)?, &pi)?;
    let mut candidates = Vec::new();
    for convention in [Convention::FromZero, Convention::FromOne] {
        for base in [ExponentBase::Weight, ExponentBase::Printed] {
            let primed = primed_table(table, order, ctx, convention, base);
            let matches_gauge = build_pi(&primed, order, ctx)? == direct;
            candidates.push(ClosedFormTable {
                convention,
                base,
                table: primed,
                matches_gauge,
            });
        }
    }
    let fixed_point = direct == pi;
    Ok(WeightedGauge {
        direct,
        candidates,
        fixed_point,
    })
}
