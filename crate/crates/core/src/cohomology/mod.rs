//! Poisson cohomology of `{.,.}_phi` on `Q[x,y,z]`.
//!
//! The coboundary operators are written in vector-calculus form,
//!
//! ```text
//! d0 F = grad F x grad phi
//! d1 V = -grad(V . grad phi) + div(V) grad phi
//! d2 B = -grad phi . curl B
//! ```
//!
//! and the second cohomology is described through the Milnor algebra of
//! `phi`: classes `phi^l u_j grad phi` and `grad u_r`.

mod plane;
mod solver;

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{self, MonomialOrder};
use crate::multivector::{MultiDer, Vec3};
use crate::poly::{rat, Grading, Monomial, Poly, WeightSystem};

pub use plane::h2_dim_plane;
pub use solver::{
    classes_independent, cocycle_decompose, required_phi_power, solve_coboundary, Decomposition,
};

/// Gröbner data of the Jacobian ideal of `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorData {
    pub groebner_basis: Vec<Poly>,
    /// `u_0 = 1, u_1, ..., u_{mu-1}`.
    pub basis: Vec<Monomial>,
    pub mu: usize,
    /// Weighted degrees of the `u_j`.
    pub degrees: Vec<i64>,
    /// Indices `j` for which `phi^l u_j grad phi` is a class.
    pub e_phi: Vec<usize>,
}

impl MilnorData {
    pub fn u(&self, j: usize) -> Poly {
        Poly::term(3, self.basis[j], rat(1))
    }
}

/// A weight-homogeneous polynomial with an isolated singularity, together
/// with its Milnor data.
#[derive(Clone, Debug)]
pub struct PhiContext {
    phi: Poly,
    weights: WeightSystem,
    degree: i64,
    grad_phi: Vec3,
    milnor: MilnorData,
    max_degree: Option<i64>,
}

impl PhiContext {
    pub fn new(phi: Poly, weights: WeightSystem) -> Result<Self> {
        if phi.arity() != 3 || weights.arity() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: if phi.arity() != 3 { phi.arity() } else { weights.arity() },
            });
        }
        let degree = match phi.grading(&weights)? {
            Grading::Homogeneous(d) => d,
            Grading::Zero => return Err(Error::NotIsolatedSingularity),
            Grading::Inhomogeneous => return Err(Error::NotHomogeneous),
        };
        let milnor = milnor(&phi, &weights)?;
        let grad_phi = Vec3::grad(&phi);
        Ok(PhiContext {
            phi,
            weights,
            degree,
            grad_phi,
            milnor,
            max_degree: None,
        })
    }

    /// Caps the weighted degree of intermediate polynomials in deformation
    /// computations.
    pub fn with_max_degree(mut self, cap: Option<i64>) -> Self {
        self.max_degree = cap;
        self
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.max_degree
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    /// `w(phi)`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn grad_phi(&self) -> &Vec3 {
        &self.grad_phi
    }

    pub fn milnor(&self) -> &MilnorData {
        &self.milnor
    }

    /// True when `w(phi) = |w|`.
    pub fn degree_is_weight_sum(&self) -> bool {
        self.degree == self.weights.weight_sum()
    }

    /// Weight of the bivector `grad phi`, which is also the weight shift of
    /// every coboundary operator.
    pub fn shift(&self) -> i64 {
        self.degree - self.weights.weight_sum()
    }

    pub fn pi0(&self) -> MultiDer {
        MultiDer::Bivector(self.grad_phi.clone())
    }

    /// Fails when some component of `m` exceeds the configured degree cap.
    pub fn check_degree(&self, m: &MultiDer) -> Result<()> {
        let Some(cap) = self.max_degree else {
            return Ok(());
        };
        for p in m.parts() {
            if let Some(d) = p.weighted_degree(&self.weights)? {
                if d > cap {
                    return Err(Error::DegreeCapExceeded { degree: d, cap });
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for PhiContext {
    fn eq(&self, other: &Self) -> bool {
        self.phi == other.phi && self.weights == other.weights
    }
}

fn milnor_order(a: &Monomial, b: &Monomial, w: &WeightSystem) -> std::cmp::Ordering {
    let o = MonomialOrder::new(w.clone());
    w.degree(a)
        .cmp(&w.degree(b))
        .then_with(|| a.total_degree().cmp(&b.total_degree()))
        .then_with(|| o.cmp(b, a))
}

/// Milnor algebra of `phi` by a Gröbner basis of the Jacobian ideal.
pub fn milnor(phi: &Poly, w: &WeightSystem) -> Result<MilnorData> {
    let order = MonomialOrder::new(w.clone());
    let gb = groebner::groebner_basis(&phi.gradient(), &order)?;
    let mut basis = groebner::standard_monomials(&gb, &order, 3).map_err(|e| match e {
        Error::InfiniteDimension => Error::NotIsolatedSingularity,
        e => e,
    })?;
    if basis.is_empty() {
        return Err(Error::NoSingularity);
    }
    basis.sort_by(|a, b| milnor_order(a, b, w));
    let degrees: Vec<i64> = basis.iter().map(|m| w.degree(m)).collect();
    let d = phi.weighted_degree(w)?.unwrap_or(0);
    let start = if d == w.weight_sum() { 0 } else { 1 };
    Ok(MilnorData {
        groebner_basis: gb,
        mu: basis.len(),
        e_phi: (start..basis.len()).collect(),
        basis,
        degrees,
    })
}

pub fn delta0(f: &Poly, ctx: &PhiContext) -> MultiDer {
    MultiDer::Vector(Vec3::grad(f).cross(&ctx.grad_phi))
}

pub fn delta1(v: &MultiDer, ctx: &PhiContext) -> MultiDer {
    let v = v.as_vec3().expect("delta1 takes a derivation");
    let mut out = Vec3::grad(&v.dot(&ctx.grad_phi));
    out = &ctx.grad_phi.mul_poly(&v.div()) - &out;
    MultiDer::Bivector(out)
}

pub fn delta2(b: &MultiDer, ctx: &PhiContext) -> MultiDer {
    let b = b.as_vec3().expect("delta2 takes a bivector");
    MultiDer::Trivector(-&ctx.grad_phi.dot(&b.curl()))
}

/// Coboundary of a k-derivation, `k = 0, 1, 2`.
pub fn delta(m: &MultiDer, ctx: &PhiContext) -> MultiDer {
    match m.degree() {
        0 => delta0(m.as_poly().unwrap(), ctx),
        1 => delta1(m, ctx),
        2 => delta2(m, ctx),
        _ => MultiDer::zero(3),
    }
}

/// Which class an element of the H^2 basis stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum H2Kind {
    /// `phi^l u_j grad phi`
    PhiPow { l: usize, j: usize },
    /// `grad u_r`
    GradU { r: usize },
}

impl H2Kind {
    /// Weight of the realized bivector.
    pub fn weight(&self, ctx: &PhiContext) -> i64 {
        let m = ctx.milnor();
        match *self {
            H2Kind::PhiPow { l, j } => l as i64 * ctx.degree() + m.degrees[j] + ctx.shift(),
            H2Kind::GradU { r } => m.degrees[r] - ctx.weights().weight_sum(),
        }
    }

    pub fn realize(&self, ctx: &PhiContext) -> MultiDer {
        let m = ctx.milnor();
        match *self {
            H2Kind::PhiPow { l, j } => {
                let f = &ctx.phi().pow(l as u32) * &m.u(j);
                MultiDer::Bivector(ctx.grad_phi().mul_poly(&f))
            }
            H2Kind::GradU { r } => MultiDer::Bivector(Vec3::grad(&m.u(r))),
        }
    }
}

impl fmt::Display for H2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H2Kind::PhiPow { l, j } => write!(f, "phi^{l}*u{j}*grad(phi)"),
            H2Kind::GradU { r } => write!(f, "grad(u{r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2BasisElem {
    pub kind: H2Kind,
    pub realized: MultiDer,
}

/// Basis of H^2 truncated at `phi_power_bound`: first the `phi^l u_j grad
/// phi` ordered by `(l, j)`, then the `grad u_r`.
pub fn h2_basis(ctx: &PhiContext, phi_power_bound: usize) -> Result<Vec<H2BasisElem>> {
    let m = ctx.milnor();
    let mut kinds = Vec::new();
    for l in 0..=phi_power_bound {
        for &j in &m.e_phi {
            kinds.push(H2Kind::PhiPow { l, j });
        }
    }
    for r in 1..m.mu {
        kinds.push(H2Kind::GradU { r });
    }
    kinds
        .into_iter()
        .map(|kind| {
            let realized = kind.realize(ctx);
            if !delta2(&realized, ctx).is_zero() {
                return Err(Error::NotACocycle);
            }
            Ok(H2BasisElem { kind, realized })
        })
        .collect()
}

/// H^1 vanishes exactly when `w(phi) != |w|`.
pub fn h1_is_zero(ctx: &PhiContext) -> bool {
    !ctx.degree_is_weight_sum()
}

/// Checks `d1(phi^i u_j e) = (w(u_j) - w(phi) + |w|) phi^i u_j grad phi
/// - w(phi) phi^(i+1) grad u_j` for the Euler derivation `e`.
pub fn delta1_euler_identity(ctx: &PhiContext, i: usize, j: usize) -> Result<bool> {
    let m = ctx.milnor();
    if j >= m.mu {
        return Err(Error::IndexOutOfRange(format!("u_{j} with mu = {}", m.mu)));
    }
    let u = m.u(j);
    let phi_i = ctx.phi().pow(i as u32);
    let e = crate::multivector::euler_field(ctx.weights());
    let lhs = delta1(&e.mul_poly(&(&phi_i * &u)), ctx);
    let a = m.degrees[j] - ctx.degree() + ctx.weights().weight_sum();
    let first = ctx.grad_phi().mul_poly(&(&phi_i * &u).scale_int(a));
    let second = Vec3::grad(&u).mul_poly(&(&phi_i * ctx.phi()).scale_int(ctx.degree()));
    Ok(lhs == MultiDer::Bivector(&first - &second))
}
