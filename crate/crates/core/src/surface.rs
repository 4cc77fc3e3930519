//! The quotient algebra `A = Q[x,y,z]/<phi>` with the bracket induced by
//! `{.,.}_phi`, its second cohomology classes and their deformations.
//!
//! Elements of `A` are represented by normal forms modulo `phi`. A bivector
//! acts on `A` through its components reduced modulo `phi`, so two
//! bivectors define the same bracket on `A` exactly when their componentwise
//! normal forms agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cohomology::{delta1, PhiContext};
use crate::deformation::{gauge_exp, FormalDeformation, GaugeElement};
use crate::error::{Error, Result};
use crate::groebner::{normal_form, MonomialOrder};
use crate::linalg::ColumnSystem;
use crate::multivector::{euler_field, schouten, MultiDer, Vec3};
use crate::poly::{Monomial, Poly, Rational};

/// Reduction modulo the principal ideal `<phi>`. `{phi}` is already a
/// Gröbner basis, so reduction is division by `phi`.
#[derive(Clone, Debug)]
pub struct QuotientCtx {
    ctx: Arc<PhiContext>,
    order: MonomialOrder,
    divisor: [Poly; 1],
}

impl QuotientCtx {
    pub fn new(ctx: Arc<PhiContext>) -> Self {
        let order = MonomialOrder::new(ctx.weights().clone());
        let divisor = [ctx.phi().clone()];
        QuotientCtx { ctx, order, divisor }
    }

    pub fn ctx(&self) -> &Arc<PhiContext> {
        &self.ctx
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, &self.divisor, &self.order)
    }

    /// Componentwise normal form.
    pub fn project(&self, v: &Vec3) -> Vec3 {
        v.map(|p| self.normal_form(p))
    }

    /// `{f, g}` in the quotient.
    pub fn induced_bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let v = Vec3::grad(f).cross(&Vec3::grad(g));
        self.normal_form(&self.ctx.grad_phi().dot(&v))
    }

    /// Indices `j` with `w(u_j) = w(phi) - |w|`.
    pub fn class_indices(&self) -> Vec<usize> {
        let target = self.ctx.degree() - self.ctx.weights().weight_sum();
        let m = self.ctx.milnor();
        (0..m.mu).filter(|&j| m.degrees[j] == target).collect()
    }

    /// Reduced `u_j grad phi`.
    pub fn class(&self, j: usize) -> Vec3 {
        let u = self.ctx.milnor().u(j);
        self.project(&self.ctx.grad_phi().mul_poly(&u))
    }
}

/// Basis of the second cohomology of the quotient, as `(j, reduced u_j grad
/// phi)`.
pub fn h2_surface_basis(q: &QuotientCtx) -> Vec<(usize, Vec3)> {
    q.class_indices().into_iter().map(|j| (j, q.class(j))).collect()
}

/// Coefficients `alpha^n_j` of a surface deformation. Zero entries are not
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceCoeffTable {
    alpha: BTreeMap<(usize, usize), Rational>,
}

impl SurfaceCoeffTable {
    pub fn set(&mut self, n: usize, j: usize, value: Rational) {
        if value.is_zero() {
            self.alpha.remove(&(n, j));
        } else {
            self.alpha.insert((n, j), value);
        }
    }

    pub fn get(&self, n: usize, j: usize) -> Rational {
        self.alpha.get(&(n, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.alpha.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn validate(&self, q: &QuotientCtx) -> Result<()> {
        let allowed = q.class_indices();
        for &(n, j) in self.alpha.keys() {
            if n == 0 {
                return Err(Error::IndexOutOfRange(format!("alpha^0_{j}: orders start at 1")));
            }
            if !allowed.contains(&j) {
                return Err(Error::IndexOutOfRange(format!(
                    "alpha^{n}_{j}: w(u_{j}) must equal w(phi) - |w|"
                )));
            }
        }
        Ok(())
    }
}

/// A formal deformation of the quotient bracket: reduced bivectors
/// `pi_1, ..., pi_N`, with `pi_0 = grad phi`.
#[derive(Clone, Debug)]
pub struct SurfaceDeformation {
    q: Arc<QuotientCtx>,
    terms: Vec<Vec3>,
}

impl PartialEq for SurfaceDeformation {
    fn eq(&self, other: &Self) -> bool {
        self.q.ctx().phi() == other.q.ctx().phi() && self.terms == other.terms
    }
}

impl SurfaceDeformation {
    /// Reduces every term.
    pub fn new(q: Arc<QuotientCtx>, terms: Vec<Vec3>) -> Self {
        let terms = terms.iter().map(|t| q.project(t)).collect();
        SurfaceDeformation { q, terms }
    }

    pub fn quotient(&self) -> &Arc<QuotientCtx> {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Vec3] {
        &self.terms
    }

    /// `pi_0, ..., pi_N`.
    pub fn series(&self) -> Vec<Vec3> {
        std::iter::once(self.q.ctx().grad_phi().clone())
            .chain(self.terms.iter().cloned())
            .collect()
    }

    fn lift(&self) -> FormalDeformation {
        let terms = self.terms.iter().cloned().map(MultiDer::Bivector).collect();
        FormalDeformation::new(self.q.ctx().clone(), terms).expect("bivectors")
    }
}

/// `grad phi + sum_n nu^n sum_j alpha^n_j (u_j grad phi)`, reduced.
pub fn build_surface_deformation(
    alpha: &SurfaceCoeffTable,
    order: usize,
    q: &Arc<QuotientCtx>,
) -> Result<SurfaceDeformation> {
    alpha.validate(q)?;
    let mut terms = vec![Vec3::zero(); order];
    for (&(n, j), a) in alpha.entries() {
        if n <= order {
            terms[n - 1] += &q.class(j).scale(a);
        }
    }
    Ok(SurfaceDeformation::new(q.clone(), terms))
}

/// Reduced cyclic Jacobi sum on `(x, y, z)` at orders `1..=N`.
///
/// For a bivector `B`, `B[x_i, x_j] = B_k` for `(i, j, k)` cyclic and
/// `B[h, x_k] = (B x grad h)_k`, so the order-`n` part of the sum is
/// `sum_{a+b=n} sum_k (pi_a x grad (pi_b)_k)_k`.
pub fn verify_surface(pi: &SurfaceDeformation) -> Vec<Poly> {
    let q = &pi.q;
    let series = pi.series();
    let grads: Vec<[Vec3; 3]> = series
        .iter()
        .map(|b| [Vec3::grad(&b.0[0]), Vec3::grad(&b.0[1]), Vec3::grad(&b.0[2])])
        .collect();
    (0..=pi.order())
        .map(|n| {
            let mut acc = Poly::zero(3);
            for a in 0..=n {
                for k in 0..3 {
                    acc += &series[a].cross(&grads[n - a][k]).0[k];
                }
            }
            q.normal_form(&acc)
        })
        .skip(1)
        .collect()
}

/// Witness that the Euler gauge `xi = e nu` kills the only class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeWitness {
    pub xi: Vec3,
    /// `[e, grad phi]_S`, which must vanish.
    pub bracket: Vec3,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    Rigid,
    RigidViaGauge(GaugeWitness),
    NotRigidCandidate(Vec<(usize, Vec3)>),
}

impl RigidityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            RigidityVerdict::Rigid => "Rigid",
            RigidityVerdict::RigidViaGauge(_) => "RigidViaGauge",
            RigidityVerdict::NotRigidCandidate(_) => "NotRigidCandidate",
        }
    }
}

pub fn rigidity_check(q: &QuotientCtx) -> Result<RigidityVerdict> {
    let basis = h2_surface_basis(q);
    if basis.is_empty() {
        return Ok(RigidityVerdict::Rigid);
    }
    let ctx = q.ctx();
    if ctx.degree_is_weight_sum() {
        let e = euler_field(ctx.weights());
        let b = schouten(&e, &ctx.pi0())?;
        let bracket = b.as_vec3().cloned().expect("bivector");
        let holds = bracket.is_zero();
        let xi = e.as_vec3().cloned().expect("vector field");
        return Ok(RigidityVerdict::RigidViaGauge(GaugeWitness { xi, bracket, holds }));
    }
    Ok(RigidityVerdict::NotRigidCandidate(basis))
}

type Key = (usize, Monomial);

fn keyed(v: &Vec3) -> Vec<(Key, Rational)> {
    v.0.iter()
        .enumerate()
        .flat_map(|(i, p)| p.terms().map(move |(m, c)| ((i, *m), c.clone())))
        .collect()
}

/// Writes each order of `pi` as a combination of the basis classes plus
/// the coboundary of a derivation tangent to `phi = 0`, gauging order by
/// order. Deformations outside that reach give [`Error::Unsupported`].
pub fn normalize_surface(pi: &SurfaceDeformation) -> Result<(SurfaceCoeffTable, GaugeElement)> {
    if let Some(n) = verify_surface(pi).iter().position(|d| !d.is_zero()) {
        return Err(Error::NotADeformation { order: n + 1 });
    }
    let q = pi.quotient();
    let ctx = q.ctx();
    let w = ctx.weights();
    let n_max = pi.order();
    let classes = h2_surface_basis(q);
    let mut table = SurfaceCoeffTable::default();
    let mut xi = GaugeElement::zero(n_max);
    for n in 1..=n_max {
        let current = surface_gauge(&xi, &build_surface_deformation(&table, n_max, q)?)?;
        let diff = q.project(&(&pi.terms[n - 1] - &current.terms[n - 1]));
        if diff.is_zero() {
            continue;
        }
        let mut eta = MultiDer::zero(1);
        for (d, part) in MultiDer::Bivector(diff).graded_parts(w) {
            let part = part.as_vec3().cloned().expect("bivector");
            let mut sys: ColumnSystem<Key> = ColumnSystem::new();
            let unknowns = MultiDer::graded_basis(1, d - ctx.shift(), w);
            for &(i, m) in &unknowns {
                let e = MultiDer::basis_element(1, i, m);
                let image = q.project(delta1(&e, ctx).as_vec3().expect("bivector"));
                let mut col = keyed(&image);
                // tangency: e(phi) must vanish modulo phi
                let along = q.normal_form(&e.as_vec3().expect("vector").dot(ctx.grad_phi()));
                col.extend(along.terms().map(|(m, c)| ((3, *m), c.clone())));
                sys.push_column(col);
            }
            let here: Vec<usize> = classes
                .iter()
                .filter(|(_, c)| {
                    MultiDer::Bivector(c.clone()).weight(w).ok().flatten() == Some(d)
                })
                .map(|(j, _)| *j)
                .collect();
            for &j in &here {
                sys.push_column(keyed(&q.class(j)));
            }
            let x = sys.solve(keyed(&part)).ok_or_else(|| {
                Error::Unsupported(format!(
                    "order {n}: term is not a class plus a tangent coboundary"
                ))
            })?;
            let mut parts = vec![Poly::zero(3); 3];
            for (k, &(i, m)) in unknowns.iter().enumerate() {
                if !x[k].is_zero() {
                    parts[i].add_term(m, x[k].clone());
                }
            }
            eta += &MultiDer::zero(1).with_parts(parts);
            for (k, &j) in here.iter().enumerate() {
                let a = &x[unknowns.len() + k];
                if !a.is_zero() {
                    table.set(n, j, a.clone());
                }
            }
        }
        xi.set(n, -&eta);
    }
    let rebuilt = surface_gauge(&xi, &build_surface_deformation(&table, n_max, q)?)?;
    if rebuilt != *pi {
        return Err(Error::Unsupported("gauge does not reproduce the input".into()));
    }
    Ok((table, xi))
}

/// `exp(ad_xi)` applied to a surface deformation, reduced.
pub fn surface_gauge(xi: &GaugeElement, pi: &SurfaceDeformation) -> Result<SurfaceDeformation> {
    let lifted = gauge_exp(xi, &pi.lift())?;
    let terms = lifted
        .terms()
        .iter()
        .map(|t| t.as_vec3().cloned().expect("bivector"))
        .collect();
    Ok(SurfaceDeformation::new(pi.q.clone(), terms))
}
