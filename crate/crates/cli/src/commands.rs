//! One function per subcommand, each returning the JSON payload.

use std::sync::Arc;

use poisson_deform_core::cohomology::{self, h1_is_zero, h2_basis, PhiContext};
use poisson_deform_core::deformation::{self as deform, Convention, ExponentBase};
use poisson_deform_core::multivector::{schouten, MultiDer};
use poisson_deform_core::poly::{Poly, WeightSystem};
use poisson_deform_core::surface::{self, RigidityVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::spec::*;

pub type Payload = Map<String, Value>;

/// Command-line values that override the problem file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<usize>,
    pub phi_power_bound: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, spec: &ProblemSpec) -> ProblemSpec {
        let mut s = spec.clone();
        if self.order.is_some() {
            s.order = self.order;
        }
        if self.phi_power_bound.is_some() {
            s.phi_power_bound = self.phi_power_bound;
        }
        if self.seed.is_some() {
            s.seed = self.seed;
        }
        s
    }
}

pub const COMMANDS: &[&str] = &[
    "milnor",
    "h2",
    "schouten",
    "delta",
    "deform build",
    "deform verify",
    "deform gauge",
    "deform normalize",
    "deform extend",
    "deform casimir",
    "deform euler-gauge",
    "surface h2",
    "surface deform",
    "surface verify",
    "surface normalize",
    "surface rigidity",
    "plane h2dim",
    "check",
];

fn obj(v: Value) -> Payload {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("payloads are objects"),
    }
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

/// Summary of `phi` attached to every 3-variable result.
pub fn context_summary(ctx: &PhiContext) -> Value {
    let m = ctx.milnor();
    json!({
        "phi": ctx.phi().to_string(),
        "weights": ctx.weights().weights(),
        "mu": m.mu,
        "phi_degree": ctx.degree(),
        "weight_sum": ctx.weights().weight_sum(),
        "e_phi": m.e_phi,
        "h1_is_zero": h1_is_zero(ctx),
    })
}

/// Echo of the problem so that a result can be fed to the next command.
fn echo(spec: &ProblemSpec) -> Payload {
    let mut m = Payload::new();
    m.insert("weights".into(), json!(spec.weights));
    m.insert("phi".into(), json!(spec.phi));
    m
}

pub fn run(command: &str, spec: &ProblemSpec) -> CliResult<(Option<Value>, Payload)> {
    if command == "plane h2dim" {
        return Ok((None, plane_h2dim(spec)?));
    }
    let ctx = spec.context()?;
    let summary = Some(context_summary(&ctx));
    let payload = match command {
        "milnor" => milnor(&ctx),
        "h2" => h2(spec, &ctx)?,
        "schouten" => schouten_cmd(spec)?,
        "delta" => delta(spec, &ctx)?,
        "deform build" => deform_build(spec, &ctx)?,
        "deform verify" => deform_verify(spec, &ctx)?,
        "deform gauge" => deform_gauge(spec, &ctx)?,
        "deform normalize" => deform_normalize(spec, &ctx)?,
        "deform extend" => deform_extend(spec, &ctx)?,
        "deform casimir" => deform_casimir(spec, &ctx)?,
        "deform euler-gauge" => deform_euler_gauge(spec, &ctx)?,
        "surface h2" => surface_h2(spec)?,
        "surface deform" => surface_deform(spec)?,
        "surface verify" => surface_verify(spec)?,
        "surface normalize" => surface_normalize(spec)?,
        "surface rigidity" => surface_rigidity(spec)?,
        "check" => check(spec, &ctx)?,
        other => return Err(CliError::Input(format!("unknown command {other:?}"))),
    };
    Ok((summary, payload))
}

fn milnor(ctx: &PhiContext) -> Payload {
    let m = ctx.milnor();
    obj(json!({
        "mu": m.mu,
        "basis": (0..m.mu).map(|j| m.u(j).to_string()).collect::<Vec<_>>(),
        "degrees": m.degrees,
        "e_phi": m.e_phi,
        "groebner_basis": strings(&m.groebner_basis),
    }))
}

fn h2(spec: &ProblemSpec, ctx: &PhiContext) -> CliResult<Payload> {
    let bound = spec.phi_power_bound.unwrap_or(1);
    let basis = h2_basis(ctx, bound)?;
    let classes: Vec<Value> = basis
        .iter()
        .map(|b| {
            json!({
                "class": b.kind.to_string(),
                "weight": b.kind.weight(ctx),
                "bivector": vec3_json(b.realized.as_vec3().expect("bivector")),
            })
        })
        .collect();
    Ok(obj(json!({
        "phi_power_bound": bound,
        "dimension": classes.len(),
        "classes": classes,
        "h1_is_zero": h1_is_zero(ctx),
    })))
}

fn multider_field(m: &Option<MultiDerJson>, name: &str) -> CliResult<MultiDer> {
    m.as_ref()
        .ok_or_else(|| CliError::Input(format!("field {name:?} is required")))?
        .to_multider()
}

fn schouten_cmd(spec: &ProblemSpec) -> CliResult<Payload> {
    let p = multider_field(&spec.p, "p")?;
    let q = multider_field(&spec.q, "q")?;
    let r = schouten(&p, &q)?;
    Ok(obj(json!({ "result": MultiDerJson::from_multider(&r) })))
}

fn delta(spec: &ProblemSpec, ctx: &PhiContext) -> CliResult<Payload> {
    let m = multider_field(&spec.input, "input")?;
    if m.degree() > 2 {
        return Err(CliError::Input("the coboundary is defined on degrees 0, 1 and 2".into()));
    }
    let r = cohomology::delta(&m, ctx);
    Ok(obj(json!({ "result": MultiDerJson::from_multider(&r) })))
}

fn deformation_payload(spec: &ProblemSpec, pi: &deform::FormalDeformation) -> Payload {
    let mut out = echo(spec);
    out.insert("order".into(), json!(pi.order()));
    if let Some(t) = pi.provenance() {
        out.insert("coefficients".into(), json!(TableJson::from_table(t)));
    }
    out.insert("deformation".into(), json!(deformation_json(pi)));
    out
}

fn deform_build(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let pi = deform::build_pi(&spec.table()?, spec.order()?, ctx)?;
    Ok(deformation_payload(spec, &pi))
}

fn deform_verify(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let pi = spec.deformation(ctx)?;
    let v = deform::verify(&pi)?;
    let defects: Vec<String> = v
        .defects
        .iter()
        .map(|d| d.as_poly().map_or_else(|| d.to_string(), Poly::to_string))
        .collect();
    Ok(obj(json!({
        "valid": v.is_valid(),
        "defects": defects,
        "first_failure": v.first_failure(),
    })))
}

fn deform_gauge(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    if spec.gauge.is_none() {
        return Err(CliError::Input("field \"gauge\" is required".into()));
    }
    let pi = spec.deformation(ctx)?;
    let mut out = echo(spec);
    out.insert("order".into(), json!(pi.order()));
    out.insert("deformation".into(), json!(deformation_json(&pi)));
    Ok(out)
}

fn deform_normalize(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let pi = spec.deformation(ctx)?;
    let (table, xi) = match spec.phi_power_bound {
        Some(b) => deform::normalize(&pi, b)?,
        None => deform::normalize_auto(&pi)?,
    };
    let mut out = echo(spec);
    out.insert("order".into(), json!(pi.order()));
    out.insert("coefficients".into(), json!(TableJson::from_table(&table)));
    out.insert("gauge".into(), json!(gauge_json(&xi)));
    Ok(out)
}

fn deform_extend(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let pi = deform::extend_order(&spec.deformation(ctx)?)?;
    let mut out = echo(spec);
    out.insert("order".into(), json!(pi.order()));
    out.insert("deformation".into(), json!(deformation_json(&pi)));
    Ok(out)
}

fn deform_casimir(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let order = spec.order()?;
    let table = spec.table()?;
    let pair = deform::casimir_pair(&table, order, ctx)?;
    let pi = deform::build_pi(&table, order, ctx)?;
    Ok(obj(json!({
        "chi": strings(&pair.chi),
        "casimir": strings(&pair.phinu),
        "verified": deform::verify_casimir(&pair, &pi),
        "identity_holds": deform::casimir_identity_holds(&pair, order),
    })))
}

fn deform_euler_gauge(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let order = spec.order()?;
    let w = deform::weighted_gauge_closed_form(&spec.table()?, order, ctx)?;
    let candidates: Vec<Value> = w
        .candidates
        .iter()
        .map(|c| {
            json!({
                "convention": match c.convention {
                    Convention::FromZero => "r>=0",
                    Convention::FromOne => "r>=1",
                },
                "exponent_base": match c.base {
                    ExponentBase::Weight => "weight",
                    ExponentBase::Printed => "printed",
                },
                "matches_gauge": c.matches_gauge,
                "coefficients": TableJson::from_table(&c.table),
            })
        })
        .collect();
    Ok(obj(json!({
        "fixed_point": w.fixed_point,
        "candidates": candidates,
        "deformation": deformation_json(&w.direct),
    })))
}

fn surface_h2(spec: &ProblemSpec) -> CliResult<Payload> {
    let q = spec.quotient()?;
    let m = q.ctx().milnor();
    let basis: Vec<Value> = surface::h2_surface_basis(&q)
        .iter()
        .map(|(j, v)| json!({ "j": j, "u": m.u(*j).to_string(), "class": vec3_json(v) }))
        .collect();
    Ok(obj(json!({ "dimension": basis.len(), "basis": basis })))
}

fn surface_payload(spec: &ProblemSpec, pi: &surface::SurfaceDeformation) -> Payload {
    let mut out = echo(spec);
    out.insert("order".into(), json!(pi.order()));
    let terms: Vec<[String; 3]> = pi.terms().iter().map(vec3_json).collect();
    out.insert("surface_deformation".into(), json!(terms));
    out
}

fn surface_deform(spec: &ProblemSpec) -> CliResult<Payload> {
    let q = spec.quotient()?;
    let pi = surface::build_surface_deformation(&spec.alpha_table()?, spec.order()?, &q)?;
    let mut out = surface_payload(spec, &pi);
    out.insert("alpha".into(), json!(alpha_json(&spec.alpha_table()?)));
    Ok(out)
}

fn surface_verify(spec: &ProblemSpec) -> CliResult<Payload> {
    let q = spec.quotient()?;
    let pi = spec.surface_deformation(&q)?;
    let defects = surface::verify_surface(&pi);
    Ok(obj(json!({
        "valid": defects.iter().all(Poly::is_zero),
        "defects": strings(&defects),
    })))
}

fn surface_normalize(spec: &ProblemSpec) -> CliResult<Payload> {
    let q = spec.quotient()?;
    let pi = spec.surface_deformation(&q)?;
    let (alpha, xi) = surface::normalize_surface(&pi)?;
    Ok(obj(json!({
        "alpha": alpha_json(&alpha),
        "gauge": gauge_json(&xi),
    })))
}

fn surface_rigidity(spec: &ProblemSpec) -> CliResult<Payload> {
    let q = spec.quotient()?;
    let verdict = surface::rigidity_check(&q)?;
    let mut out = obj(json!({ "verdict": verdict.name() }));
    match verdict {
        RigidityVerdict::Rigid => {}
        RigidityVerdict::RigidViaGauge(w) => {
            out.insert(
                "witness".into(),
                json!({
                    "gauge_order": 1,
                    "xi": vec3_json(&w.xi),
                    "bracket": vec3_json(&w.bracket),
                    "holds": w.holds,
                }),
            );
        }
        RigidityVerdict::NotRigidCandidate(basis) => {
            let b: Vec<Value> = basis.iter().map(|(j, v)| json!({ "j": j, "class": vec3_json(v) })).collect();
            out.insert("basis".into(), json!(b));
        }
    }
    Ok(out)
}

fn plane_h2dim(spec: &ProblemSpec) -> CliResult<Payload> {
    if spec.arity() != 2 {
        return Err(CliError::Input("plane commands need two weights".into()));
    }
    let (first, second) = cohomology::h2_dim_plane(&spec.phi_poly()?, &spec.weight_system()?)?;
    Ok(obj(json!({ "dim_first": first, "dim_second": second, "dim_total": first + second })))
}

fn random_poly(r: &mut ChaCha8Rng, w: &WeightSystem, max_degree: i64) -> Poly {
    let mut out = Poly::zero(3);
    for _ in 0..r.gen_range(1..=3) {
        let ms = w.monomials_of_degree(r.gen_range(0..=max_degree));
        if !ms.is_empty() {
            let c = r.gen_range(-5i64..=5);
            out.add_term(ms[r.gen_range(0..ms.len())], poisson_deform_core::poly::rat(c));
        }
    }
    out
}

/// Randomized invariants for the given `phi`, reproducible from the seed.
fn check(spec: &ProblemSpec, ctx: &Arc<PhiContext>) -> CliResult<Payload> {
    let seed = spec.seed.unwrap_or(0);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let w = ctx.weights();
    let cases = 25;
    let mut d10 = 0;
    let mut d21 = 0;
    for _ in 0..cases {
        let f = random_poly(&mut r, w, 8);
        d10 += usize::from(cohomology::delta1(&cohomology::delta0(&f, ctx), ctx).is_zero());
        let v = MultiDer::zero(1).with_parts((0..3).map(|_| random_poly(&mut r, w, 8)).collect());
        d21 += usize::from(cohomology::delta2(&cohomology::delta1(&v, ctx), ctx).is_zero());
    }
    let m = ctx.milnor();
    let order = spec.order.unwrap_or(3);
    let mut valid = 0;
    let tables = 5;
    for _ in 0..tables {
        let mut t = deform::CoeffTable::default();
        for _ in 0..r.gen_range(1..=4) {
            let k = r.gen_range(1..=order.max(1));
            let value = poisson_deform_core::poly::rat(r.gen_range(1i64..=4));
            if m.mu > 1 && r.gen_bool(0.5) {
                t.set_cbar(k, r.gen_range(1..m.mu), value);
            } else if !m.e_phi.is_empty() {
                t.set_c(k, r.gen_range(0..=1), m.e_phi[r.gen_range(0..m.e_phi.len())], value);
            }
        }
        let pi = deform::build_pi(&t, order, ctx)?;
        valid += usize::from(deform::verify(&pi)?.is_valid());
    }
    let checks = vec![
        json!({ "name": "delta1 after delta0 vanishes", "cases": cases, "passed": d10 }),
        json!({ "name": "delta2 after delta1 vanishes", "cases": cases, "passed": d21 }),
        json!({ "name": "canonical deformations verify", "cases": tables, "passed": valid }),
    ];
    let all = d10 == cases && d21 == cases && valid == tables;
    Ok(obj(json!({ "seed": seed, "order": order, "checks": checks, "all_passed": all })))
}
