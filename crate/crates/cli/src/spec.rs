//! Problem files and their conversion to core types.
//!
//! Rationals and polynomials travel as strings so that values stay exact.

use std::str::FromStr;
use std::sync::Arc;

use poisson_deform_core::cohomology::PhiContext;
use poisson_deform_core::deformation::{CoeffTable, FormalDeformation, GaugeElement};
use poisson_deform_core::multivector::{MultiDer, Vec3};
use poisson_deform_core::poly::{parse_poly, Poly, Rational, WeightSystem};
use poisson_deform_core::surface::{QuotientCtx, SurfaceCoeffTable, SurfaceDeformation};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping intermediate weighted degrees.
pub const MAX_DEGREE_VAR: &str = "POISSON_DEFORM_MAX_DEGREE";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub weights: Vec<u32>,
    pub phi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_power_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<TableJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<AlphaEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<Vec<GaugeEntry>>,
    /// Bivector coefficients `pi_1, ..., pi_N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface_deformation: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<MultiDerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<MultiDerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<MultiDerJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(default)]
    pub c: Vec<CEntry>,
    #[serde(default)]
    pub cbar: Vec<CbarEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CEntry {
    pub k: usize,
    pub l: usize,
    pub i: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CbarEntry {
    pub k: usize,
    pub r: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub n: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeEntry {
    pub order: usize,
    pub vector: [String; 3],
}

/// A k-derivation: one part for functions and trivectors, three otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiDerJson {
    pub degree: usize,
    pub parts: Vec<String>,
}

pub fn rational(text: &str) -> CliResult<Rational> {
    Rational::from_str(text.trim()).map_err(|_| CliError::Input(format!("not a rational number: {text:?}")))
}

pub fn poly3(text: &str) -> CliResult<Poly> {
    Ok(parse_poly(text, 3)?)
}

pub fn vec3_json(v: &Vec3) -> [String; 3] {
    [v.0[0].to_string(), v.0[1].to_string(), v.0[2].to_string()]
}

fn vec3(parts: &[String; 3]) -> CliResult<Vec3> {
    Ok(Vec3::new(poly3(&parts[0])?, poly3(&parts[1])?, poly3(&parts[2])?))
}

impl MultiDerJson {
    pub fn from_multider(m: &MultiDer) -> Self {
        MultiDerJson {
            degree: m.degree(),
            parts: m.parts().iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_multider(&self) -> CliResult<MultiDer> {
        let width = match self.degree {
            0 | 3 => 1,
            1 | 2 => 3,
            d => return Err(CliError::Input(format!("multiderivation degree {d} is not in 0..=3"))),
        };
        if self.parts.len() != width {
            return Err(CliError::Input(format!(
                "degree {} needs {width} parts, found {}",
                self.degree,
                self.parts.len()
            )));
        }
        let parts = self.parts.iter().map(|s| poly3(s)).collect::<CliResult<Vec<_>>>()?;
        Ok(MultiDer::zero(self.degree).with_parts(parts))
    }
}

impl TableJson {
    pub fn from_table(t: &CoeffTable) -> Self {
        TableJson {
            c: t
                .c_entries()
                .map(|(&(k, l, i), v)| CEntry { k, l, i, value: v.to_string() })
                .collect(),
            cbar: t
                .cbar_entries()
                .map(|(&(k, r), v)| CbarEntry { k, r, value: v.to_string() })
                .collect(),
        }
    }

    pub fn to_table(&self) -> CliResult<CoeffTable> {
        let mut t = CoeffTable::default();
        for e in &self.c {
            let v = rational(&e.value)?;
            let cur = t.c(e.k, e.l, e.i);
            t.set_c(e.k, e.l, e.i, cur + v);
        }
        for e in &self.cbar {
            let v = rational(&e.value)?;
            let cur = t.cbar(e.k, e.r);
            t.set_cbar(e.k, e.r, cur + v);
        }
        Ok(t)
    }
}

pub fn alpha_json(t: &SurfaceCoeffTable) -> Vec<AlphaEntry> {
    t.entries()
        .map(|(&(n, j), v)| AlphaEntry { n, j, value: v.to_string() })
        .collect()
}

pub fn gauge_json(xi: &GaugeElement) -> Vec<GaugeEntry> {
    xi.terms()
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_zero())
        .map(|(k, t)| GaugeEntry {
            order: k + 1,
            vector: vec3_json(t.as_vec3().expect("derivation")),
        })
        .collect()
}

pub fn deformation_json(pi: &FormalDeformation) -> Vec<[String; 3]> {
    pi.terms()
        .iter()
        .map(|t| vec3_json(t.as_vec3().expect("bivector")))
        .collect()
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let spec: ProblemSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> CliResult<()> {
        if let Some(v) = self.schema_version {
            if v != SCHEMA_VERSION {
                return Err(CliError::Input(format!("unsupported schema_version {v}")));
            }
        }
        if !(2..=3).contains(&self.weights.len()) {
            return Err(CliError::Input("weights must list 2 or 3 positive integers".into()));
        }
        self.weight_system()?;
        self.phi_poly()?;
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_system(&self) -> CliResult<WeightSystem> {
        Ok(WeightSystem::new(&self.weights)?)
    }

    pub fn phi_poly(&self) -> CliResult<Poly> {
        Ok(parse_poly(&self.phi, self.arity())?)
    }

    fn require_space(&self) -> CliResult<()> {
        if self.arity() != 3 {
            return Err(CliError::Input("this command needs three weights".into()));
        }
        Ok(())
    }

    pub fn context(&self) -> CliResult<Arc<PhiContext>> {
        self.require_space()?;
        let ctx = PhiContext::new(self.phi_poly()?, self.weight_system()?)?;
        let cap = match std::env::var(MAX_DEGREE_VAR) {
            Ok(v) => Some(v.trim().parse::<i64>().map_err(|_| {
                CliError::Input(format!("{MAX_DEGREE_VAR} must be an integer, found {v:?}"))
            })?),
            Err(_) => None,
        };
        Ok(Arc::new(ctx.with_max_degree(cap)))
    }

    pub fn quotient(&self) -> CliResult<Arc<QuotientCtx>> {
        Ok(Arc::new(QuotientCtx::new(self.context()?)))
    }

    pub fn order(&self) -> CliResult<usize> {
        self.order
            .or_else(|| self.deformation.as_ref().map(Vec::len))
            .or_else(|| self.surface_deformation.as_ref().map(Vec::len))
            .ok_or_else(|| CliError::Input("truncation order missing (use \"order\" or --order)".into()))
    }

    pub fn table(&self) -> CliResult<CoeffTable> {
        self.coefficients.as_ref().map_or(Ok(CoeffTable::default()), TableJson::to_table)
    }

    pub fn alpha_table(&self) -> CliResult<SurfaceCoeffTable> {
        let mut t = SurfaceCoeffTable::default();
        for e in self.alpha.iter().flatten() {
            let v = rational(&e.value)?;
            let cur = t.get(e.n, e.j);
            t.set(e.n, e.j, cur + v);
        }
        Ok(t)
    }

    /// Gauge element of length `order`; entries beyond it are rejected.
    pub fn gauge_element(&self, order: usize) -> CliResult<GaugeElement> {
        let mut terms = vec![MultiDer::zero(1); order];
        for e in self.gauge.iter().flatten() {
            if e.order == 0 || e.order > order {
                return Err(CliError::Input(format!("gauge order {} is not in 1..={order}", e.order)));
            }
            terms[e.order - 1] = &terms[e.order - 1] + &MultiDer::Vector(vec3(&e.vector)?);
        }
        Ok(GaugeElement::new(terms)?)
    }

    /// The explicit deformation if one is given, otherwise the canonical
    /// family from the coefficient table, followed by the gauge if any.
    pub fn deformation(&self, ctx: &Arc<PhiContext>) -> CliResult<FormalDeformation> {
        let order = self.order()?;
        let pi = match &self.deformation {
            Some(terms) => {
                if terms.len() != order {
                    return Err(CliError::Input(format!(
                        "deformation has {} terms but order is {order}",
                        terms.len()
                    )));
                }
                let terms = terms
                    .iter()
                    .map(|t| Ok(MultiDer::Bivector(vec3(t)?)))
                    .collect::<CliResult<Vec<_>>>()?;
                FormalDeformation::new(ctx.clone(), terms)?
            }
            None => poisson_deform_core::deformation::build_pi(&self.table()?, order, ctx)?,
        };
        if self.gauge.is_some() {
            let xi = self.gauge_element(order)?;
            return Ok(poisson_deform_core::deformation::gauge_exp(&xi, &pi)?);
        }
        Ok(pi)
    }

    pub fn surface_deformation(&self, q: &Arc<QuotientCtx>) -> CliResult<SurfaceDeformation> {
        let order = self.order()?;
        match &self.surface_deformation {
            Some(terms) => {
                let terms = terms.iter().map(vec3).collect::<CliResult<Vec<_>>>()?;
                Ok(SurfaceDeformation::new(q.clone(), terms))
            }
            None => Ok(poisson_deform_core::surface::build_surface_deformation(
                &self.alpha_table()?,
                order,
                q,
            )?),
        }
    }
}
