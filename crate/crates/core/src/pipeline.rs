//! The end-to-end construction on a concrete input family, its JSON document,
//! and the replay of its checks from a document.
//!
//! Inputs with a moment rule are the shifted Jacobi and shifted Laguerre
//! families. `big-m1-jacobi` runs the Jacobi input at `tau = 1` followed by the
//! Geronimus step at `-lambda`; `m1-meixner-pollaczek` runs the Laguerre input
//! at `tau = gamma`.

use serde_json::{json, Map, Value};

use crate::checks::{
    annihilation_check, gram_check, pearson_check, recurrence_check, PearsonPair, Report,
};
use crate::error::{Error, Result};
use crate::families::{big_jacobi_coefficients, family_moments, FamilyKind, FamilyParams, MomentKind};
use crate::functional::MomentFunctional;
use crate::io::{
    array, field, functional_from_json, object, poly_from_json, polys_from_json, polys_to_json, poly_to_json,
    rational_from_json, rational_to_json, rationals_from_json, rationals_to_json, report_to_json,
};
use crate::pearson::{pearson_find, MIN_ORDER};
use crate::poly::Polynomial;
use crate::scalar::{int, Rational};
use crate::transforms::{alternating_pullback, geronimus_functional, geronimus_step, AlternatingFamily, MassSeed};

type QPoly = Polynomial<Rational>;

/// Smallest moment order the pipeline document certifies a Pearson pair to.
pub const PEARSON_ORDER: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub family: FamilyParams,
    pub tau: Option<Rational>,
    pub depth: usize,
}

/// Outcome of a Pearson search plus the check of the pair it found.
#[derive(Clone, Debug, PartialEq)]
pub struct PearsonOutcome {
    pub order: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub pair: Option<PearsonPair<Rational>>,
    pub residuals: Report<Rational>,
}

impl PearsonOutcome {
    pub fn run(u: &MomentFunctional<Rational>, order: usize) -> Result<Self> {
        let search = pearson_find(u, order)?;
        let residuals = match &search.pair {
            Some(pair) => pearson_check(u, pair, order)?,
            None => Vec::new(),
        };
        Ok(PearsonOutcome {
            order,
            rank: search.rank,
            kernel_dim: search.kernel_dim,
            pair: search.pair,
            residuals,
        })
    }

    pub fn to_json(&self) -> Value {
        let pair = match &self.pair {
            Some(p) => json!({ "phi": poly_to_json(p.phi()), "psi": poly_to_json(p.psi()) }),
            None => Value::Null,
        };
        json!({
            "order": self.order,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "pair": pair,
            "residuals": report_to_json(&self.residuals),
        })
    }
}

/// Geronimus part of a run.
#[derive(Clone, Debug)]
pub struct GeronimusPart {
    pub point: Rational,
    pub family: Vec<QPoly>,
    pub functional: MomentFunctional<Rational>,
}

/// Named check reports in document order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckSet {
    pub reports: Vec<(String, Report<Rational>)>,
    pub pearson: Vec<(String, PearsonOutcome)>,
}

impl CheckSet {
    fn push(&mut self, name: &str, report: Report<Rational>) {
        self.reports.push((name.to_string(), report));
    }

    /// Total number of recorded violations; zero means every identity held.
    pub fn violations(&self) -> usize {
        self.reports.iter().map(|(_, r)| r.len()).sum::<usize>()
            + self.pearson.iter().map(|(_, p)| p.residuals.len()).sum::<usize>()
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (name, report) in &self.reports {
            map.insert(name.clone(), report_to_json(report));
        }
        for (name, outcome) in &self.pearson {
            map.insert(name.clone(), outcome.to_json());
        }
        Value::Object(map)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub config: PipelineConfig,
    pub input: MomentFunctional<Rational>,
    pub alternating: AlternatingFamily<Rational>,
    pub geronimus: Option<GeronimusPart>,
    /// Number of stored moments of `u` (and of the Geronimus functional).
    pub moment_count: usize,
    pub checks: CheckSet,
}

/// Moments of `u` needed for the Gram check of `P_0..=P_top`, annihilation,
/// and the Pearson search to `order` (which reads up to index `order + 1`).
fn moment_count(top: usize, order: usize) -> usize {
    (2 * top + 1).max(order + 2)
}

fn fixed_tau(kind: FamilyKind, given: &Option<Rational>, forced: Rational) -> Result<Rational> {
    match given {
        Some(t) if *t != forced => Err(Error::InvalidArgument(format!(
            "{kind} fixes tau = {forced}, got {t}"
        ))),
        _ => Ok(forced),
    }
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineRun> {
    let n = config.depth;
    let top = 2 * n + 1;
    let order = PEARSON_ORDER.max(2 * top).max(MIN_ORDER);
    let count = moment_count(top, order);
    let v_count = (2 * n + 3).max((count - 1) / 2 + 1);

    let kind = config.family.kind();
    let (moments, tau, mass) = match &config.family {
        FamilyParams::Jacobi(_, p) => {
            let tau = match kind {
                FamilyKind::BigM1Jacobi => fixed_tau(kind, &config.tau, int(1))?,
                _ => required_tau(kind, &config.tau)?,
            };
            p.validate(if kind == FamilyKind::BigM1Jacobi { top } else { n + 1 })?;
            (MomentKind::ShiftedJacobi(p.clone()), tau, kind == FamilyKind::BigM1Jacobi)
        }
        FamilyParams::Laguerre(_, p) => {
            let tau = match kind {
                FamilyKind::M1MeixnerPollaczek => fixed_tau(kind, &config.tau, p.gamma.clone())?,
                _ => required_tau(kind, &config.tau)?,
            };
            p.validate(n + 1)?;
            (MomentKind::ShiftedLaguerre(p.clone()), tau, false)
        }
        FamilyParams::BannaiIto(..) => {
            return Err(Error::InvalidArgument(format!(
                "{kind} has no moment rule to drive the pipeline; use generate"
            )))
        }
    };

    let v = family_moments(&moments, v_count);
    let alternating = alternating_pullback(&v, &tau, n)?;
    let u = &alternating.functional;

    let mut checks = CheckSet::default();
    checks.push("gram", gram_check(u, &alternating.family, top)?);
    checks.push("annihilation", annihilation_check(u, &tau, (count - 2) / 2)?);
    checks.push("recurrence", recurrence_check(&alternating.family)?);

    let geronimus = if mass {
        let FamilyParams::Jacobi(_, p) = &config.family else {
            unreachable!("only the Jacobi input carries a Geronimus step")
        };
        let coeffs = big_jacobi_coefficients(p, top)?;
        let family = geronimus_step(&alternating.family, &coeffs)?;
        let b = geronimus_functional(u, &coeffs.point, MassSeed::Auto(family[1].clone()))?;
        checks.push("gram_b", gram_check(&b, &family, top)?);
        checks.push("recurrence_b", recurrence_check(&family)?);
        Some(GeronimusPart {
            point: coeffs.point,
            family,
            functional: b,
        })
    } else {
        None
    };

    checks.pearson.push(("pearson".into(), PearsonOutcome::run(u, order)?));
    if let Some(g) = &geronimus {
        checks.pearson.push(("pearson_b".into(), PearsonOutcome::run(&g.functional, order)?));
    }

    Ok(PipelineRun {
        config: config.clone(),
        input: v,
        alternating,
        geronimus,
        moment_count: count,
        checks,
    })
}

fn required_tau(kind: FamilyKind, tau: &Option<Rational>) -> Result<Rational> {
    tau.clone()
        .ok_or_else(|| Error::InvalidArgument(format!("{kind} needs an explicit tau")))
}

impl PipelineRun {
    pub fn to_json(&self) -> Result<Value> {
        let params: Map<String, Value> = self
            .config
            .family
            .to_map()
            .into_iter()
            .map(|(k, v)| (k, Value::String(v)))
            .collect();
        let mut doc = json!({
            "family": self.config.family.kind().id(),
            "params": params,
            "depth": self.config.depth,
            "tau": rational_to_json(&self.alternating.tau),
            "u_moments": rationals_to_json(&self.alternating.functional.moments(self.moment_count)?),
            "P": polys_to_json(&self.alternating.family),
            "checks": self.checks.to_json(),
        });
        if let Some(g) = &self.geronimus {
            let map = doc.as_object_mut().expect("document is an object");
            map.insert("B".into(), polys_to_json(&g.family));
            map.insert("b_moments".into(), rationals_to_json(&g.functional.moments(self.moment_count)?));
            map.insert("mass_point".into(), rational_to_json(&g.point));
        }
        Ok(doc)
    }
}

/// Replays the checks of a document holding `u_moments` (or a functional under
/// `moments`), the family `P`, and optionally `tau`, `B` with `b_moments`, and a
/// Pearson pair under `checks.pearson.pair`.
pub fn verify_document(doc: &Value) -> Result<CheckSet> {
    let map = object(doc, "$")?;
    let u = if let Some(m) = map.get("u_moments") {
        MomentFunctional::from_moments(rationals_from_json(m, "u_moments")?)
    } else {
        functional_from_json(doc, "$")?
    };
    let count = u.available().unwrap_or(0);
    let mut checks = CheckSet::default();

    if let Some(p) = map.get("P") {
        let family = polys_from_json(p, "P")?;
        if !family.is_empty() {
            checks.push("gram", gram_check(&u, &family, family.len() - 1)?);
            checks.push("recurrence", recurrence_check(&family)?);
        }
    }
    if let Some(t) = map.get("tau") {
        let tau = rational_from_json(t, "tau")?;
        if count >= 2 {
            checks.push("annihilation", annihilation_check(&u, &tau, (count - 2) / 2)?);
        }
    }
    if let Some(b) = map.get("B") {
        let family = polys_from_json(b, "B")?;
        let moments = rationals_from_json(field(map, "b_moments", "$")?, "b_moments")?;
        let w = MomentFunctional::from_moments(moments);
        if !family.is_empty() {
            checks.push("gram_b", gram_check(&w, &family, family.len() - 1)?);
            checks.push("recurrence_b", recurrence_check(&family)?);
        }
    }
    if let Some(Value::Object(c)) = map.get("checks") {
        if let Some(p) = c.get("pearson") {
            if let Some(outcome) = replay_pearson(&u, p, "checks.pearson")? {
                checks.pearson.push(("pearson".into(), outcome));
            }
        }
    }
    Ok(checks)
}

fn replay_pearson(u: &MomentFunctional<Rational>, value: &Value, location: &str) -> Result<Option<PearsonOutcome>> {
    let map = object(value, location)?;
    let pair = match map.get("pair") {
        None | Some(Value::Null) => return Ok(None),
        Some(p) => p,
    };
    let loc = format!("{location}.pair");
    let pm = object(pair, &loc)?;
    let phi = poly_from_json(field(pm, "phi", &loc)?, &format!("{loc}.phi"))?;
    let psi = poly_from_json(field(pm, "psi", &loc)?, &format!("{loc}.psi"))?;
    let pair = PearsonPair::new(phi, psi).map_err(|e| Error::parse(&loc, e.to_string()))?;
    let order = field(map, "order", location)?
        .as_u64()
        .ok_or_else(|| Error::parse(format!("{location}.order"), "expected a natural number"))? as usize;
    let residuals = pearson_check(u, &pair, order)?;
    let (rank, kernel_dim) = (count_field(map, "rank"), count_field(map, "kernel_dim"));
    Ok(Some(PearsonOutcome {
        order,
        rank,
        kernel_dim,
        pair: Some(pair),
        residuals,
    }))
}

fn count_field(map: &Map<String, Value>, key: &str) -> usize {
    map.get(key).and_then(Value::as_u64).unwrap_or(0) as usize
}

/// Reads the polynomial rows of a document's family `key`, for tools that only need coefficients.
pub fn document_family(doc: &Value, key: &str) -> Result<Vec<QPoly>> {
    let map = object(doc, "$")?;
    let rows = array(field(map, key, "$")?, key)?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| poly_from_json(r, &format!("{key}[{i}]")))
        .collect()
}
