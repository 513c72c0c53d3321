use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use altpoly::io::{functional_from_json, poly_to_json, rationals_from_json, rationals_to_json, report_to_json, to_canonical_string};
use altpoly::{pearson_check, pearson_find, MomentFunctional, QFunctional};

use crate::{emit, outcome, read_document, Outcome};

fn functional(doc: &Value) -> Result<QFunctional> {
    Ok(match doc.get("u_moments") {
        Some(m) => MomentFunctional::from_moments(rationals_from_json(m, "u_moments")?),
        None => functional_from_json(doc, "$")?,
    })
}

/// Runs the search and checks the pair. No pair counts as a failed run.
pub(crate) fn pearson(input: &PathBuf, order: usize, out: Option<&PathBuf>) -> Result<Outcome> {
    let doc = read_document(input)?;
    let u = functional(&doc)?;
    let search = pearson_find(&u, order).with_context(|| format!("Pearson search to order {order}"))?;
    let residuals = match &search.pair {
        Some(pair) => pearson_check(&u, pair, order)?,
        None => Vec::new(),
    };
    let pair = match &search.pair {
        Some(p) => json!({ "phi": poly_to_json(p.phi()), "psi": poly_to_json(p.psi()) }),
        None => Value::Null,
    };
    let basis: Vec<Value> = search.kernel_basis.iter().map(|v| rationals_to_json(v)).collect();
    let report = json!({
        "order": order,
        "rank": search.rank,
        "kernel_dim": search.kernel_dim,
        "kernel_basis": basis,
        "degenerate": search.degenerate,
        "pair": pair,
        "residuals": report_to_json(&residuals),
    });
    emit(out, &to_canonical_string(&report))?;
    if search.pair.is_none() {
        eprintln!("no Pearson pair with deg psi = 1 (kernel dimension {})", search.kernel_dim);
        return Ok(Outcome::Violations(1));
    }
    Ok(outcome(residuals.len()))
}
