//! JSON encoding of rationals, polynomials, functionals and reports.
//!
//! Rationals are strings `"n/d"` in lowest terms (`"n"` for integers) and a
//! polynomial is the array of its coefficients by ascending degree. Objects are
//! `serde_json::Value` maps, whose keys are kept sorted, so output is canonical.

use serde_json::{json, Map, Value};

use crate::checks::{Report, Violation};
use crate::error::{Error, Result};
use crate::functional::{Generator, MomentFunctional};
use crate::poly::Polynomial;
use crate::scalar::{format_rational, parse_rational, Rational};

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(value: &Value, location: &str) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s).map_err(|e| e.at(location)),
        other => Err(Error::parse(location, format!("expected a rational string, found {other}"))),
    }
}

pub fn rationals_to_json(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational_to_json).collect())
}

pub fn rationals_from_json(value: &Value, location: &str) -> Result<Vec<Rational>> {
    array(value, location)?
        .iter()
        .enumerate()
        .map(|(i, v)| rational_from_json(v, &format!("{location}[{i}]")))
        .collect()
}

pub fn poly_to_json(p: &Polynomial<Rational>) -> Value {
    rationals_to_json(p.coeffs())
}

/// Trailing zeros are accepted and trimmed.
pub fn poly_from_json(value: &Value, location: &str) -> Result<Polynomial<Rational>> {
    Ok(Polynomial::new(rationals_from_json(value, location)?))
}

pub fn polys_to_json(family: &[Polynomial<Rational>]) -> Value {
    Value::Array(family.iter().map(poly_to_json).collect())
}

pub fn polys_from_json(value: &Value, location: &str) -> Result<Vec<Polynomial<Rational>>> {
    array(value, location)?
        .iter()
        .enumerate()
        .map(|(i, v)| poly_from_json(v, &format!("{location}[{i}]")))
        .collect()
}

pub fn generator_to_json(generator: &Generator) -> Value {
    match generator {
        Generator::Stored => json!("stored"),
        Generator::Named { rule, params } => {
            let params: Map<String, Value> = params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            json!({ "rule": rule, "params": params })
        }
        Generator::Derived(how) => json!({ "derived": how }),
    }
}

pub fn generator_from_json(value: &Value, location: &str) -> Result<Generator> {
    match value {
        Value::String(s) if s == "stored" => Ok(Generator::Stored),
        Value::Object(map) if map.contains_key("derived") => match &map["derived"] {
            Value::String(s) => Ok(Generator::Derived(s.clone())),
            _ => Err(Error::parse(format!("{location}.derived"), "expected a string")),
        },
        Value::Object(map) => {
            let rule = match map.get("rule") {
                Some(Value::String(s)) => s.clone(),
                _ => return Err(Error::parse(format!("{location}.rule"), "expected a string")),
            };
            let params = match map.get("params") {
                Some(Value::Object(p)) => p
                    .iter()
                    .map(|(k, v)| match v {
                        Value::String(s) => Ok((k.clone(), s.clone())),
                        _ => Err(Error::parse(format!("{location}.params.{k}"), "expected a string")),
                    })
                    .collect::<Result<_>>()?,
                None => Vec::new(),
                Some(_) => return Err(Error::parse(format!("{location}.params"), "expected an object")),
            };
            Ok(Generator::Named { rule, params })
        }
        _ => Err(Error::parse(location, "expected \"stored\" or a generator object")),
    }
}

/// `{"moments": [...], "generator": ...}` with the first `count` moments.
pub fn functional_to_json(u: &MomentFunctional<Rational>, count: usize) -> Result<Value> {
    Ok(json!({
        "moments": rationals_to_json(&u.moments(count)?),
        "generator": generator_to_json(u.generator()),
    }))
}

/// Reads a stored prefix; the generator tag is kept for re-serialisation.
pub fn functional_from_json(value: &Value, location: &str) -> Result<MomentFunctional<Rational>> {
    let map = object(value, location)?;
    let moments = rationals_from_json(field(map, "moments", location)?, &format!("{location}.moments"))?;
    let generator = match map.get("generator") {
        Some(g) => generator_from_json(g, &format!("{location}.generator"))?,
        None => Generator::Stored,
    };
    Ok(MomentFunctional::tabulated(moments, generator))
}

pub fn report_to_json(report: &Report<Rational>) -> Value {
    Value::Array(
        report
            .iter()
            .map(|v| json!({ "indices": v.indices, "value": rational_to_json(&v.value) }))
            .collect(),
    )
}

pub fn report_from_json(value: &Value, location: &str) -> Result<Report<Rational>> {
    array(value, location)?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let loc = format!("{location}[{i}]");
            let map = object(v, &loc)?;
            let indices = array(field(map, "indices", &loc)?, &format!("{loc}.indices"))?
                .iter()
                .map(|n| {
                    n.as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| Error::parse(format!("{loc}.indices"), "expected natural numbers"))
                })
                .collect::<Result<_>>()?;
            let value = rational_from_json(field(map, "value", &loc)?, &format!("{loc}.value"))?;
            Ok(Violation { indices, value })
        })
        .collect()
}

pub(crate) fn array<'a>(value: &'a Value, location: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::parse(location, "expected an array"))
}

pub(crate) fn object<'a>(value: &'a Value, location: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::parse(location, "expected an object"))
}

pub(crate) fn field<'a>(map: &'a Map<String, Value>, key: &str, location: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::parse(location, format!("missing field {key:?}")))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialise");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn rationals_are_canonical_strings() {
        assert_eq!(rational_to_json(&ratio(2, -4)), json!("-1/2"));
        assert_eq!(rational_to_json(&int(3)), json!("3"));
        assert_eq!(rational_from_json(&json!("6/4"), "x").unwrap(), ratio(3, 2));
        let err = rational_from_json(&json!(1.5), "P[2][0]").unwrap_err();
        assert!(matches!(err, Error::Parse { location, .. } if location == "P[2][0]"));
        let err = rational_from_json(&json!("1/0"), "tau").unwrap_err();
        assert!(matches!(err, Error::Parse { location, .. } if location == "tau"));
    }

    #[test]
    fn polynomial_round_trip() {
        let p = Polynomial::new(vec![ratio(-5, 8), int(1)]);
        let v = poly_to_json(&p);
        assert_eq!(v, json!(["-5/8", "1"]));
        assert_eq!(poly_from_json(&v, "p").unwrap(), p);
        assert_eq!(poly_from_json(&json!(["1", "0"]), "p").unwrap(), Polynomial::one());
    }

    #[test]
    fn functional_round_trip() {
        let u = MomentFunctional::tabulated(
            vec![int(1), ratio(1, 2)],
            Generator::Named {
                rule: "r".into(),
                params: vec![("a".into(), "1/2".into())],
            },
        );
        let v = functional_to_json(&u, 2).unwrap();
        let text = to_canonical_string(&v);
        let back = functional_from_json(&parse_document(&text).unwrap(), "u").unwrap();
        assert_eq!(to_canonical_string(&functional_to_json(&back, 2).unwrap()), text);
        assert!(functional_to_json(&u, 3).is_err());
        let stored = functional_from_json(&json!({"moments": ["1"]}), "u").unwrap();
        assert_eq!(functional_to_json(&stored, 1).unwrap()["generator"], json!("stored"));
    }

    #[test]
    fn report_round_trip() {
        let report = vec![Violation { indices: vec![0, 3], value: ratio(-1, 3) }];
        let v = report_to_json(&report);
        assert_eq!(v, json!([{ "indices": [0, 3], "value": "-1/3" }]));
        assert_eq!(report_from_json(&v, "r").unwrap(), report);
    }

    #[test]
    fn malformed_documents_locate_errors() {
        let err = functional_from_json(&json!({"moments": ["1", "x"]}), "u").unwrap_err();
        assert!(matches!(err, Error::Parse { location, .. } if location == "u.moments[1]"));
        assert!(matches!(parse_document("{"), Err(Error::Parse { .. })));
    }
}
