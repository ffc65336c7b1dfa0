//! JSON encoding of every public value.
//!
//! Scalars travel as strings (`"3"`, `"-1/2"`), fields as `"Q"` or
//! `{"Fp": p}`. Object keys are emitted in a fixed order so identical
//! inputs produce byte-identical output.

use serde_json::{json, Map, Value};

use crate::canon::{InvariantFactors, JordanSpec};
use crate::centralizer::SubalgebraBasis;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::frobsys::{
    Base, CheckKind, FrobeniusSystem, OracleOutcome, OracleVerdict, SearchSpace, SeparabilityProbe,
    VerificationReport,
};
use crate::matrix::Mat;
use crate::poly::Poly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses a JSON document, mapping syntax errors to [`Error::Parse`].
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

/// Compact serialization used for digests and byte-stable output.
pub fn to_compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

// ----------------------------------------------------------------- fields

pub fn field_to_json(f: FieldSpec) -> Value {
    match f.modulus() {
        None => json!("Q"),
        Some(p) => json!({ "Fp": p }),
    }
}

/// Accepts `"Q"`, `{"Fp": p}` and the shorthand strings `"GF(p)"`/`"Fp(p)"`.
pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) => parse_field_name(s),
        Value::Object(m) if m.len() == 1 && m.contains_key("Fp") => match m["Fp"].as_u64() {
            Some(p) => FieldSpec::prime(p),
            None => Err(parse_err("\"Fp\" expects a positive integer")),
        },
        _ => Err(parse_err(format!("invalid field {v}"))),
    }
}

/// `"Q"`, `"GF(p)"`, `"Fp(p)"` or a bare prime `"p"`.
pub fn parse_field_name(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::rationals());
    }
    let inner = s
        .strip_prefix("GF(")
        .or_else(|| s.strip_prefix("Fp("))
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    match inner.trim().parse::<u64>() {
        Ok(p) => FieldSpec::prime(p),
        Err(_) => Err(Error::UnsupportedField(s.to_string())),
    }
}

// ---------------------------------------------------------------- scalars

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Strings are parsed exactly; JSON integers are accepted as a convenience.
pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    let parsed = match v {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_i64(field, n.as_i64().unwrap())),
        _ => return Err(parse_err(format!("invalid scalar {v}"))),
    };
    parsed.map_err(|e| match e {
        Error::Parse(_) => e,
        other => parse_err(format!("scalar {v}: {other}")),
    })
}

// --------------------------------------------------------------- matrices

pub fn mat_to_json(m: &Mat) -> Value {
    let rows: Vec<Value> = m
        .to_rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
        .collect();
    json!({ "field": field_to_json(m.field()), "rows": rows })
}

fn get<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("{what}: missing \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

/// Field for a document: `field_override` wins over the embedded field.
fn document_field(v: &Value, field_override: Option<FieldSpec>, what: &str) -> Result<FieldSpec> {
    match field_override {
        Some(f) => Ok(f),
        None => field_from_json(get(v, "field", what)?),
    }
}

pub fn mat_from_json(v: &Value, field_override: Option<FieldSpec>) -> Result<Mat> {
    let field = document_field(v, field_override, "matrix")?;
    let rows = array(get(v, "rows", "matrix")?, "matrix rows")?;
    if rows.is_empty() {
        return Err(parse_err("matrix: no rows"));
    }
    let rows = rows
        .iter()
        .map(|r| {
            array(r, "matrix row")?
                .iter()
                .map(|x| scalar_from_json(field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows[0].is_empty() {
        return Err(parse_err("matrix: empty row"));
    }
    Mat::from_rows(field, rows).map_err(|e| parse_err(format!("matrix: {e}")))
}

/// A matrix without the surrounding field tag, for nested values whose
/// field is fixed by the enclosing document.
fn rows_only(m: &Mat) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

// ------------------------------------------------------------ polynomials

pub fn poly_to_json(p: &Poly) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

pub fn invariant_factors_to_json(f: &InvariantFactors) -> Value {
    Value::Array(f.chain().iter().map(poly_to_json).collect())
}

// ------------------------------------------------------------ Jordan specs

pub fn spec_to_json(s: &JordanSpec) -> Value {
    let blocks: Vec<Value> = s
        .blocks()
        .iter()
        .map(|(e, n)| json!({ "eig": scalar_to_json(e), "size": n }))
        .collect();
    json!({ "blocks": blocks, "field": field_to_json(s.field()) })
}

pub fn spec_from_json(v: &Value, field_override: Option<FieldSpec>) -> Result<JordanSpec> {
    let field = document_field(v, field_override, "Jordan spec")?;
    let blocks = array(get(v, "blocks", "Jordan spec")?, "blocks")?
        .iter()
        .map(|b| {
            let eig = scalar_from_json(field, get(b, "eig", "block")?)?;
            let size = get(b, "size", "block")?
                .as_u64()
                .ok_or_else(|| parse_err("block size must be a nonnegative integer"))?;
            Ok((eig, size as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    if blocks.is_empty() {
        return Err(parse_err("Jordan spec: no blocks"));
    }
    JordanSpec::new(field, blocks).map_err(|e| parse_err(format!("Jordan spec: {e}")))
}

// ---------------------------------------------------------------- systems

pub fn basis_to_json(b: &SubalgebraBasis) -> Value {
    json!({
        "ambient": b.ambient(),
        "field": field_to_json(b.field()),
        "elements": b.elements().iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

pub fn system_to_json(s: &FrobeniusSystem) -> Value {
    let base = match s.base() {
        Base::Ground => json!("ground"),
        Base::Embedded(b) => basis_to_json(b),
    };
    json!({
        "algebra": basis_to_json(s.algebra()),
        "base": base,
        "E": { "action": mat_to_json(s.expectation().action()) },
        "X": s.x().iter().map(mat_to_json).collect::<Vec<_>>(),
        "Y": s.y().iter().map(mat_to_json).collect::<Vec<_>>(),
        "verified": s.is_verified(),
    })
}

fn check_name(k: CheckKind) -> &'static str {
    match k {
        CheckKind::DualElementOutsideAlgebra => "dual_element_outside_algebra",
        CheckKind::ExpectationOutsideBase => "expectation_outside_base",
        CheckKind::LeftDualBasis => "left_dual_basis",
        CheckKind::RightDualBasis => "right_dual_basis",
        CheckKind::Bimodule => "bimodule",
    }
}

pub fn verification_to_json(r: &VerificationReport) -> Value {
    let failure = r
        .failure
        .as_ref()
        .map(|f| json!({ "check": check_name(f.check), "element": f.element }));
    json!({
        "passed": r.passed,
        "elements_checked": r.elements_checked,
        "failure": failure,
    })
}

/// One search space: the element found, or `null` for no solution.
pub fn separability_result_to_json(d: Option<&Mat>) -> Value {
    match d {
        Some(d) => json!({ "solvable": true, "element": rows_only(d) }),
        None => json!({ "solvable": false, "element": null }),
    }
}

pub fn probe_to_json(p: &SeparabilityProbe) -> Value {
    let mut m = Map::new();
    for sp in SearchSpace::ALL {
        m.insert(sp.name().to_string(), separability_result_to_json(p.get(sp)));
    }
    m.insert("warnings".into(), json!(p.warnings));
    Value::Object(m)
}

pub fn oracle_to_json(o: &OracleOutcome) -> Value {
    let verdict = match o.verdict {
        OracleVerdict::IsFrobenius => "is_frobenius",
        OracleVerdict::NotFrobenius => "not_frobenius",
    };
    json!({ "verdict": verdict, "method": o.method.name() })
}

// ---------------------------------------------------------------- matching

/// Partial deep equality: every key of an expected object must be present
/// and match; arrays match elementwise with equal length; other values
/// compare exactly. Returns the JSON paths that differ.
pub fn partial_mismatches(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_into(expected, actual, String::from("$"), &mut out);
    out
}

fn diff_into(expected: &Value, actual: &Value, path: String, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let p = format!("{path}.{k}");
                match a.get(k) {
                    Some(av) => diff_into(ev, av, p, out),
                    None => out.push(format!("{p}: missing")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                out.push(format!("{path}: length {} != {}", a.len(), e.len()));
                return;
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                diff_into(ev, av, format!("{path}[{i}]"), out);
            }
        }
        _ if expected == actual => {}
        _ => out.push(format!("{path}: expected {expected}, got {actual}")),
    }
}
