//! JSON interchange format.
//!
//! A polynomial is `{"cos": [a₀, a₁, …], "sin": [b₁, b₂, …]}`. Exact
//! coefficients are strings `"p/q"` (or `"p"`) and also accepted as JSON
//! integer literals; binary64 coefficients are JSON numbers with a fraction
//! or exponent. One polynomial cannot mix the two. Floats are written with
//! 17 significant digits so they read back bit-identically. Objects are
//! emitted with sorted keys.

use serde_json::{json, Map, Number, Value};
use std::str::FromStr;

use crate::abel::Cofactor;
use crate::construction::ParamTuple;
use crate::error::{Error, Result};
use crate::factorization::{ComplexLinearFactor, Factorization, LinearFactor};
use crate::poincare::LimitCycleReport;
use crate::scalar::{parse_rational, Coefficient, Rational, Scalar};
use crate::trig::{AnyTrigPoly, ExactPoly, FloatPoly};

/// Parses a document, reporting syntax errors with their byte offset.
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let offset = byte_offset(text, e.line(), e.column());
        Error::Parse(format!("{e} (byte offset {offset})"))
    })
}

/// Converts serde_json's 1-based line and column into a byte offset.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    before + column.saturating_sub(1)
}

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{x:.16e}");
    Value::Number(Number::from_str(&s).expect("formatted float is a JSON number"))
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn coefficient(v: &Value, path: &str) -> Result<Coefficient> {
    match v {
        Value::String(s) => parse_rational(s)
            .map(Coefficient::Exact)
            .ok_or_else(|| Error::Parse(format!("{path}: {s:?} is not a rational p/q"))),
        Value::Number(n) => {
            let text = n.to_string();
            if !text.contains(['.', 'e', 'E']) {
                let q = parse_rational(&text).ok_or_else(|| Error::Parse(format!("{path}: bad integer {text}")))?;
                return Ok(Coefficient::Exact(q));
            }
            n.as_f64()
                .map(Coefficient::Float)
                .ok_or_else(|| Error::Parse(format!("{path}: {text} is not a binary64 value")))
        }
        _ => Err(Error::Parse(format!("{path}: expected a string or number"))),
    }
}

fn coefficient_list(v: Option<&Value>, path: &str) -> Result<Vec<Coefficient>> {
    match v {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, x)| coefficient(x, &format!("{path}[{i}]")))
            .collect(),
        Some(_) => Err(Error::Parse(format!("{path}: expected an array"))),
    }
}

/// Reads `{"cos": [...], "sin": [...]}`; a missing key means no terms.
pub fn poly_from_json(v: &Value, path: &str) -> Result<AnyTrigPoly> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an object with cos/sin arrays")))?;
    if let Some(k) = obj.keys().find(|k| *k != "cos" && *k != "sin") {
        return Err(Error::Parse(format!("{path}: unknown key {k:?}")));
    }
    let cos = coefficient_list(obj.get("cos"), &format!("{path}.cos"))?;
    let sin = coefficient_list(obj.get("sin"), &format!("{path}.sin"))?;
    let all = cos.iter().chain(&sin);
    let has_float = all.clone().any(|c| matches!(c, Coefficient::Float(_)));
    let has_exact = all.clone().any(|c| matches!(c, Coefficient::Exact(_)));
    if has_float && has_exact {
        return Err(Error::FieldMismatch(Rational::FIELD, f64::FIELD));
    }
    if has_float {
        let f = |v: Vec<Coefficient>| v.iter().map(Coefficient::to_f64).collect();
        Ok(AnyTrigPoly::Float(FloatPoly::new(f(cos), f(sin))))
    } else {
        let q = |v: Vec<Coefficient>| {
            v.into_iter()
                .map(|c| match c {
                    Coefficient::Exact(q) => q,
                    Coefficient::Float(_) => unreachable!("checked above"),
                })
                .collect()
        };
        Ok(AnyTrigPoly::Exact(ExactPoly::new(q(cos), q(sin))))
    }
}

/// Reads a polynomial that must have exact coefficients.
pub fn exact_from_json(v: &Value, path: &str) -> Result<ExactPoly> {
    poly_from_json(v, path)?.into_exact()
}

/// Reads a required exact polynomial under `key` of an object.
pub fn exact_field(doc: &Value, key: &str) -> Result<ExactPoly> {
    let v = doc
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))?;
    exact_from_json(v, key)
}

/// Reads an exact rational given as `"p/q"` or an integer literal.
pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match coefficient(v, path)? {
        Coefficient::Exact(q) => Ok(q),
        Coefficient::Float(_) => Err(Error::FieldMismatch(Rational::FIELD, f64::FIELD)),
    }
}

pub fn exact_to_json(p: &ExactPoly) -> Value {
    json!({
        "cos": p.cos_coeffs().iter().map(rational).collect::<Vec<_>>(),
        "sin": p.sin_coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn float_to_json(p: &FloatPoly) -> Value {
    json!({
        "cos": p.cos_coeffs().iter().map(|&x| float(x)).collect::<Vec<_>>(),
        "sin": p.sin_coeffs().iter().map(|&x| float(x)).collect::<Vec<_>>(),
    })
}

pub fn poly_to_json(p: &AnyTrigPoly) -> Value {
    match p {
        AnyTrigPoly::Exact(p) => exact_to_json(p),
        AnyTrigPoly::Float(p) => float_to_json(p),
    }
}

pub fn cofactor_to_json(k: &Cofactor) -> Value {
    json!({ "k2": exact_to_json(&k.k2), "k1": exact_to_json(&k.k1), "k0": exact_to_json(&k.k0) })
}

pub fn params_to_json(p: &ParamTuple) -> Value {
    json!({
        "G": exact_to_json(&p.g),
        "Ghat": exact_to_json(&p.ghat),
        "S1": exact_to_json(&p.s1),
        "k": rational(&p.k),
    })
}

pub fn params_from_json(doc: &Value) -> Result<ParamTuple> {
    let k = doc.get("k").ok_or_else(|| Error::Parse("missing key \"k\"".into()))?;
    Ok(ParamTuple::new(
        exact_field(doc, "G")?,
        exact_field(doc, "Ghat")?,
        exact_field(doc, "S1")?,
        rational_from_json(k, "k")?,
    ))
}

fn linear_factor_to_json(f: &LinearFactor<f64>) -> Value {
    json!({ "a": float(f.a), "b": float(f.b), "c": float(f.c) })
}

pub fn factorization_to_json(f: &Factorization) -> Value {
    json!({
        "unit": float(f.unit),
        "factors": f.factors.iter().map(linear_factor_to_json).collect::<Vec<_>>(),
        "residual": float(f.residual),
    })
}

fn complex(z: num_complex::Complex64) -> Value {
    json!([float(z.re), float(z.im)])
}

pub fn complex_factor_to_json(f: &ComplexLinearFactor) -> Value {
    json!({ "sin": complex(f.sin), "cos": complex(f.cos), "const": complex(f.constant) })
}

pub fn limit_cycles_to_json(r: &LimitCycleReport) -> Value {
    let fixed: Vec<Value> = r
        .fixed_points
        .iter()
        .map(|f| {
            json!({
                "x0": float(f.x0),
                "multiplier": float(f.multiplier),
                "stability": f.stability.as_str(),
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("fixed_points".into(), Value::Array(fixed));
    m.insert("count_nontrivial".into(), json!(r.count_nontrivial));
    m.insert("bound".into(), r.bound.map_or(Value::Null, |b| json!(b)));
    m.insert("bound_respected".into(), json!(r.bound_respected));
    m.insert(
        "unscanned".into(),
        Value::Array(r.unscanned.iter().map(|&(a, b)| json!([float(a), float(b)])).collect()),
    );
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn exact_round_trip() {
        let p = ExactPoly::new(vec![rat(1, 2), rat(-3, 1)], vec![rat(7, 9)]);
        let v = exact_to_json(&p);
        assert_eq!(v.to_string(), r#"{"cos":["1/2","-3"],"sin":["7/9"]}"#);
        assert_eq!(exact_from_json(&v, "P").unwrap(), p);
    }

    #[test]
    fn integers_are_exact_and_decimals_are_float() {
        let v: Value = serde_json::from_str(r#"{"cos": [2, 1], "sin": ["1/2"]}"#).unwrap();
        assert_eq!(
            exact_from_json(&v, "P").unwrap(),
            ExactPoly::new(vec![rat(2, 1), rat(1, 1)], vec![rat(1, 2)])
        );
        let v: Value = serde_json::from_str(r#"{"cos": [2.5, 1e0]}"#).unwrap();
        assert_eq!(
            poly_from_json(&v, "P").unwrap(),
            AnyTrigPoly::Float(FloatPoly::new(vec![2.5, 1.0], vec![]))
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let v: Value = serde_json::from_str(r#"{"cos": ["1/2", 0.5]}"#).unwrap();
        assert_eq!(
            poly_from_json(&v, "P").unwrap_err(),
            Error::FieldMismatch("exact", "float")
        );
    }

    #[test]
    fn floats_round_trip_bitwise() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let v = float(x);
            assert_eq!(v.as_f64().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn parse_errors_carry_byte_offset() {
        let err = parse_document("{\"A\": 1,\n  \"B\": }").unwrap_err();
        let Error::Parse(msg) = err else { panic!() };
        assert!(msg.contains("byte offset 16"), "{msg}");
    }

    #[test]
    fn unknown_keys_and_bad_strings() {
        let v: Value = serde_json::from_str(r#"{"cos": ["1/0"]}"#).unwrap();
        assert!(matches!(poly_from_json(&v, "P"), Err(Error::Parse(_))));
        let v: Value = serde_json::from_str(r#"{"cosine": []}"#).unwrap();
        assert!(matches!(poly_from_json(&v, "P"), Err(Error::Parse(_))));
    }
}
