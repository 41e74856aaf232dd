//! Canonical JSON forms. Rationals are `["num", "den"]` with decimal strings.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::opcalc::Operator;
use crate::poly::Poly;
use crate::series::Series;
use crate::Rat;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn rat_to_json(r: &Rat) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

fn big_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad integer {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().expect("checked"))),
        _ => Err(invalid(format!("expected an integer, got {v}"))),
    }
}

/// Accepts `["num","den"]`, a bare integer, or a string `"p/q"`.
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let (num, den) = (big_from_json(&parts[0])?, big_from_json(&parts[1])?);
            if den == BigInt::from(0) {
                return Err(invalid("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
        Value::String(s) if s.contains('/') => {
            let (a, b) = s.split_once('/').expect("checked");
            rat_from_json(&json!([a, b]))
        }
        _ => Ok(Rat::from_integer(big_from_json(v)?)),
    }
}

fn rats_to_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_to_json).collect())
}

fn rats_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| invalid("expected an array"))?
        .iter()
        .map(rat_from_json)
        .collect()
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| invalid(format!("missing field {name:?}")))
}

pub fn series_to_json(s: &Series<Rat>) -> Value {
    json!({"var": "y", "order": s.order(), "coeffs": rats_to_json(s.coeffs())})
}

pub fn series_from_json(v: &Value) -> Result<Series<Rat>> {
    let coeffs = rats_from_json(field(v, "coeffs")?)?;
    if let Some(order) = v.get("order").and_then(Value::as_i64) {
        if order != coeffs.len() as i64 - 1 {
            return Err(invalid(format!(
                "order {order} does not match {} coefficients",
                coeffs.len()
            )));
        }
    }
    Ok(Series::from_scalars(coeffs))
}

pub fn poly_to_json(p: &Poly<Rat>) -> Value {
    json!({"var": "x", "coeffs": rats_to_json(p.coeffs())})
}

pub fn poly_from_json(v: &Value) -> Result<Poly<Rat>> {
    Ok(Poly::new(rats_from_json(field(v, "coeffs")?)?))
}

pub fn operator_to_json(op: &Operator<Rat>) -> Value {
    let rows: Vec<Value> = op.rows().iter().map(|r| rats_to_json(r)).collect();
    let mut m = Map::new();
    m.insert("N".into(), json!(op.dim()));
    m.insert("raise".into(), json!(op.raise()));
    m.insert("window".into(), json!(op.window()));
    m.insert("entries".into(), Value::Array(rows));
    Value::Object(m)
}

pub fn operator_from_json(v: &Value) -> Result<Operator<Rat>> {
    let rows = field(v, "entries")?
        .as_array()
        .ok_or_else(|| invalid("entries must be an array of rows"))?
        .iter()
        .map(rats_from_json)
        .collect::<Result<Vec<_>>>()?;
    let int = |name: &str| {
        field(v, name)?
            .as_i64()
            .ok_or_else(|| invalid(format!("{name} must be an integer")))
    };
    let op = Operator::from_rows(rows, int("raise")?, int("window")?)?;
    if int("N")? != op.dim() as i64 {
        return Err(invalid("N does not match the matrix size"));
    }
    Ok(op)
}

/// Table of rows, e.g. a `xi` table.
pub fn table_to_json(t: &[Vec<Rat>]) -> Value {
    Value::Array(t.iter().map(|r| rats_to_json(r)).collect())
}

pub fn table_from_json(v: &Value) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| invalid("expected an array of rows"))?
        .iter()
        .map(rats_from_json)
        .collect()
}
