//! Model files and report encoding.
//!
//! Integers are read from JSON numbers of any size or from decimal strings.
//! On output, integers of magnitude below 2^53 are numbers and larger ones
//! are strings, so ordinary JSON readers never lose precision. Objects are
//! emitted with sorted keys.

use std::path::Path;

use mckay_core::exact::{rat_to_string, Int, Poly, Rat};
use mckay_core::{Model, ModelError};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{Map, Number, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {reason}")]
    Schema { field: String, reason: String },
    #[error("{0}")]
    Invalid(#[from] ModelError),
}

fn schema(field: impl Into<String>, reason: impl Into<String>) -> ParseError {
    ParseError::Schema {
        field: field.into(),
        reason: reason.into(),
    }
}

fn integer(v: &Value, field: &str) -> Result<BigInt, ParseError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_owned(),
        _ => return Err(schema(field, "expected an integer")),
    };
    text.parse::<BigInt>()
        .map_err(|_| schema(field, format!("`{text}` is not an integer")))
}

fn index(v: &Value, field: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| schema(field, "expected a nonnegative index"))
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array()
        .ok_or_else(|| schema(field, "expected an array"))
}

/// Decodes a model and runs full validation.
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("<root>", "expected an object"))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| schema(k, "missing"));

    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(schema("name", "expected a string")),
    };
    let n = index(get("n")?, "n")?;
    let m = index(get("m")?, "m")?;
    let vertices = array(get("vertices")?, "vertices")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let field = format!("vertices[{i}]");
            array(v, &field)?.iter().map(|x| index(x, &field)).collect()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    let lambda = array(get("lambda")?, "lambda")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let field = format!("lambda[{i}]");
            array(v, &field)?
                .iter()
                .map(|x| integer(x, &field))
                .collect()
        })
        .collect::<Result<Vec<Vec<Int>>, _>>()?;
    Ok(Model::new(name, n, m, vertices, lambda)?)
}

pub fn read_model(path: &Path) -> Result<Model, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}

const EXACT_LIMIT: i64 = 1 << 53;

pub fn int_value(x: &Int) -> Value {
    if x.abs() < BigInt::from(EXACT_LIMIT) {
        let n: Number = x.to_string().parse().expect("decimal integer");
        Value::Number(n)
    } else {
        Value::String(x.to_string())
    }
}

pub fn ints_value(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

pub fn usizes_value(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x)).collect())
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

/// An integral rational as a number, otherwise `"p/q"`.
pub fn age_value(r: &Rat) -> Value {
    if r.is_integer() {
        int_value(&r.to_integer())
    } else {
        rat_value(r)
    }
}

/// Coefficients in `s`, index `i` standing for degree `2i`.
pub fn poly_value(p: &Poly) -> Value {
    let coeffs = if p.is_zero() {
        vec![Int::from(0)]
    } else {
        p.coeffs().to_vec()
    };
    ints_value(&coeffs)
}

pub fn model_to_json(model: &Model) -> Value {
    let mut obj = Map::new();
    if let Some(name) = model.name() {
        obj.insert("name".into(), Value::from(name));
    }
    obj.insert("n".into(), Value::from(model.n()));
    obj.insert("m".into(), Value::from(model.m()));
    obj.insert(
        "vertices".into(),
        Value::Array(model.vertices().iter().map(|v| usizes_value(v)).collect()),
    );
    obj.insert(
        "lambda".into(),
        Value::Array(model.lambda().iter().map(|l| ints_value(l)).collect()),
    );
    Value::Object(obj)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[macro_export]
macro_rules! object {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $(m.insert(String::from($k), serde_json::Value::from($v));)*
        serde_json::Value::Object(m)
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use mckay_core::model::library::{wp112, z3_tetrahedron};

    #[test]
    fn round_trip() {
        for m in [wp112(), z3_tetrahedron()] {
            let text = canonical(&model_to_json(&m));
            assert_eq!(parse_model(&text).unwrap(), m);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = canonical(&model_to_json(&wp112()));
        let keys: Vec<usize> = ["\"lambda\"", "\"m\"", "\"n\"", "\"name\"", "\"vertices\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn big_integers() {
        let big = "123456789012345678901234567890";
        let text = format!(
            r#"{{"n": 2, "m": 3, "vertices": [[0,1],[1,2],[0,2]],
                "lambda": [[1, 0], [0, 1], [-1, "-1"]], "extra": {big}}}"#
        );
        let m = parse_model(&text).unwrap();
        assert_eq!(m.lambda()[2], vec![Int::from(-1), Int::from(-1)]);
        let v: BigInt = big.parse().unwrap();
        assert_eq!(int_value(&v), Value::String(big.into()));
        assert_eq!(
            int_value(&Int::from(EXACT_LIMIT - 1)),
            Value::from(EXACT_LIMIT - 1)
        );
        let huge =
            format!(r#"{{"n": 1, "m": 2, "vertices": [[0],[1]], "lambda": [[1], [{big}]]}}"#);
        assert!(matches!(parse_model(&huge), Err(ParseError::Invalid(_))));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_model("[1]"), Err(ParseError::Schema { .. })));
        assert!(matches!(parse_model("{"), Err(ParseError::Json(_))));
        let missing = r#"{"n": 2, "m": 3, "vertices": []}"#;
        assert!(
            matches!(parse_model(missing), Err(ParseError::Schema { field, .. }) if field == "lambda")
        );
        let frac = r#"{"n": 1, "m": 2, "vertices": [[0],[1]], "lambda": [[1], [1.5]]}"#;
        assert!(matches!(parse_model(frac), Err(ParseError::Schema { .. })));
    }
}
