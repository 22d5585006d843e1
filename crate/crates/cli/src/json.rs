//! JSON encoding of scalars and Heisenberg data.
//!
//! Exact scalars travel as strings (`"7/3"`, `"-2"`), floats as JSON numbers.
//! Integer JSON numbers are accepted in both modes.

use heis_core::group::{HeisAlgElement, HeisDualElement, HeisGroupElement};
use heis_core::scalar::parse_rational;
use heis_core::{ExtVector, Matrix, Rational, Scalar, SympCovector, SympVector};
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(CliError::Malformed(format!(
                "HEIS_MODE must be exact or float, got {other:?}"
            ))),
        }
    }

    /// `HEIS_MODE` if set, otherwise `inferred`.
    pub fn resolve(env: Option<&str>, inferred: Mode) -> Result<Self, CliError> {
        match env {
            Some(text) if !text.trim().is_empty() => Mode::parse(text),
            _ => Ok(inferred),
        }
    }
}

/// A scalar as written in the input document.
#[derive(Debug, Clone, PartialEq)]
pub enum RawScalar {
    Text(String),
    Number(Number),
}

impl RawScalar {
    pub fn from_value(value: &Value, field: &str) -> Result<Self, CliError> {
        match value {
            Value::String(s) => Ok(RawScalar::Text(s.clone())),
            Value::Number(n) => Ok(RawScalar::Number(n.clone())),
            other => Err(CliError::Malformed(format!(
                "{field}: expected a number or fraction string, got {other}"
            ))),
        }
    }

    /// Non-integer JSON numbers mark the document as float input.
    pub fn is_float_literal(&self) -> bool {
        matches!(self, RawScalar::Number(n) if !(n.is_i64() || n.is_u64()))
    }

    fn text(&self) -> String {
        match self {
            RawScalar::Text(s) => s.trim().to_string(),
            RawScalar::Number(n) => n.to_string(),
        }
    }
}

/// Scalars that can be read from a [`RawScalar`] and written as JSON.
pub trait JsonScalar: Scalar {
    fn from_raw(raw: &RawScalar, field: &str) -> Result<Self, CliError>;
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn from_raw(raw: &RawScalar, field: &str) -> Result<Self, CliError> {
        let text = raw.text();
        parse_rational(&text).ok_or_else(|| {
            CliError::Malformed(format!("{field}: cannot read {text:?} as a rational"))
        })
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for f64 {
    fn from_raw(raw: &RawScalar, field: &str) -> Result<Self, CliError> {
        let value = match raw {
            RawScalar::Number(n) => n.as_f64(),
            RawScalar::Text(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .or_else(|| parse_rational(s).map(|q| q.to_f64())),
        };
        match value {
            Some(v) if v.is_finite() => Ok(v),
            _ => Err(CliError::Malformed(format!(
                "{field}: cannot read {:?} as a finite number",
                raw.text()
            ))),
        }
    }

    fn to_json(&self) -> Value {
        Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

/// Scalar JSON for any [`Scalar`]: fraction strings when exact, numbers
/// otherwise.
pub fn scalar<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_string())
    } else {
        s.to_f64().to_json()
    }
}

pub fn scalars<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars(r)).collect())
}

pub fn vector<S: Scalar>(v: &SympVector<S>) -> Value {
    json!({ "x": scalars(&v.x), "y": scalars(&v.y) })
}

pub fn covector<S: Scalar>(v: &SympCovector<S>) -> Value {
    json!({ "x": scalars(&v.x), "y": scalars(&v.y) })
}

pub fn group_element<S: Scalar>(g: &HeisGroupElement<S>) -> Value {
    json!({ "x": scalars(&g.v.x), "y": scalars(&g.v.y), "r": scalar(&g.r) })
}

pub fn alg_element<S: Scalar>(a: &HeisAlgElement<S>) -> Value {
    json!({ "x": scalars(&a.x.x), "y": scalars(&a.x.y), "xi": scalar(&a.xi) })
}

pub fn dual_element<S: Scalar>(f: &HeisDualElement<S>) -> Value {
    json!({ "x": scalars(&f.lambda.x), "y": scalars(&f.lambda.y), "mu": scalar(&f.mu) })
}

pub fn ext_vector<S: Scalar>(w: &ExtVector<S>) -> Value {
    scalars(&w.components())
}

/// Reads `"field"` as a list of raw scalars.
pub fn raw_list(obj: &Map<String, Value>, field: &str) -> Result<Vec<RawScalar>, CliError> {
    match obj.get(field) {
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| RawScalar::from_value(v, &format!("{field}[{i}]")))
            .collect(),
        Some(other) => Err(CliError::Malformed(format!(
            "{field}: expected an array, got {other}"
        ))),
        None => Err(CliError::Malformed(format!("missing field {field:?}"))),
    }
}

pub fn raw_field(obj: &Map<String, Value>, field: &str) -> Result<RawScalar, CliError> {
    obj.get(field)
        .ok_or_else(|| CliError::Malformed(format!("missing field {field:?}")))
        .and_then(|v| RawScalar::from_value(v, field))
}

pub fn optional_dim(obj: &Map<String, Value>) -> Result<Option<usize>, CliError> {
    match obj.get("n") {
        None => Ok(None),
        Some(Value::Number(n)) => match n.as_u64() {
            Some(0) => Err(CliError::Malformed("n must be positive".into())),
            Some(v) => Ok(Some(v as usize)),
            None => Err(CliError::Malformed(format!(
                "n must be a positive integer, got {n}"
            ))),
        },
        Some(other) => Err(CliError::Malformed(format!(
            "n must be a positive integer, got {other}"
        ))),
    }
}

pub fn convert<S: JsonScalar>(raw: &[RawScalar], field: &str) -> Result<Vec<S>, CliError> {
    raw.iter()
        .enumerate()
        .map(|(i, r)| S::from_raw(r, &format!("{field}[{i}]")))
        .collect()
}
