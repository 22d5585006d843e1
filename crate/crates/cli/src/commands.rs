//! `classify` and `reduce`.

use heis_core::group::{EmbeddedMatrix, GhatParams, HeisDualElement, MEMBERSHIP_TOL};
use heis_core::orbits::{classify_dual, reduce_tuple, TupleRep};
use heis_core::{Matrix, Rational, SympCovector, SympVector};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::json::{self, convert, optional_dim, raw_field, raw_list, JsonScalar, Mode, RawScalar};

fn object(doc: &Value) -> Result<&Map<String, Value>, CliError> {
    doc.as_object()
        .ok_or_else(|| CliError::Malformed("expected a JSON object".into()))
}

fn infer(raw: &[&RawScalar]) -> Mode {
    if raw.iter().any(|r| r.is_float_literal()) {
        Mode::Float
    } else {
        Mode::Exact
    }
}

fn check_len(field: &str, len: usize, expected: usize) -> Result<(), CliError> {
    if len != expected {
        return Err(CliError::Dimension(format!(
            "{field} has {len} entries, expected {expected}"
        )));
    }
    Ok(())
}

struct DualInput {
    x: Vec<RawScalar>,
    y: Vec<RawScalar>,
    mu: RawScalar,
}

fn parse_dual(doc: &Value) -> Result<DualInput, CliError> {
    let obj = object(doc)?;
    let (x, y) = if obj.contains_key("lambda") {
        let mut lambda = raw_list(obj, "lambda")?;
        if lambda.len() % 2 != 0 {
            return Err(CliError::Dimension(format!(
                "lambda has odd length {}",
                lambda.len()
            )));
        }
        let y = lambda.split_off(lambda.len() / 2);
        (lambda, y)
    } else {
        (raw_list(obj, "x")?, raw_list(obj, "y")?)
    };
    let n = optional_dim(obj)?.unwrap_or(x.len());
    if n == 0 {
        return Err(CliError::Dimension("dual element has no components".into()));
    }
    check_len("x", x.len(), n)?;
    check_len("y", y.len(), n)?;
    Ok(DualInput {
        x,
        y,
        mu: raw_field(obj, "mu")?,
    })
}

/// Orbit of a dual element `{"x", "y", "mu"}` (or `{"lambda", "mu"}`).
pub fn classify(doc: &Value, env_mode: Option<&str>) -> Result<Value, CliError> {
    let input = parse_dual(doc)?;
    let all: Vec<&RawScalar> = input.x.iter().chain(&input.y).chain([&input.mu]).collect();
    match Mode::resolve(env_mode, infer(&all))? {
        Mode::Exact => classify_in::<Rational>(&input, Mode::Exact),
        Mode::Float => classify_in::<f64>(&input, Mode::Float),
    }
}

fn classify_in<S: JsonScalar>(input: &DualInput, mode: Mode) -> Result<Value, CliError> {
    let lambda = SympCovector::new(convert::<S>(&input.x, "x")?, convert::<S>(&input.y, "y")?)?;
    let f = HeisDualElement::new(lambda, S::from_raw(&input.mu, "mu")?);
    let desc = classify_dual(&f);
    let verified = desc.verify(&f, MEMBERSHIP_TOL)?;
    Ok(json!({
        "kind": desc.kind.as_str(),
        "mu": json::scalar(&desc.mu),
        "representative": json::dual_element(&desc.representative),
        "normalizer": desc.normalizer.as_ref().map(json::group_element),
        "verified": verified,
        "mode": mode.as_str(),
    }))
}

enum TupleInput {
    Params {
        zeta: RawScalar,
        d: Vec<RawScalar>,
        xi: RawScalar,
        n: usize,
    },
    Matrix(Vec<Vec<RawScalar>>),
}

fn parse_tuple(doc: &Value) -> Result<TupleInput, CliError> {
    let obj = object(doc)?;
    if let Some(rows) = obj.get("matrix") {
        let rows = rows
            .as_array()
            .ok_or_else(|| CliError::Malformed("matrix: expected an array of rows".into()))?;
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.as_array()
                    .ok_or_else(|| CliError::Malformed(format!("matrix[{i}]: expected an array")))?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| RawScalar::from_value(v, &format!("matrix[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let size = parsed.len();
        if let Some((i, row)) = parsed.iter().enumerate().find(|(_, r)| r.len() != size) {
            return Err(CliError::Dimension(format!(
                "matrix row {i} has {} entries, expected {size}",
                row.len()
            )));
        }
        if size < 4 || size % 2 != 0 {
            return Err(CliError::Dimension(format!(
                "matrix size {size} is not 2n+2 with n >= 1"
            )));
        }
        if let Some(n) = optional_dim(obj)? {
            check_len("matrix", size, 2 * n + 2)?;
        }
        return Ok(TupleInput::Matrix(parsed));
    }
    let d = raw_list(obj, "d")?;
    if d.is_empty() || d.len() % 2 != 0 {
        return Err(CliError::Dimension(format!(
            "d has {} entries, expected 2n with n >= 1",
            d.len()
        )));
    }
    let n = optional_dim(obj)?.unwrap_or(d.len() / 2);
    check_len("d", d.len(), 2 * n)?;
    Ok(TupleInput::Params {
        zeta: raw_field(obj, "zeta")?,
        d,
        xi: raw_field(obj, "xi")?,
        n,
    })
}

/// Normal-form reduction of a tuple given as `{"zeta", "d", "xi"}` or
/// `{"matrix"}`.
pub fn reduce(doc: &Value, env_mode: Option<&str>) -> Result<Value, CliError> {
    let input = parse_tuple(doc)?;
    let all: Vec<&RawScalar> = match &input {
        TupleInput::Params { zeta, d, xi, .. } => d.iter().chain([zeta, xi]).collect(),
        TupleInput::Matrix(rows) => rows.iter().flatten().collect(),
    };
    match Mode::resolve(env_mode, infer(&all))? {
        Mode::Exact => reduce_in::<Rational>(&input, Mode::Exact),
        Mode::Float => reduce_in::<f64>(&input, Mode::Float),
    }
}

fn reduce_in<S: JsonScalar>(input: &TupleInput, mode: Mode) -> Result<Value, CliError> {
    let y = match input {
        TupleInput::Params { zeta, d, xi, n } => {
            let d = convert::<S>(d, "d")?;
            let (x_part, y_part) = d.split_at(*n);
            EmbeddedMatrix::from_ghat_params(&GhatParams {
                zeta: S::from_raw(zeta, "zeta")?,
                d: SympVector::new(x_part.to_vec(), y_part.to_vec())?,
                xi: S::from_raw(xi, "xi")?,
            })
        }
        TupleInput::Matrix(rows) => {
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, r)| convert::<S>(r, &format!("matrix[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            EmbeddedMatrix::from_square(Matrix::from_rows(rows)?)?
        }
    };
    let red = reduce_tuple(&TupleRep::new(y))?;
    Ok(json!({
        "modulus": json::scalar(&red.descriptor.modulus),
        "height": red.descriptor.height,
        "zero_type_dim": red.descriptor.zero_type_dim,
        "w": json::ext_vector(&red.w),
        "mode": mode.as_str(),
    }))
}
