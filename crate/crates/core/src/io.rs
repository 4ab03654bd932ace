//! JSON encodings of tensors, cameras and polynomials.
//!
//! A scalar is a JSON integer or a string holding an integer or `"p/q"`.
//! A tensor is a nested array `t[i][j][k]`, i indexing A, j indexing B and
//! k indexing C. A camera is a 3x4 nested array; a camera triple is an object
//! `{"A1": ..., "A2": ..., "A3": ...}`.

use serde_json::Value;
use thiserror::Error;

use crate::camera::{CameraError, CameraTriple};
use crate::linalg::{DenseMatrix, Field, Scalar};
use crate::poly::format::{from_json_terms, to_json_terms, TermJson};
use crate::poly::{parse_letters, parse_poly, Poly27, PolyError};
use crate::tensor::Tensor333;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error("bad scalar {0}")]
    Scalar(String),
    #[error(transparent)]
    Camera(#[from] CameraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn scalar_from_value(v: &Value) -> Result<Scalar, IoError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(Scalar::from_i64(x, Field::Rational)),
            None => n.to_string().parse().map_err(|_| IoError::Scalar(n.to_string())),
        },
        Value::String(s) => s.parse().map_err(|_| IoError::Scalar(s.clone())),
        other => Err(IoError::Scalar(other.to_string())),
    }
}

/// Integers stay JSON numbers when they fit in an i64.
pub fn scalar_to_value(s: &Scalar) -> Value {
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(text),
    }
}

fn array<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a [Value], IoError> {
    match v.as_array() {
        Some(a) if a.len() == len => Ok(a),
        _ => Err(IoError::Shape(format!("{what} must be an array of length {len}"))),
    }
}

pub fn tensor_from_value(v: &Value) -> Result<Tensor333, IoError> {
    let mut flat = Vec::with_capacity(27);
    for slab in array(v, 3, "tensor")? {
        for row in array(slab, 3, "tensor slab")? {
            for x in array(row, 3, "tensor row")? {
                flat.push(scalar_from_value(x)?);
            }
        }
    }
    Tensor333::from_flat(flat).map_err(|e| IoError::Shape(e.to_string()))
}

pub fn tensor_from_json(text: &str) -> Result<Tensor333, IoError> {
    tensor_from_value(&serde_json::from_str(text)?)
}

pub fn tensor_to_value(t: &Tensor333) -> Value {
    Value::Array(
        (0..3)
            .map(|i| {
                Value::Array(
                    (0..3).map(|j| Value::Array((0..3).map(|k| scalar_to_value(t.get(i, j, k))).collect())).collect(),
                )
            })
            .collect(),
    )
}

pub fn tensor_to_json(t: &Tensor333) -> String {
    tensor_to_value(t).to_string()
}

pub fn camera_from_value(v: &Value) -> Result<DenseMatrix, IoError> {
    let rows = array(v, 3, "camera")?
        .iter()
        .map(|r| array(r, 4, "camera row")?.iter().map(scalar_from_value).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::from_rows(rows).map_err(|e| IoError::Shape(e.to_string()))
}

pub fn camera_triple_from_json(text: &str) -> Result<CameraTriple, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let get = |key: &str| v.get(key).ok_or_else(|| IoError::Shape(format!("missing camera {key}")));
    let a1 = camera_from_value(get("A1")?)?;
    let a2 = camera_from_value(get("A2")?)?;
    let a3 = camera_from_value(get("A3")?)?;
    Ok(CameraTriple::new(a1, a2, a3)?)
}

pub fn camera_triple_to_json(ct: &CameraTriple) -> String {
    let cam = |i: usize| {
        let m = ct.camera(i).matrix();
        Value::Array((0..3).map(|r| Value::Array(m.row(r).iter().map(scalar_to_value).collect())).collect())
    };
    serde_json::json!({"A1": cam(0), "A2": cam(1), "A3": cam(2)}).to_string()
}

/// A polynomial from a JSON term list, the `c*T_i_j_k^e` text form, or the letter form.
pub fn poly_from_text(text: &str) -> Result<Poly27, IoError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let terms: Vec<TermJson> = serde_json::from_str(trimmed)?;
        return Ok(from_json_terms(&terms, Field::Rational)?);
    }
    if trimmed.contains("T_") {
        return Ok(parse_poly(trimmed, Field::Rational)?);
    }
    Ok(parse_letters(trimmed)?)
}

pub fn poly_to_json(p: &Poly27) -> String {
    serde_json::to_string(&to_json_terms(p)).expect("terms serialize")
}

/// One polynomial per non-empty line, `#` starting a comment line.
pub fn polys_from_lines(text: &str) -> Result<Vec<Poly27>, IoError> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(poly_from_text).collect()
}
