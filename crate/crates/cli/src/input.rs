//! Model and matrix files. Rationals are written as strings (`"-3/2"`) or
//! JSON integers; floating-point numbers are refused.

use std::path::Path;

use hkrlab_core::hodgepair::{k3_like_model, synthetic_cy3_model, torus_model, PairModel};
use hkrlab_core::linalg::Matrix;
use hkrlab_core::scalar::{ExactText, Scalar, Q};
use hkrlab_core::verbitsky::QuadraticSpace;
use serde_json::Value;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn rational(v: &Value) -> Result<Q, CliError> {
    match v {
        Value::String(s) => Q::parse_exact(s).ok_or_else(|| CliError::Usage(format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(Q::from_int)
            .ok_or_else(|| CliError::Usage(format!("not an exact number: {n}"))),
        other => Err(CliError::Usage(format!("expected a rational, found {other}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Usage(format!("missing field {key:?}")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize, CliError> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Usage(format!("field {key:?} must be a nonnegative integer")))
}

pub fn matrix(v: &Value) -> Result<Matrix<Q>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::Usage("matrix must be an array of rows".into()))?;
    let rows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::Usage("matrix row must be an array".into()))?
                .iter()
                .map(rational)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Usage("matrix rows must be nonempty and of equal length".into()));
    }
    Ok(Matrix::from_rows(rows))
}

/// `{"gram": [[…]], "n": int}`.
pub fn verbitsky_model(v: &Value) -> Result<(QuadraticSpace<Q>, usize), CliError> {
    let gram = matrix(field(v, "gram")?)?;
    let n = usize_field(v, "n")?;
    let space = QuadraticSpace::new(gram).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok((space, n))
}

/// `{"kind": "torus", "n": 2}`, `{"kind": "k3_like", "gram": [[…]],
/// "lambda": "1"}` or `{"kind": "synthetic", "degree": "5", "yukawa": "3",
/// "lambda": "-1/24"}`.
pub fn pair_model(v: &Value) -> Result<PairModel<Q>, CliError> {
    let kind = field(v, "kind")?.as_str().ok_or_else(|| CliError::Usage("\"kind\" must be a string".into()))?;
    let domain = |e: hkrlab_core::hodgepair::PairError| CliError::Domain(e.to_string());
    match kind {
        "torus" => torus_model(usize_field(v, "n")?).map_err(domain),
        "k3_like" => k3_like_model(&matrix(field(v, "gram")?)?, rational(field(v, "lambda")?)?).map_err(domain),
        "synthetic" => synthetic_cy3_model(
            rational(field(v, "degree")?)?,
            rational(field(v, "yukawa")?)?,
            rational(field(v, "lambda")?)?,
        )
        .map_err(domain),
        other => Err(CliError::Usage(format!("unknown model kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hkrlab_core::scalar::q;
    use serde_json::json;

    #[test]
    fn rationals() {
        assert_eq!(rational(&json!("-3/2")).unwrap(), q(-3, 2));
        assert_eq!(rational(&json!(4)).unwrap(), q(4, 1));
        assert!(rational(&json!(0.5)).is_err());
        assert!(rational(&json!("1/0")).is_err());
    }

    #[test]
    fn models() {
        let (space, n) = verbitsky_model(&json!({"gram": [[1, 0, 0], [0, 1, 0], [0, 0, -1]], "n": 1})).unwrap();
        assert_eq!((space.dim(), n), (3, 1));
        assert!(matches!(verbitsky_model(&json!({"gram": [[1, 0], [0]], "n": 1})), Err(CliError::Usage(_))));
        assert_eq!(pair_model(&json!({"kind": "torus", "n": 1})).unwrap().hw_dim(), 4);
        let k3 = pair_model(&json!({"kind": "k3_like", "gram": [["2"]], "lambda": "1"})).unwrap();
        k3.validate().unwrap();
        assert!(pair_model(&json!({"kind": "enriques"})).is_err());
    }
}
