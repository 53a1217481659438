//! JSON matrix files.
//!
//! A single matrix is `{"dim": d, "data": [[re, im], ...]}` with `d²`
//! row-major entries; a tuple is `{"matrices": [obj, ...]}`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

fn malformed(index: usize, reason: impl Into<String>) -> Error {
    Error::MalformedData {
        index,
        reason: reason.into(),
    }
}

/// Parses one `{"dim", "data"}` object.
pub fn matrix_from_value(value: &Value) -> Result<ComplexMatrix> {
    let obj = value
        .as_object()
        .ok_or_else(|| malformed(0, "matrix must be a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed(0, "missing or non-integer `dim`"))? as usize;
    if dim == 0 {
        return Err(malformed(0, "`dim` must be positive"));
    }
    let data = obj
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed(0, "missing `data` array"))?;
    let mut entries = Vec::with_capacity(data.len());
    for (index, item) in data.iter().enumerate() {
        if index >= dim * dim {
            return Err(malformed(
                index,
                format!("expected {} entries for dim {dim}", dim * dim),
            ));
        }
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| malformed(index, "entry must be [re, im]"))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| malformed(index, "real part is not a number"))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| malformed(index, "imaginary part is not a number"))?;
        entries.push(Complex64::new(re, im));
    }
    if entries.len() != dim * dim {
        return Err(malformed(
            entries.len(),
            format!("expected {} entries for dim {dim}, found {}", dim * dim, entries.len()),
        ));
    }
    ComplexMatrix::from_row_major(dim, entries)
}

/// Parses a matrix document into a tuple (length one for a single matrix).
pub fn parse_matrices(text: &str) -> Result<Vec<ComplexMatrix>> {
    let value: Value = serde_json::from_str(text)?;
    matrices_from_value(&value)
}

pub fn matrices_from_value(value: &Value) -> Result<Vec<ComplexMatrix>> {
    if let Some(list) = value.get("matrices") {
        let list = list
            .as_array()
            .ok_or_else(|| malformed(0, "`matrices` must be an array"))?;
        if list.is_empty() {
            return Err(Error::EmptyTuple);
        }
        list.iter().map(matrix_from_value).collect()
    } else {
        Ok(vec![matrix_from_value(value)?])
    }
}

pub fn matrix_to_value(m: &ComplexMatrix) -> Value {
    let data: Vec<Value> = m.row_major().iter().map(|z| json!([z.re, z.im])).collect();
    json!({ "dim": m.dim(), "data": data })
}

pub fn matrices_to_value(ms: &[ComplexMatrix]) -> Value {
    if ms.len() == 1 {
        matrix_to_value(&ms[0])
    } else {
        json!({ "matrices": ms.iter().map(matrix_to_value).collect::<Vec<_>>() })
    }
}

pub fn write_matrices(ms: &[ComplexMatrix]) -> String {
    serde_json::to_string_pretty(&matrices_to_value(ms)).expect("matrix serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_single_and_tuple() {
        let single = r#"{"dim": 2, "data": [[0,0],[1,0],[0,0],[0,0]]}"#;
        let ms = parse_matrices(single).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].get(0, 1), Complex64::new(1.0, 0.0));
        let tuple = format!(r#"{{"matrices": [{single}, {single}]}}"#);
        assert_eq!(parse_matrices(&tuple).unwrap().len(), 2);
    }

    #[test]
    fn reports_discrepancy_index() {
        let short = r#"{"dim": 2, "data": [[0,0],[1,0],[0,0]]}"#;
        match parse_matrices(short) {
            Err(Error::MalformedData { index, .. }) => assert_eq!(index, 3),
            other => panic!("{other:?}"),
        }
        let long = r#"{"dim": 1, "data": [[0,0],[1,0]]}"#;
        match parse_matrices(long) {
            Err(Error::MalformedData { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"dim": 2, "data": [[0,0],[1],[0,0],[0,0]]}"#;
        match parse_matrices(bad) {
            Err(Error::MalformedData { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrices(r#"{"matrices": []}"#).is_err());
        assert!(parse_matrices("not json").is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(dim in 1usize..5, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let ms: Vec<_> = (0..2).map(|_| ComplexMatrix::ginibre(dim, &mut rng)).collect();
            let back = parse_matrices(&write_matrices(&ms)).unwrap();
            prop_assert_eq!(back, ms);
        }
    }
}
