//! Problem documents: JSON with schema `{"c": [...], "A": [[...]], "b": [...]}`
//! plus an optional `"name"`. Entries may be JSON numbers or strings; both are
//! parsed as exact decimals (`0.1` means one tenth, not the nearest double).

use std::fmt;

use feasolve::{rational_of_string, Problem, Rational, Scalar};
use serde_json::Value;

/// Parse failure with the path to the offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone)]
pub struct ParsedProblem {
    pub problem: Problem<Rational>,
    pub name: Option<String>,
}

/// Parse a problem document into an exact rational problem.
pub fn parse_problem(text: &str) -> Result<ParsedProblem, InputError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| InputError::new("$", format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| InputError::new("$", "document must be a JSON object"))?;

    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(InputError::new("name", "must be a string")),
    };

    let a_val = obj.get("A").ok_or_else(|| InputError::new("A", "missing key"))?;
    let rows = a_val
        .as_array()
        .ok_or_else(|| InputError::new("A", "must be an array of rows"))?;
    if rows.is_empty() {
        return Err(InputError::new("A", "must have at least one row"));
    }

    let mut a = Vec::with_capacity(rows.len());
    let mut n = None;
    for (i, row_val) in rows.iter().enumerate() {
        let row = row_val
            .as_array()
            .ok_or_else(|| InputError::new(format!("A[{i}]"), "must be an array"))?;
        match n {
            None => {
                if row.is_empty() {
                    return Err(InputError::new(format!("A[{i}]"), "must not be empty"));
                }
                n = Some(row.len());
            }
            Some(n) => {
                if row.len() != n {
                    return Err(InputError::new(
                        format!("A[{i}]"),
                        format!("has length {}, expected {n}", row.len()),
                    ));
                }
            }
        }
        let mut parsed = Vec::with_capacity(row.len());
        for (j, entry) in row.iter().enumerate() {
            parsed.push(scalar_from_value(entry, || format!("A[{i}][{j}]"))?);
        }
        a.push(parsed);
    }
    let n = n.expect("at least one row");

    let b_arr = obj
        .get("b")
        .ok_or_else(|| InputError::new("b", "missing key"))?
        .as_array()
        .ok_or_else(|| InputError::new("b", "must be an array"))?;
    if b_arr.len() != a.len() {
        return Err(InputError::new(
            "b",
            format!("has length {}, expected {} (one per row of A)", b_arr.len(), a.len()),
        ));
    }
    let mut b = Vec::with_capacity(b_arr.len());
    for (i, entry) in b_arr.iter().enumerate() {
        b.push(scalar_from_value(entry, || format!("b[{i}]"))?);
    }

    let c_arr = obj
        .get("c")
        .ok_or_else(|| InputError::new("c", "missing key"))?
        .as_array()
        .ok_or_else(|| InputError::new("c", "must be an array"))?;
    if c_arr.len() != n {
        return Err(InputError::new(
            "c",
            format!("has length {}, expected {} (one per column of A)", c_arr.len(), n),
        ));
    }
    let mut c = Vec::with_capacity(c_arr.len());
    for (j, entry) in c_arr.iter().enumerate() {
        c.push(scalar_from_value(entry, || format!("c[{j}]"))?);
    }

    let problem = Problem::new(a, b, c)
        .map_err(|e| InputError::new("$", format!("invalid problem: {e}")))?;
    Ok(ParsedProblem { problem, name })
}

fn scalar_from_value(
    value: &Value,
    path: impl Fn() -> String,
) -> Result<Rational, InputError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(InputError::new(path(), "expected a number or a scalar string")),
    };
    rational_of_string(&text).map_err(|e| InputError::new(path(), format!("{e} ({text:?})")))
}

/// Emit a problem as a canonical document: every scalar in `"p/q"` text form.
pub fn problem_to_document(p: &Problem<Rational>, name: Option<&str>) -> Value {
    let mut obj = serde_json::Map::new();
    if let Some(name) = name {
        obj.insert("name".into(), Value::String(name.into()));
    }
    obj.insert(
        "c".into(),
        Value::Array(p.c.iter().map(|v| Value::String(v.to_string())).collect()),
    );
    obj.insert(
        "A".into(),
        Value::Array(
            p.a.iter()
                .map(|row| {
                    Value::Array(row.iter().map(|v| Value::String(v.to_string())).collect())
                })
                .collect(),
        ),
    );
    obj.insert(
        "b".into(),
        Value::Array(p.b.iter().map(|v| Value::String(v.to_string())).collect()),
    );
    Value::Object(obj)
}

/// Convert an exact problem to the float arithmetic.
pub fn to_float_problem(p: &Problem<Rational>) -> Problem<f64> {
    Problem {
        a: p.a
            .iter()
            .map(|row| row.iter().map(Scalar::to_f64_lossy).collect())
            .collect(),
        b: p.b.iter().map(Scalar::to_f64_lossy).collect(),
        c: p.c.iter().map(Scalar::to_f64_lossy).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_numbers() {
        let doc = r#"{"c":[0,0],"A":[[1,0],[0,1]],"b":[3,4]}"#;
        let parsed = parse_problem(doc).unwrap();
        assert_eq!(parsed.problem.num_rows(), 2);
        assert_eq!(parsed.problem.num_cols(), 2);
        assert_eq!(parsed.problem.b, vec![Rational::from_int(3), Rational::from_int(4)]);
    }

    #[test]
    fn parses_strings_and_decimals_exactly() {
        let doc = r#"{"c":[1],"A":[["1/2"]],"b":["0.25"]}"#;
        let parsed = parse_problem(doc).unwrap();
        assert_eq!(parsed.problem.a[0][0], rational_of_string("1/2").unwrap());
        assert_eq!(parsed.problem.b[0], rational_of_string("1/4").unwrap());
        // A bare JSON decimal is read as the exact decimal too.
        let doc = r#"{"c":[1],"A":[[0.1]],"b":[1]}"#;
        let parsed = parse_problem(doc).unwrap();
        assert_eq!(parsed.problem.a[0][0], rational_of_string("1/10").unwrap());
    }

    #[test]
    fn rejects_objective_length_mismatch() {
        let doc = r#"{"c":[1],"A":[[1,2]],"b":[1]}"#;
        let err = parse_problem(doc).unwrap_err();
        assert_eq!(err.path, "c");
    }

    #[test]
    fn rejects_ragged_matrix_with_path() {
        let doc = r#"{"c":[0,0,0],"A":[[1,2,3],[4,5]],"b":[1,1]}"#;
        let err = parse_problem(doc).unwrap_err();
        assert_eq!(err.path, "A[1]");
    }

    #[test]
    fn rejects_malformed_scalar_with_path() {
        let doc = r#"{"c":[0,0],"A":[[1,"x"],[0,1]],"b":[1,1]}"#;
        let err = parse_problem(doc).unwrap_err();
        assert_eq!(err.path, "A[0][1]");
    }

    #[test]
    fn document_round_trips() {
        let doc = r#"{"c":[1,"1/3"],"A":[[1,0],[0,"0.5"]],"b":[3,"-4/6"]}"#;
        let parsed = parse_problem(doc).unwrap();
        let emitted = problem_to_document(&parsed.problem, None).to_string();
        let reparsed = parse_problem(&emitted).unwrap();
        assert_eq!(parsed.problem, reparsed.problem);
    }
}
