//! JSON matrix files.
//!
//! ```json
//! {"scalar": "rational", "rows": 2, "cols": 2, "entries": [["1", "1/2"], ["0", "-3/4"]]}
//! {"scalar": "complex", "rows": 2, "cols": 1, "entries": [[[0.5, 0.0]], [[0.0, -1.0]]]}
//! ```
//!
//! `entries` holds `rows` arrays of `cols` entries each. Rational entries are
//! `"p/q"` or `"p"` strings (bare JSON integers are also read); complex entries
//! are `[re, im]` pairs.

use std::fmt;

use permlab_core::{AnyMatrix, Complex64, Rational, RectMatrix};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// `(row, col)` of the offending entry, when there is one.
    pub location: Option<(usize, usize)>,
    pub message: String,
}

impl ParseError {
    fn new(message: impl Into<String>) -> Self {
        ParseError { location: None, message: message.into() }
    }

    fn at(row: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { location: Some((row, col)), message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError { location: Some((r, c)), message } => write!(f, "entry at row {r}, column {c}: {message}"),
            ParseError { location: None, message } => f.write_str(message),
        }
    }
}

impl std::error::Error for ParseError {}

fn dimension(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize, ParseError> {
    let v = obj.get(key).ok_or_else(|| ParseError::new(format!("missing field {key:?}")))?;
    v.as_u64()
        .and_then(|d| usize::try_from(d).ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| ParseError::new(format!("field {key:?} must be a positive integer, got {v}")))
}

fn rational_entry(v: &Value, row: usize, col: usize) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|e| ParseError::at(row, col, format!("{s:?}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| ParseError::at(row, col, format!("{n} is not an integer; write fractions as \"p/q\""))),
        other => Err(ParseError::at(row, col, format!("expected a \"p/q\" string, got {other}"))),
    }
}

fn complex_entry(v: &Value, row: usize, col: usize) -> Result<Complex64, ParseError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| ParseError::at(row, col, format!("expected [re, im], got {v}")))?;
    let part = |i: usize| {
        pair[i]
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| ParseError::at(row, col, format!("non-numeric part {}", pair[i])))
    };
    Ok(Complex64::new(part(0)?, part(1)?))
}

fn grid<T>(
    entries: &[Value],
    rows: usize,
    cols: usize,
    entry: impl Fn(&Value, usize, usize) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    if entries.len() != rows {
        return Err(ParseError::new(format!("\"rows\" is {rows} but entries has {} rows", entries.len())));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for (r, line) in entries.iter().enumerate() {
        let line = line.as_array().ok_or_else(|| ParseError::new(format!("row {r} is not an array")))?;
        if line.len() != cols {
            return Err(ParseError::new(format!("\"cols\" is {cols} but row {r} has {} entries", line.len())));
        }
        for (c, v) in line.iter().enumerate() {
            out.push(entry(v, r, c)?);
        }
    }
    Ok(out)
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let root: Value = serde_json::from_str(text).map_err(|e| ParseError::new(format!("invalid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| ParseError::new("top level must be an object"))?;
    let rows = dimension(obj, "rows")?;
    let cols = dimension(obj, "cols")?;
    if cols > rows {
        return Err(ParseError::new(format!("need cols <= rows, got {rows}x{cols}")));
    }
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::new("missing or non-array field \"entries\""))?;
    let shape_err = |e: permlab_core::Error| ParseError::new(e.to_string());
    match obj.get("scalar").and_then(Value::as_str) {
        Some("rational") => {
            let flat = grid(entries, rows, cols, rational_entry)?;
            RectMatrix::new(rows, cols, flat).map(AnyMatrix::Rational).map_err(shape_err)
        }
        Some("complex") => {
            let flat = grid(entries, rows, cols, complex_entry)?;
            RectMatrix::new(rows, cols, flat).map(AnyMatrix::Complex).map_err(shape_err)
        }
        Some(other) => Err(ParseError::new(format!("unknown scalar {other:?}; expected \"rational\" or \"complex\""))),
        None => Err(ParseError::new("missing string field \"scalar\"")),
    }
}

/// Serializes in the format [`parse_matrix`] reads; complex parts round-trip exactly.
pub fn write_matrix(m: &AnyMatrix) -> String {
    let (scalar, entries): (&str, Vec<Value>) = match m {
        AnyMatrix::Rational(z) => (
            "rational",
            (0..z.rows()).map(|j| Value::from(z.row(j).iter().map(|x| x.to_string()).collect::<Vec<_>>())).collect(),
        ),
        AnyMatrix::Complex(z) => (
            "complex",
            (0..z.rows())
                .map(|j| Value::from(z.row(j).iter().map(|x| json!([x.re, x.im])).collect::<Vec<_>>()))
                .collect(),
        ),
    };
    let doc = json!({"scalar": scalar, "rows": m.rows(), "cols": m.cols(), "entries": entries});
    let mut s = serde_json::to_string_pretty(&doc).expect("finite entries serialize");
    s.push('\n');
    s
}
