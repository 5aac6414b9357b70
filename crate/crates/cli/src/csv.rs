//! CSV matrix and point-set formats.
//!
//! One row or point per line, comma-separated decimal literals. Lines whose
//! first non-blank character is `#` are comments; blank lines are skipped.
//! There is no header. Files must be rectangular and every value finite;
//! violations are reported with their line number.
//!
//! Matrices are written with 17 significant decimal digits, which
//! round-trips binary64 exactly through text.

use std::fmt;

use matdec::{DenseMatrix, PointSet};

/// A parse failure, tagged with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    /// A field is not a decimal literal.
    BadNumber(String),
    /// A field is empty.
    EmptyField,
    /// A value parsed to NaN or infinity.
    NonFinite(String),
    /// Row width differs from the first data row.
    Ragged { expected: usize, got: usize },
    /// No data rows at all.
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::BadNumber(s) => {
                write!(f, "line {}: not a number: {:?}", self.line, s)
            }
            ParseErrorKind::EmptyField => write!(f, "line {}: empty field", self.line),
            ParseErrorKind::NonFinite(s) => {
                write!(f, "line {}: non-finite value: {:?}", self.line, s)
            }
            ParseErrorKind::Ragged { expected, got } => write!(
                f,
                "line {}: expected {} columns, got {}",
                self.line, expected, got
            ),
            ParseErrorKind::Empty => write!(f, "no data rows"),
        }
    }
}

impl std::error::Error for ParseError {}

fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let field = field.trim();
            if field.is_empty() {
                return Err(ParseError { line: line_no, kind: ParseErrorKind::EmptyField });
            }
            let value: f64 = field.parse().map_err(|_| ParseError {
                line: line_no,
                kind: ParseErrorKind::BadNumber(field.to_string()),
            })?;
            if !value.is_finite() {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::NonFinite(field.to_string()),
                });
            }
            row.push(value);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::Ragged { expected: w, got: row.len() },
                });
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError { line: 0, kind: ParseErrorKind::Empty });
    }
    Ok(rows)
}

/// Parses matrix CSV text: one matrix row per line.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, ParseError> {
    let rows = parse_rows(text)?;
    Ok(DenseMatrix::from_rows(&rows).expect("rows are rectangular, finite, and non-empty"))
}

/// Parses point-set CSV text: one point per line, dim = column count.
pub fn parse_pointset_csv(text: &str) -> Result<PointSet, ParseError> {
    let rows = parse_rows(text)?;
    let dim = rows[0].len();
    Ok(PointSet::new(dim, rows).expect("rows are rectangular, finite, and non-empty"))
}

/// Formats one value with 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{:.16e}", v)
}

/// Renders a matrix as CSV text.
pub fn format_matrix_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let fields: Vec<String> = m.row(i).iter().map(|&v| format_value(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Renders a list of scalars one per line.
pub fn format_column_csv(values: &[f64]) -> String {
    let mut out = String::new();
    for &v in values {
        out.push_str(&format_value(v));
        out.push('\n');
    }
    out
}

/// Renders a single vector as one CSV line.
pub fn format_row_csv(values: &[f64]) -> String {
    let fields: Vec<String> = values.iter().map(|&v| format_value(v)).collect();
    format!("{}\n", fields.join(","))
}
