//! Plain-text matrix format.
//!
//! ```text
//! # comment
//! rows cols q
//! a11 a12 ...
//! ...
//! ```

use super::field::FieldSpec;
use super::matrix::FqMatrix;
use crate::error::{Error, Result};

pub fn matrix_from_text(src: &str) -> Result<FqMatrix> {
    let mut lines =
        src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_ints = |line: usize, l: &str| -> Result<Vec<u32>> {
        l.split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
            .collect()
    };

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
    let h = parse_ints(hline, header)?;
    let [rows, cols, q] = h[..] else {
        return Err(Error::Parse { line: hline, msg: "header must be `rows cols q`".into() });
    };
    let field = FieldSpec::from_order(q)?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("expected {rows} matrix rows") })?;
        let row = parse_ints(ln, l)?;
        if row.len() != cols {
            return Err(Error::Parse { line: ln, msg: format!("expected {cols} entries, got {}", row.len()) });
        }
        data.extend(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing data after matrix".into() });
    }
    FqMatrix::from_flat(&field, rows, cols, data)
}

pub fn matrix_to_text(m: &FqMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.field().order());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
