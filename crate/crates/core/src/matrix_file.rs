//! Plain-text matrix files.
//!
//! The first line holds the dimensions `rows cols`; each following line holds
//! one row of whitespace-separated entry expressions (no spaces inside an
//! entry). Blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! # two-site Hubbard model
//! 4 4
//! U t t 0
//! t 0 0 t
//! t 0 0 t
//! 0 t t U
//! ```

use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::scalar::{ParseError, PolyScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixFileError {
    #[error("line {line}: expected a header 'rows cols'")]
    BadHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}, entry {entry}: {source}")]
    Entry {
        line: usize,
        entry: usize,
        #[source]
        source: ParseError,
    },
}

pub fn parse_matrix_file(text: &str) -> Result<ExactMatrix, MatrixFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(MatrixFileError::MissingHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| MatrixFileError::BadHeader { line: header_line })?;
    let [rows, cols] = dims[..] else {
        return Err(MatrixFileError::BadHeader { line: header_line });
    };
    if rows == 0 || cols == 0 {
        return Err(MatrixFileError::BadHeader { line: header_line });
    }
    let mut body = Vec::with_capacity(rows);
    for (line, text) in lines {
        if body.len() == rows {
            return Err(MatrixFileError::RowCount {
                expected: rows,
                found: body.len() + 1,
            });
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(MatrixFileError::RowLength {
                line,
                expected: cols,
                found: tokens.len(),
            });
        }
        let row = tokens
            .iter()
            .enumerate()
            .map(|(k, tok)| {
                PolyScalar::parse(tok).map_err(|source| MatrixFileError::Entry {
                    line,
                    entry: k + 1,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        body.push(row);
    }
    if body.len() != rows {
        return Err(MatrixFileError::RowCount {
            expected: rows,
            found: body.len(),
        });
    }
    Ok(ExactMatrix::from_rows(body).expect("dimensions checked"))
}

/// Writes `m` in the format [`parse_matrix_file`] reads.
pub fn write_matrix_file(m: &ExactMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let cells: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HUBBARD: &str = "# two-site Hubbard\n4 4\nU t t 0\nt 0 0 t\n\nt 0 0 t\n0 t t U\n";

    #[test]
    fn reads_hubbard() {
        let m = parse_matrix_file(HUBBARD).unwrap();
        assert_eq!(m.shape(), (4, 4));
        assert_eq!(*m.get(3, 3), PolyScalar::var("U"));
        assert_eq!(parse_matrix_file(&write_matrix_file(&m)).unwrap(), m);
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(parse_matrix_file(""), Err(MatrixFileError::MissingHeader));
        assert_eq!(
            parse_matrix_file("2\n1 2\n"),
            Err(MatrixFileError::BadHeader { line: 1 })
        );
        assert_eq!(
            parse_matrix_file("2 2\n1 2\n3\n"),
            Err(MatrixFileError::RowLength {
                line: 3,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_matrix_file("2 2\n1 2\n"),
            Err(MatrixFileError::RowCount {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_matrix_file("1 1\n1 \n2\n"),
            Err(MatrixFileError::RowCount { .. })
        ));
        let err = parse_matrix_file("1 2\n1 a+*b\n").unwrap_err();
        assert!(matches!(
            err,
            MatrixFileError::Entry {
                line: 2,
                entry: 2,
                ..
            }
        ));
    }

    #[test]
    fn rectangular_is_allowed() {
        let m = parse_matrix_file("1 3\n1 i -1/2*a\n").unwrap();
        assert_eq!(m.shape(), (1, 3));
    }
}
