//! Dense matrices over [`PolyScalar`].

use std::fmt;

use thiserror::Error;

use crate::scalar::{GaussRational, PolyScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("star product needs 2x2 operands, got {rows}x{cols}")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("matrix dimensions must be positive")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },
}

/// Row-major dense matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<PolyScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![PolyScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, PolyScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PolyScalar>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != ncols {
                return Err(MatrixError::RaggedRows {
                    row,
                    len: r.len(),
                    expected: ncols,
                });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor for integer matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| PolyScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &PolyScalar {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: PolyScalar) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[PolyScalar] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[PolyScalar] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PolyScalar::is_zero)
    }

    pub fn map(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[r * rhs.cols + c] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        op: &'static str,
        f: impl Fn(&PolyScalar, &PolyScalar) -> PolyScalar,
    ) -> Result<ExactMatrix, MatrixError> {
        if self.shape() != rhs.shape() {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &PolyScalar) -> ExactMatrix {
        self.map(|e| e * s)
    }

    /// Division by a nonzero rational is multiplication by its inverse.
    pub fn scale_rational(&self, r: &Rational) -> ExactMatrix {
        let c = GaussRational::real(r.clone());
        self.map(|e| e.scale(&c))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Conjugate transpose with all parameters taken as real.
    pub fn dagger(&self) -> ExactMatrix {
        self.transpose().map(PolyScalar::conj)
    }

    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.get(ar, ac);
                if a.is_zero() {
                    continue;
                }
                for br in 0..rhs.rows {
                    for bc in 0..rhs.cols {
                        out.set(ar * rhs.rows + br, ac * rhs.cols + bc, a * rhs.get(br, bc));
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence, left to right.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Option<ExactMatrix> {
        factors
            .into_iter()
            .fold(None, |acc: Option<ExactMatrix>, m| {
                Some(match acc {
                    None => m.clone(),
                    Some(a) => a.kron(m),
                })
            })
    }

    /// Block-diagonal placement of `self` then `rhs`.
    pub fn direct_sum(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// Star product of two 2x2 matrices: the entries of `self` go to the four
    /// corners of a 4x4 matrix, `rhs` fills the central 2x2 block.
    pub fn star2(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        for m in [self, rhs] {
            if m.shape() != (2, 2) {
                return Err(MatrixError::NotTwoByTwo {
                    rows: m.rows,
                    cols: m.cols,
                });
            }
        }
        let mut out = Self::zeros(4, 4);
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            out.set(3 * r, 3 * c, self.get(r, c).clone());
            out.set(1 + r, 1 + c, rhs.get(r, c).clone());
        }
        Ok(out)
    }

    pub fn is_hermitian(&self) -> Result<bool, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if *self.get(r, c) != self.get(c, r).conj() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True for a square 0/1 matrix with exactly one 1 in every row and column.
    pub fn is_permutation_matrix(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut col_hits = vec![0usize; n];
        for r in 0..n {
            let mut row_hits = 0;
            for c in 0..n {
                let e = self.get(r, c);
                if e.is_one() {
                    row_hits += 1;
                    col_hits[c] += 1;
                } else if !e.is_zero() {
                    return false;
                }
            }
            if row_hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyScalar {
        PolyScalar::parse(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn sigma1() -> ExactMatrix {
        mat(&[&["0", "1"], &["1", "0"]])
    }
    fn sigma2() -> ExactMatrix {
        mat(&[&["0", "-i"], &["i", "0"]])
    }
    fn sigma3() -> ExactMatrix {
        mat(&[&["1", "0"], &["0", "-1"]])
    }

    fn hubbard() -> ExactMatrix {
        mat(&[
            &["U", "t", "t", "0"],
            &["t", "0", "0", "t"],
            &["t", "0", "0", "t"],
            &["0", "t", "t", "U"],
        ])
    }

    // entry-wise product written out independently of matmul
    fn oracle_mul_2x2(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        let e = |m: &ExactMatrix, r, c| m.get(r, c).clone();
        ExactMatrix::from_rows(vec![
            vec![
                e(a, 0, 0) * e(b, 0, 0) + e(a, 0, 1) * e(b, 1, 0),
                e(a, 0, 0) * e(b, 0, 1) + e(a, 0, 1) * e(b, 1, 1),
            ],
            vec![
                e(a, 1, 0) * e(b, 0, 0) + e(a, 1, 1) * e(b, 1, 0),
                e(a, 1, 0) * e(b, 0, 1) + e(a, 1, 1) * e(b, 1, 1),
            ],
        ])
        .unwrap()
    }

    #[test]
    fn pauli_products() {
        assert_eq!(
            sigma1().matmul(&sigma1()).unwrap(),
            ExactMatrix::identity(2)
        );
        let expected = sigma3().scale(&PolyScalar::i());
        assert_eq!(sigma1().matmul(&sigma2()).unwrap(), expected);
        assert_eq!(oracle_mul_2x2(&sigma1(), &sigma2()), expected);
        assert_eq!(
            ExactMatrix::identity(4).matmul(&hubbard()).unwrap(),
            hubbard()
        );
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let err = ExactMatrix::zeros(2, 3)
            .matmul(&ExactMatrix::zeros(2, 3))
            .unwrap_err();
        assert!(matches!(err, MatrixError::DimensionMismatch { .. }));
    }

    #[test]
    fn transpose_and_dagger() {
        assert_eq!(
            sigma2().transpose(),
            sigma2().scale(&PolyScalar::from_int(-1))
        );
        assert_eq!(sigma2().dagger(), sigma2());
        assert_eq!(hubbard().transpose().transpose(), hubbard());
        assert_eq!(hubbard().dagger(), hubbard());
    }

    #[test]
    fn kron_and_direct_sum() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ExactMatrix::identity(4));
        assert_eq!(i2.direct_sum(&i2), ExactMatrix::identity(4));
        let p1 = i2.direct_sum(&sigma1());
        assert_eq!(
            p1,
            ExactMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
                .unwrap()
        );
        let k = sigma1().kron(&sigma3());
        assert_eq!(
            k,
            ExactMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, -1, 0, 0]])
                .unwrap()
        );
    }

    #[test]
    fn star_product() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(i2.star2(&i2).unwrap(), ExactMatrix::identity(4));
        let swap =
            ExactMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
                .unwrap();
        assert_eq!(i2.star2(&sigma1()).unwrap(), swap);
        let anti =
            ExactMatrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]])
                .unwrap();
        assert_eq!(sigma1().star2(&sigma1()).unwrap(), anti);
        assert!(matches!(
            ExactMatrix::identity(3).star2(&i2),
            Err(MatrixError::NotTwoByTwo { rows: 3, cols: 3 })
        ));
    }

    #[test]
    fn hermiticity() {
        assert!(sigma2().is_hermitian().unwrap());
        assert!(hubbard().is_hermitian().unwrap());
        assert!(!ExactMatrix::from_ints(&[&[0, 1], &[0, 0]])
            .unwrap()
            .is_hermitian()
            .unwrap());
        assert!(ExactMatrix::zeros(2, 3).is_hermitian().is_err());
        assert!(!mat(&[&["i*t"]]).is_hermitian().unwrap());
    }

    #[test]
    fn permutation_matrix_detection() {
        assert!(sigma1().is_permutation_matrix());
        assert!(!sigma3().is_permutation_matrix());
        assert!(!ExactMatrix::from_ints(&[&[1, 1], &[0, 0]])
            .unwrap()
            .is_permutation_matrix());
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(ExactMatrix::from_rows(vec![]), Err(MatrixError::Empty));
        assert!(matches!(
            ExactMatrix::from_ints(&[&[1, 2], &[3]]),
            Err(MatrixError::RaggedRows { row: 1, .. })
        ));
    }
}
