//! Projectors built from involutive symmetries and the invariant subspaces
//! they cut out.
//!
//! Basis vectors are primitive integer vectors (entries with gcd 1, first
//! nonzero entry positive). Unit normalization would need square roots, which
//! the exact scalar field does not contain.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::matrix::ExactMatrix;
use crate::perm::Perm;
use crate::scalar::{GaussRational, Monomial, PolyScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("permutation has order {0}, projectors need an involution")]
    NotInvolution(usize),
    #[error("entry ({row}, {col}) depends on parameters")]
    ParametricEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not real")]
    NonRealEntry { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("{got} vectors do not form a basis of a {dim}-dimensional space")]
    NotFullBasis { got: usize, dim: usize },
    #[error("subspace {0} is not invariant")]
    NotInvariant(usize),
}

/// `pi1 = (I + P) / 2` and `pi2 = (I - P) / 2` for an involution `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorPair {
    pub pi1: ExactMatrix,
    pub pi2: ExactMatrix,
}

pub fn projectors_from_involution(p: &Perm) -> Result<ProjectorPair, SubspaceError> {
    let order = p.order();
    if order > 2 {
        return Err(SubspaceError::NotInvolution(order));
    }
    let id = ExactMatrix::identity(p.len());
    let pm = p.to_matrix();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Ok(ProjectorPair {
        pi1: id.add(&pm).expect("same shape").scale_rational(&half),
        pi2: id.sub(&pm).expect("same shape").scale_rational(&half),
    })
}

/// Linearly independent primitive integer vectors spanning a subspace of an
/// `dim`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl SubspaceBasis {
    /// Normalizes each vector to primitive form and checks independence.
    pub fn new(dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self, SubspaceError> {
        let mut normalized = Vec::with_capacity(vectors.len());
        for v in &vectors {
            if v.len() != dim {
                return Err(SubspaceError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            let prim = linalg::primitive(&to_rationals(v)).ok_or(SubspaceError::ZeroVector)?;
            normalized.push(prim);
        }
        let rows: Vec<Vec<Rational>> = normalized.iter().map(|v| to_rationals(v)).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(SubspaceError::LinearlyDependent);
        }
        Ok(SubspaceBasis {
            dim,
            vectors: normalized,
        })
    }

    pub fn from_i64(dim: usize, vectors: &[&[i64]]) -> Result<Self, SubspaceError> {
        Self::new(
            dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn standard(dim: usize) -> Self {
        SubspaceBasis {
            dim,
            vectors: (0..dim)
                .map(|k| {
                    (0..dim)
                        .map(|c| {
                            if c == k {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        SubspaceBasis {
            dim,
            vectors: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the spanned subspace.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

fn constant_rational(m: &ExactMatrix, row: usize, col: usize) -> Result<Rational, SubspaceError> {
    let c = m
        .get(row, col)
        .as_constant()
        .ok_or(SubspaceError::ParametricEntry { row, col })?;
    if !c.is_real() {
        return Err(SubspaceError::NonRealEntry { row, col });
    }
    Ok(c.re)
}

/// Canonical basis of the column space of a constant real matrix: the
/// nonzero rows of the reduced row echelon form of its transpose, scaled to
/// primitive integer vectors.
pub fn column_space_basis(m: &ExactMatrix) -> Result<SubspaceBasis, SubspaceError> {
    let mut rows = (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| constant_rational(m, r, c)).collect())
        .collect::<Result<Vec<Vec<Rational>>, _>>()?;
    linalg::rref(&mut rows);
    let vectors = rows
        .iter()
        .map(|r| linalg::primitive(r).expect("rref rows are nonzero"))
        .collect();
    Ok(SubspaceBasis {
        dim: m.rows(),
        vectors,
    })
}

/// Real vectors `x` with `M x = 0` for every value of the parameters: the
/// common kernel of the coefficient matrices of all parameter monomials,
/// real and imaginary parts taken separately.
pub fn constant_kernel(m: &ExactMatrix) -> SubspaceBasis {
    let mut monomials: BTreeSet<&Monomial> = BTreeSet::new();
    for e in m.entries() {
        monomials.extend(e.terms().map(|(mono, _)| mono));
    }
    let mut rows = Vec::new();
    for mono in monomials {
        for r in 0..m.rows() {
            let coeffs: Vec<GaussRational> = m.row(r).iter().map(|e| e.coefficient(mono)).collect();
            rows.push(coeffs.iter().map(|c| c.re.clone()).collect());
            rows.push(coeffs.iter().map(|c| c.im.clone()).collect());
        }
    }
    let vectors = linalg::kernel(&rows, m.cols())
        .iter()
        .map(|v| linalg::primitive(v).expect("kernel vectors are nonzero"))
        .collect();
    SubspaceBasis {
        dim: m.cols(),
        vectors,
    }
}

fn apply(h: &ExactMatrix, v: &[BigInt]) -> Vec<PolyScalar> {
    (0..h.rows())
        .map(|r| {
            let mut acc = PolyScalar::zero();
            for (entry, x) in h.row(r).iter().zip(v) {
                if !x.is_zero() {
                    acc += &entry.scale_rational(&Rational::from_integer(x.clone()));
                }
            }
            acc
        })
        .collect()
}

/// Whether `H v` lies in the span of `b` for every `v` in `b`, with
/// combination coefficients allowed to be polynomials in the parameters.
///
/// Since the basis is constant, `H v` is in the span iff the coefficient
/// vector of each parameter monomial is, real and imaginary parts separately.
pub fn is_invariant_subspace(h: &ExactMatrix, b: &SubspaceBasis) -> Result<bool, SubspaceError> {
    if !h.is_square() {
        return Err(SubspaceError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if h.rows() != b.dim {
        return Err(SubspaceError::DimensionMismatch {
            expected: h.rows(),
            got: b.dim,
        });
    }
    let mut reduced: Vec<Vec<Rational>> = b.vectors.iter().map(|v| to_rationals(v)).collect();
    let pivots = linalg::rref(&mut reduced);
    for v in &b.vectors {
        let image = apply(h, v);
        let mut monomials: BTreeSet<&Monomial> = BTreeSet::new();
        for e in &image {
            monomials.extend(e.terms().map(|(m, _)| m));
        }
        for mono in monomials {
            let coeffs: Vec<GaussRational> = image.iter().map(|e| e.coefficient(mono)).collect();
            let re: Vec<Rational> = coeffs.iter().map(|c| c.re.clone()).collect();
            let im: Vec<Rational> = coeffs.iter().map(|c| c.im.clone()).collect();
            if !linalg::in_row_space(&reduced, &pivots, &re)
                || !linalg::in_row_space(&reduced, &pivots, &im)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S^-1 H S` where the columns of `S` are the vectors of `b1` followed by
/// those of `b2`. Both subspaces must be invariant, so the result is block
/// diagonal with blocks of sizes `b1.len()` and `b2.len()`.
pub fn block_form(
    h: &ExactMatrix,
    b1: &SubspaceBasis,
    b2: &SubspaceBasis,
) -> Result<ExactMatrix, SubspaceError> {
    let n = h.rows();
    if !h.is_square() {
        return Err(SubspaceError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    for b in [b1, b2] {
        if b.dim != n {
            return Err(SubspaceError::DimensionMismatch {
                expected: n,
                got: b.dim,
            });
        }
    }
    let columns: Vec<Vec<Rational>> = b1
        .vectors
        .iter()
        .chain(&b2.vectors)
        .map(|v| to_rationals(v))
        .collect();
    if columns.len() != n || linalg::rank(&columns) != n {
        return Err(SubspaceError::NotFullBasis {
            got: columns.len(),
            dim: n,
        });
    }
    for (which, b) in [(1, b1), (2, b2)] {
        if !is_invariant_subspace(h, b)? {
            return Err(SubspaceError::NotInvariant(which));
        }
    }
    // columns[k] is column k of S, i.e. row k of S^T
    let s: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| columns[c][r].clone()).collect())
        .collect();
    let s_inv = linalg::inverse(&s).expect("full rank checked");
    let to_matrix = |m: &[Vec<Rational>]| {
        ExactMatrix::from_rows(
            m.iter()
                .map(|row| row.iter().cloned().map(PolyScalar::from_rational).collect())
                .collect(),
        )
        .expect("non-empty square")
    };
    let out = to_matrix(&s_inv)
        .matmul(h)
        .and_then(|m| m.matmul(&to_matrix(&s)))
        .expect("square operands");
    Ok(out)
}

/// Whether `H v = lambda v` exactly.
pub fn verify_eigenpair(
    h: &ExactMatrix,
    lambda: &PolyScalar,
    v: &[BigInt],
) -> Result<bool, SubspaceError> {
    if !h.is_square() {
        return Err(SubspaceError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if v.len() != h.cols() {
        return Err(SubspaceError::DimensionMismatch {
            expected: h.cols(),
            got: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(SubspaceError::ZeroVector);
    }
    let image = apply(h, v);
    Ok(image
        .iter()
        .zip(v)
        .all(|(hv, x)| *hv == lambda.scale_rational(&Rational::from_integer(x.clone()))))
}

/// True iff every entry outside the two diagonal blocks (sizes `first` and
/// `n - first`) is zero.
pub fn is_block_diagonal(m: &ExactMatrix, first: usize) -> bool {
    (0..m.rows())
        .all(|r| (0..m.cols()).all(|c| (r < first) == (c < first) || m.get(r, c).is_zero()))
}

/// The diagonal block spanning rows and columns `range`.
pub fn sub_block(m: &ExactMatrix, range: std::ops::Range<usize>) -> Option<ExactMatrix> {
    if range.is_empty() {
        return None;
    }
    let rows = range
        .clone()
        .map(|r| range.clone().map(|c| m.get(r, c).clone()).collect())
        .collect();
    ExactMatrix::from_rows(rows).ok()
}
