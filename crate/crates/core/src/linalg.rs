//! Gauss-Jordan elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Pivots are chosen as the first nonzero entry at or below the current row.
/// Returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for k in 0..rows.len() {
            if k == r || rows[k][col].is_zero() {
                continue;
            }
            let factor = rows[k][col].clone();
            for c in 0..ncols {
                let delta = &factor * &rows[r][c];
                rows[k][c] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut copy = rows.to_vec();
    rref(&mut copy).len()
}

/// Whether `x` lies in the row space of a matrix already in RREF with the
/// given pivots.
pub(crate) fn in_row_space(reduced: &[Vec<Rational>], pivots: &[usize], x: &[Rational]) -> bool {
    let mut residual = x.to_vec();
    for (row, &col) in reduced.iter().zip(pivots) {
        if residual[col].is_zero() {
            continue;
        }
        let factor = residual[col].clone();
        for (rc, v) in residual.iter_mut().zip(row) {
            *rc -= &factor * v;
        }
    }
    residual.iter().all(Zero::is_zero)
}

/// Basis of `{v : A v = 0}` for `A` with `ncols` columns, one vector per free
/// column (free entry 1, other free entries 0).
pub(crate) fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(&mut reduced);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut out = row.clone();
            out.extend((0..n).map(|c| {
                if c == r {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            out
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Scales a nonzero rational vector to integers with gcd 1 and a positive
/// first nonzero entry. Returns `None` for the zero vector.
pub(crate) fn primitive(v: &[Rational]) -> Option<Vec<BigInt>> {
    let first = v.iter().find(|x| !x.is_zero())?;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for x in ints.iter_mut() {
        *x = &*x / &gcd * &sign;
    }
    Some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qs(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rref_and_rank() {
        let mut m = qs(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        let piv = rref(&mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, qs(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(rank(&qs(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&qs(&[&[1, -1, 1]]), 3);
        assert_eq!(k, qs(&[&[1, 1, 0], &[-1, 0, 1]]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qs(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, -1, 0], &[1, 0, 0, -1]]);
        let inv = inverse(&m).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let dot: Rational = (0..4).map(|k| &m[r][k] * &inv[k][c]).sum();
                assert_eq!(dot, if r == c { q(1) } else { q(0) });
            }
        }
        assert!(inverse(&qs(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![
            Rational::new((-1).into(), 2.into()),
            q(0),
            Rational::new(3.into(), 4.into()),
        ];
        assert_eq!(
            primitive(&v).unwrap(),
            vec![BigInt::from(2), 0.into(), (-3).into()]
        );
        assert!(primitive(&[q(0), q(0)]).is_none());
    }

    #[test]
    fn row_space_membership() {
        let mut m = qs(&[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        let piv = rref(&mut m);
        assert!(in_row_space(&m, &piv, &[q(2), q(3), q(3), q(2)]));
        assert!(!in_row_space(&m, &piv, &[q(1), q(0), q(0), q(0)]));
    }
}
