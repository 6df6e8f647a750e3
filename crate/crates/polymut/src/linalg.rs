//! Small exact linear-algebra helpers over the rationals.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::rational::Rational;
use crate::vector::primitive_part;

/// Rank of a list of rational row vectors.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..cols {
                    let delta = &m[rank][c] * &factor;
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &m[col][c] * &factor;
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Canonical basis of the subspace spanned by integer rows: the reduced row
/// echelon form scaled back to primitive integer rows with positive pivots.
/// Depends only on the spanned subspace, not on the input basis.
pub(crate) fn canonical_subspace_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot) = (next_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, pivot);
        let inv = m[next_row][col].recip();
        for c in col..cols {
            m[next_row][c] *= inv.clone();
        }
        for r in 0..m.len() {
            if r != next_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &m[next_row][c] * &factor;
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(next_row);
        next_row += 1;
        if next_row == m.len() {
            break;
        }
    }
    let mut basis = Vec::with_capacity(pivots.len());
    for &row in &pivots {
        let scale = crate::rational::denominator_lcm(&m[row]);
        let ints: Vec<BigInt> = m[row]
            .iter()
            .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        let mut prim = primitive_part(&ints);
        if let Some(first) = prim.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                prim = prim.iter().map(|c| -c).collect();
            }
        }
        basis.push(prim);
    }
    basis
}
