//! Fraction-free (Bareiss) elimination and exact kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Zero};

use crate::scalar::{common_denominator, Rational};

/// Reduces `rows` in place to row echelon form with one-step fraction-free
/// elimination and returns the pivot column of each nonzero row.
///
/// Every division performed is exact in any integral domain, so over the
/// integers no fractions ever appear.
pub fn fraction_free_echelon<T: Clone + Num>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;

    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let (done, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &done[r];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[c], T::zero());
            for (x, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *x = (pivot.clone() * x.clone() - lead.clone() * p.clone()) / prev.clone();
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and a kernel basis of a rational matrix.
///
/// Rows are cleared of denominators and eliminated over the integers. One basis
/// vector per free column (in increasing column order), each scaled so its first
/// nonzero coordinate is one.
pub fn rational_kernel(matrix: &[Vec<Rational>], width: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = common_denominator(row.iter());
            row.iter()
                .map(|v| {
                    let (q, r) = (v.numer() * &l).div_rem(v.denom());
                    debug_assert!(r.is_zero());
                    q
                })
                .collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|v| !v.is_zero()))
        .collect();
    let pivots = fraction_free_echelon(&mut rows);
    let rank = pivots.len();

    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); width];
        x[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let sum = (pc + 1..width).fold(Rational::zero(), |acc, j| {
                acc + Rational::from_integer(rows[r][j].clone()) * x[j].clone()
            });
            x[pc] = -sum / Rational::from_integer(rows[r][pc].clone());
        }
        normalise_leading(&mut x);
        basis.push(x);
    }
    (rank, basis)
}

/// Scales so that the first nonzero coordinate is one.
pub fn normalise_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        for c in v.iter_mut() {
            *c = c.clone() / lead.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_last_pivot_is_determinant() {
        let mut m = bi(&[&[2, 3, 1], &[4, 1, -3], &[-2, 5, 7]]);
        let piv = fraction_free_echelon(&mut m);
        assert_eq!(piv, vec![0, 1]); // singular: row3 = -2 row1 + ... rank 2
        let mut m = bi(&[&[2, 3, 1], &[4, 1, -3], &[-2, 5, 8]]);
        let piv = fraction_free_echelon(&mut m);
        assert_eq!(piv, vec![0, 1, 2]);
        // det = 2(8+15) - 3(32-6) + 1(20+2) = 46 - 78 + 22 = -10
        assert_eq!(m[2][2], BigInt::from(-10));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let (rank, basis) = rational_kernel(&m, 3);
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![vec![int(1), ratio(-1, 2), int(0)], vec![int(1), int(0), ratio(-1, 3)]]);
    }

    #[test]
    fn kernel_with_fractions_and_skipped_column() {
        let m = vec![vec![int(0), ratio(1, 2), ratio(1, 3)], vec![int(0), ratio(1, 4), ratio(1, 6)]];
        let (rank, basis) = rational_kernel(&m, 3);
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), ratio(-3, 2)]]);
    }

    #[test]
    fn empty_matrix() {
        let (rank, basis) = rational_kernel(&[], 2);
        assert_eq!(rank, 0);
        assert_eq!(basis.len(), 2);
    }
}
