use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::AlgebraError;

/// Commutative ring with owned arithmetic.
pub trait Ring:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Determinant by cofactor expansion along rows, memoizing the minors on
/// the remaining column sets. Zero entries are skipped, so sparse symbolic
/// matrices stay cheap.
pub fn det<T: Ring>(matrix: &[Vec<T>]) -> Result<T, AlgebraError> {
    let n = matrix.len();
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare { rows: n, cols: row.len() });
    }
    assert!(n < 64, "matrix too large for bitmask cofactor expansion");
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut memo = HashMap::new();
    Ok(expand(matrix, 0, full, &mut memo))
}

fn expand<T: Ring>(m: &[Vec<T>], row: usize, cols: u64, memo: &mut HashMap<u64, T>) -> T {
    if row == m.len() {
        return T::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = T::zero();
    let mut position = 0;
    let mut rest = cols;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = expand(m, row + 1, cols & !(1u64 << c), memo);
            if !sub.is_zero() {
                let term = entry.clone() * sub;
                acc = if position % 2 == 0 { acc + term } else { acc - term };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Submatrix on the given (0-based) rows and columns, in the order given.
pub fn submatrix<T: Clone>(matrix: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| matrix[r][c].clone()).collect())
        .collect()
}
