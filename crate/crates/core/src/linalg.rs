//! Small exact linear algebra over the integers and the rationals.
//!
//! Integer routines use fraction-free (Bareiss) elimination in `i128`; the
//! matrices handled here have entries in {-1, 0, 1} and at most a few dozen
//! rows, so intermediate values stay far below overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Determinant of a square integer matrix.
pub fn determinant(square: &[Vec<i64>]) -> i128 {
    let k = square.len();
    if k == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = square
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            match (p + 1..k).find(|&i| a[i][p] != 0) {
                Some(i) => {
                    a.swap(p, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    sign * a[k - 1][k - 1]
}

/// Rank of an integer matrix given as rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let m = a.len();
    let n = a[0].len();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..n {
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    r
}

/// Rank of the submatrix formed by the given columns.
pub fn column_rank(matrix: &[Vec<i64>], cols: &[usize]) -> usize {
    if cols.is_empty() || matrix.is_empty() {
        return 0;
    }
    let sub: Vec<Vec<i64>> = matrix
        .iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect();
    rank(&sub)
}

pub fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|row| row.iter().map(|&x| rational(x)).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(mut a: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let m = a.len();
    if m == 0 {
        return (a, Vec::new());
    }
    let n = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// A basis of the right kernel of `a` (with `n` columns).
pub fn kernel_basis(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(a.to_vec());
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let k = a.len();
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if pivots.len() < k || pivots[k - 1] != k - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[k..].to_vec()).collect())
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Converts an integral rational to `i64`, if it is one.
pub fn as_integer(x: &Rational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let v = x.to_integer();
    i64::try_from(v).ok()
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

pub fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}
