//! Integer kernels of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// Row Hermite normal form of an integer matrix (nonzero rows only):
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let (mut a, pivots) = echelonize(rows, ncols);
    a.truncate(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[r].clone();
        for i in 0..r {
            let f = a[i][c].div_floor(&pivot_row[c]);
            if !f.is_zero() {
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    a
}

/// Basis of the saturated lattice `ker(A) ∩ Z^cols`, in Hermite normal form.
///
/// Row-reduces `[Aᵀ | I]` with unimodular integer operations; rows whose
/// `Aᵀ` block vanishes carry the kernel. Panics if an entry of the result
/// leaves the `i64` range.
pub fn lattice_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let (m, n) = (a.nrows(), a.ncols());
    let aug: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..m).map(|i| BigInt::from(*a.get(i, j))).collect();
            row.extend((0..n).map(|k| BigInt::from(i64::from(k == j))));
            row
        })
        .collect();
    let (h, _) = echelonize(aug, m);
    let kernel: Vec<Vec<BigInt>> = h
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect();
    hermite_normal_form(kernel)
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().expect("kernel entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// Echelonizes the first `upto` columns with unimodular row operations
/// (integer Euclid per column). Returns the matrix and the pivot columns;
/// pivot rows come first, in order.
fn echelonize(mut a: Vec<Vec<BigInt>>, upto: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    for c in 0..upto {
        let r = pivots.len();
        if r == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            let pivot_row = a[r].clone();
            for row in a.iter_mut().skip(r + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].div_floor(&pivot_row[c]);
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
                done &= row[c].is_zero();
            }
            if done {
                break;
            }
        }
        if !a[r][c].is_zero() {
            pivots.push(c);
        }
    }
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Matrix;

    fn check(a: &IntMatrix, expect_len: usize) -> Vec<Vec<i64>> {
        let ker = lattice_kernel(a);
        assert_eq!(ker.len(), expect_len);
        for l in &ker {
            for i in 0..a.nrows() {
                let s: i64 = a.row(i).iter().zip(l).map(|(x, y)| x * y).sum();
                assert_eq!(s, 0);
            }
        }
        ker
    }

    #[test]
    fn square_quad_relation() {
        let a = Matrix::from_rows(vec![vec![1, 0, 0, 1], vec![1, 0, -1, 0], vec![1, 1, 1, 1]])
            .unwrap();
        assert_eq!(check(&a, 1), vec![vec![1, -1, 1, -1]]);
    }

    #[test]
    fn conic_relation() {
        let a = Matrix::from_rows(vec![
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![2, 1, 7, 3, 5],
            vec![1, 1, 1, 1, 1],
        ])
        .unwrap();
        assert_eq!(check(&a, 1), vec![vec![0, 0, 1, 1, -2]]);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let a = Matrix::from_fn(3, 3, |i, j| i64::from(i == j));
        check(&a, 0);
    }

    #[test]
    fn saturated() {
        // ker of (2, 4) over Z is generated by (2, -1), not (4, -2).
        let a = Matrix::from_rows(vec![vec![2, 4]]).unwrap();
        assert_eq!(check(&a, 1), vec![vec![2, -1]]);
    }
}
