use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, Valued};
use super::ratfn::TRatFn;
use super::subsets::k_subsets;
use super::{Rational, TropValue};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<T>>", into = "Vec<Vec<T>>")]
#[serde(bound(serialize = "T: Clone + Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<i64>;
pub type QMatrix = Matrix<Rational>;
pub type TMatrix = Matrix<TRatFn>;

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BadDimensions("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a `rows × cols` matrix from a generator `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, cols)
    }
}

impl<T> TryFrom<Vec<Vec<T>>> for Matrix<T> {
    type Error = Error;
    fn try_from(rows: Vec<Vec<T>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl<T: Clone> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        m.to_rows()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

impl IntMatrix {
    pub fn to_q(&self) -> QMatrix {
        self.map(|&x| Rational::from_int(x))
    }

    pub fn to_t(&self) -> TMatrix {
        self.map(|&x| TRatFn::from_int(x))
    }
}

impl QMatrix {
    pub fn to_t(&self) -> TMatrix {
        self.map(|x| TRatFn::constant(x.clone()))
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::BadDimensions(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(rhs.get(k, j)));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::BadDimensions("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut sign_neg = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign_neg = !sign_neg;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = v.div(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_neg { d.neg() } else { d })
    }

    /// Rank over the fraction field (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut rank = 0;
        let mut prev = T::one();
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = a[i][j].mul(&a[rank][c]).sub(&a[i][c].mul(&a[rank][j]));
                    a[i][j] = v.div(&prev);
                }
                a[i][c] = T::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form with the pivot column of each nonzero row.
    /// Zero rows are dropped.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = T::one().div(&a[r][c]);
            for j in c..self.cols {
                a[r][j] = a[r][j].mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..self.cols {
                        let v = a[i][j].sub(&f.mul(&a[r][j]));
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        let cols = self.cols;
        (Matrix { rows: r, cols, data: a.into_iter().flatten().collect() }, pivots)
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Maximal minors of a `k`-row matrix, one per `k`-subset of columns in
    /// lexicographic order, columns taken in ascending order.
    pub fn maximal_minors(&self) -> Vec<T> {
        let k = self.rows;
        k_subsets(self.cols, k)
            .map(|s| self.select_columns(&s).det().expect("square by construction"))
            .collect()
    }
}

/// Valuations of the maximal minors of a `k`-row matrix, in lexicographic
/// order of the column subsets.
pub fn kminors_val<T: Field + Valued>(m: &Matrix<T>, k: usize) -> Result<Vec<TropValue>> {
    if m.nrows() != k {
        return Err(Error::BadDimensions(format!("expected {k} rows, got {}", m.nrows())));
    }
    if m.ncols() < k {
        return Err(Error::BadDimensions(format!("need at least {k} columns")));
    }
    if m.rank() < k {
        return Err(Error::DegenerateInput(format!("matrix has rank below {k}")));
    }
    Ok(m.maximal_minors().iter().map(Valued::tval).collect())
}

/// Rank over the fraction field.
pub fn exact_rank<T: Field>(m: &Matrix<T>) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{q, qi};

    fn ex32() -> IntMatrix {
        Matrix::from_rows(vec![
            vec![0, -271, -92, 0, -13, -54],
            vec![0, -18, -7, -1, 0, -4],
            vec![-1, 12293, 4173, 0, 588, 2450],
        ])
        .unwrap()
    }

    #[test]
    fn determinant_small() {
        let m = QMatrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(7), qi(4)]]).unwrap();
        assert_eq!(m.det().unwrap(), qi(1));
        let m = QMatrix::from_rows(vec![
            vec![qi(0), qi(1), qi(2)],
            vec![qi(1), qi(0), qi(3)],
            vec![qi(4), qi(-3), qi(8)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), qi(-2));
        let m = QMatrix::from_rows(vec![vec![q(1, 2), qi(1)], vec![qi(1), qi(2)]]).unwrap();
        assert_eq!(m.det().unwrap(), qi(0));
    }

    #[test]
    fn ranks() {
        assert_eq!(QMatrix::identity(4).rank(), 4);
        assert_eq!(QMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(ex32().to_q().rank(), 3);
        assert_eq!(ex32().to_t().rank(), 3);
    }

    #[test]
    fn example_plane_minors_have_valuation_zero() {
        let v = kminors_val(&ex32().to_t(), 3).unwrap();
        assert_eq!(v.len(), 20);
        assert!(v.iter().all(|x| *x == TropValue::zero()));
    }

    #[test]
    fn two_rows_of_snowflake_matrix() {
        let rows: Vec<Vec<TRatFn>> = [
            ["1", "1", "0", "t", "1", "1"],
            ["1", "t+1", "1", "2", "t", "0"],
        ]
        .iter()
        .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
        .collect();
        let v = kminors_val(&TMatrix::from_rows(rows).unwrap(), 2).unwrap();
        let subsets: Vec<Vec<usize>> = k_subsets(6, 2).collect();
        for (s, val) in subsets.iter().zip(&v) {
            let expect = if [[0, 1], [2, 3], [4, 5]].iter().any(|p| p[..] == s[..]) { 1 } else { 0 };
            assert_eq!(*val, TropValue::int(expect), "minor {s:?}");
        }
    }

    #[test]
    fn identity_minor() {
        let v = kminors_val(&TMatrix::identity(3), 3).unwrap();
        assert_eq!(v, vec![TropValue::zero()]);
        assert!(matches!(kminors_val(&TMatrix::zeros(2, 3), 2), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ex32().to_q();
        let ker = m.kernel();
        assert_eq!(ker.len(), 3);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }
}
