//! Lines inside a classical plane `L ⊆ P^n`: the second exterior power,
//! genericity conditions and lines through triples of pair points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{k_subsets, subset_label, Field, Matrix, TMatrix, TRatFn};
use crate::polyhedra::{Orbit, PolyComplex};
use crate::troplin::{realize_space, recession_fan, TropLinearSpace, TropPluecker};

/// The `3 × C(n+1, 2)` matrix whose column `{i, j}` holds the 2×2 minors
/// of columns `i, j` of `L` on row pairs `01, 02, 12`. Its row space is the
/// Plücker image of the lines in the plane spanned by `L`.
pub fn exterior_square<T: Field>(l: &Matrix<T>) -> Result<Matrix<T>> {
    if l.nrows() != 3 {
        return Err(Error::BadDimensions(format!("expected 3 rows, got {}", l.nrows())));
    }
    let pairs: Vec<Vec<usize>> = k_subsets(l.ncols(), 2).collect();
    let rows = [(0, 1), (0, 2), (1, 2)];
    Ok(Matrix::from_fn(3, pairs.len(), |r, c| {
        let (a, b) = rows[r];
        let (i, j) = (pairs[c][0], pairs[c][1]);
        l.get(a, i).mul(l.get(b, j)).sub(&l.get(b, i).mul(l.get(a, j)))
    }))
}

/// `trop F_1(L)` in the torus of `P^{C(n+1,2)−1}`.
pub fn classical_plane_fano_trop(l: &TMatrix) -> Result<TropLinearSpace> {
    if l.nrows() != 3 || l.rank() < 3 {
        return Err(Error::DegenerateInput("plane matrix must have rank 3".into()));
    }
    let p = TropPluecker::from_matrix(&exterior_square(l)?)?;
    realize_space(&p, &Orbit::torus())
}

fn cross(u: &[TRatFn], v: &[TRatFn]) -> [TRatFn; 3] {
    [
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

fn det3(a: &[TRatFn], b: &[TRatFn], c: &[TRatFn]) -> TRatFn {
    let x = cross(b, c);
    a[0].mul(&x[0]).add(&a[1].mul(&x[1])).add(&a[2].mul(&x[2]))
}

/// Coordinates (in the row basis of `L`) of `w_ij = L ∩ {x_i = x_j = 0}`.
fn pair_point(l: &TMatrix, i: usize, j: usize) -> Result<[TRatFn; 3]> {
    let w = cross(&l.column(i), &l.column(j));
    if w.iter().all(TRatFn::is_zero) {
        return Err(Error::DegenerateInput(format!("L ∩ {{x_{i} = x_{j} = 0}} is not a point")));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genericity {
    pub cond_i: bool,
    pub cond_ii: bool,
    /// Triples `{i, j, k}` whose lines `L ∩ {x = 0}` share a point.
    pub witnesses_i: Vec<[usize; 3]>,
    /// Pairings whose three points are collinear.
    pub witnesses_ii: Vec<Vec<[usize; 2]>>,
}

/// Unordered triples of pairwise disjoint pairs from `0..m`.
pub fn disjoint_pairings(m: usize) -> Vec<Vec<[usize; 2]>> {
    let pairs: Vec<[usize; 2]> = k_subsets(m, 2).map(|p| [p[0], p[1]]).collect();
    let mut out = Vec::new();
    for t in k_subsets(pairs.len(), 3) {
        let ps: Vec<[usize; 2]> = t.iter().map(|&k| pairs[k]).collect();
        let mut used: Vec<usize> = ps.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        if used.len() == 6 {
            out.push(ps);
        }
    }
    out
}

pub fn pairing_label(p: &[[usize; 2]]) -> Vec<String> {
    p.iter().map(|q| subset_label(q)).collect()
}

pub fn genericity_check(l: &TMatrix) -> Result<Genericity> {
    if l.nrows() != 3 || l.rank() < 3 {
        return Err(Error::DegenerateInput("plane matrix must have rank 3".into()));
    }
    let m = l.ncols();
    let mut points = std::collections::HashMap::new();
    for p in k_subsets(m, 2) {
        points.insert((p[0], p[1]), pair_point(l, p[0], p[1])?);
    }
    let mut witnesses_i = Vec::new();
    for t in k_subsets(m, 3) {
        if det3(&l.column(t[0]), &l.column(t[1]), &l.column(t[2])).is_zero() {
            witnesses_i.push([t[0], t[1], t[2]]);
        }
    }
    let mut witnesses_ii = Vec::new();
    for ps in disjoint_pairings(m) {
        let w: Vec<&[TRatFn; 3]> = ps.iter().map(|q| &points[&(q[0], q[1])]).collect();
        if det3(w[0], w[1], w[2]).is_zero() {
            witnesses_ii.push(ps);
        }
    }
    Ok(Genericity { cond_i: witnesses_i.is_empty(), cond_ii: witnesses_ii.is_empty(), witnesses_i, witnesses_ii })
}

/// A classical line of `L` through the pair points of a pairing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingLine {
    /// `2 × (n+1)` basis.
    pub basis: TMatrix,
    pub plucker: TropPluecker,
    /// Recession rays of its tropicalization, modulo the all-ones vector.
    pub recession_rays: Vec<Vec<crate::numkernel::Rational>>,
    /// Every `e_i + e_j` of the pairing is a recession direction.
    pub certified: bool,
}

/// The line through the points `w_ij` of the pairing, when they are
/// collinear; `None` otherwise.
pub fn pairing_line(l: &TMatrix, pairing: &[[usize; 2]]) -> Result<Option<PairingLine>> {
    if pairing.len() < 3 {
        return Err(Error::BadDimensions("a pairing needs at least three pairs".into()));
    }
    let m = l.ncols();
    let mut used: Vec<usize> = pairing.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    if used.len() != 2 * pairing.len() || used.iter().any(|&i| i >= m) || pairing.iter().any(|q| q[0] == q[1]) {
        return Err(Error::BadDimensions("pairs must be disjoint and in range".into()));
    }
    if l.nrows() != 3 || l.rank() < 3 {
        return Err(Error::DegenerateInput("plane matrix must have rank 3".into()));
    }
    let coords: Vec<[TRatFn; 3]> = pairing.iter().map(|q| pair_point(l, q[0], q[1])).collect::<Result<_>>()?;
    let a = Matrix::from_rows(coords.iter().map(|c| c.to_vec()).collect())?;
    if a.rank() != 2 {
        return Ok(None);
    }
    // two independent points span the line; points are a·L
    let (_, pivots) = a.transpose().rref();
    let rows: Vec<Vec<TRatFn>> = pivots
        .iter()
        .map(|&k| (0..m).map(|j| (0..3).fold(TRatFn::zero(), |s, r| s.add(&coords[k][r].mul(l.get(r, j))))).collect())
        .collect();
    let basis = Matrix::from_rows(rows)?;
    let plucker = TropPluecker::from_matrix(&basis)?;
    let space = realize_space(&plucker, &Orbit::torus())?;
    let rec: PolyComplex = recession_fan(&space);
    let recession_rays = rec.rays();
    let certified = pairing.iter().all(|q| {
        let mut e = vec![crate::numkernel::Rational::zero(); m];
        e[q[0]] = crate::numkernel::Rational::one();
        e[q[1]] = crate::numkernel::Rational::one();
        recession_rays.contains(&e)
    });
    Ok(Some(PairingLine { basis, plucker, recession_rays, certified }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::IntMatrix;

    fn l_prime() -> TMatrix {
        IntMatrix::from_rows(vec![vec![1, 3, 0, 1, 5, 7], vec![0, 0, 1, 3, -1, -1], vec![1, 4, -1, -3, 0, 0]])
            .unwrap()
            .to_t()
    }

    #[test]
    fn exterior_square_shape() {
        let e = exterior_square(&l_prime()).unwrap();
        assert_eq!((e.nrows(), e.ncols()), (3, 15));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn collinear_pairing() {
        let g = genericity_check(&l_prime()).unwrap();
        assert!(g.cond_i);
        assert!(!g.cond_ii);
        assert!(g.witnesses_ii.contains(&vec![[0, 1], [2, 3], [4, 5]]));
        let line = pairing_line(&l_prime(), &[[0, 1], [2, 3], [4, 5]]).unwrap().unwrap();
        assert!(line.certified);
        // the line satisfies x4 = x5 and 3 x2 = x3
        for r in 0..2 {
            let row = line.basis.row(r);
            assert_eq!(row[4], row[5]);
            assert_eq!(row[2].mul(&TRatFn::from_int(3)), row[3]);
        }
    }

    #[test]
    fn too_few_pairs() {
        assert!(matches!(pairing_line(&l_prime(), &[[0, 1], [2, 3]]), Err(Error::BadDimensions(_))));
    }

    #[test]
    fn fifteen_pairings_of_six() {
        assert_eq!(disjoint_pairings(6).len(), 15);
    }
}
