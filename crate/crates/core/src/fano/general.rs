//! Lines in an arbitrary tropical variety by projection.
//!
//! On every maximal cone `C` of the Plücker prevariety the cells of `Γ_p`
//! keep their combinatorial type, so each cell is `{x : A x ≤ f(p),
//! B x = g(p)}` with `f, g` linear in `p`. Lifting to `(p, x)`, removing
//! `|trop X|` piece by piece and projecting to `p` gives the lines that
//! leave `trop X`; the rest of `C` is the answer on that cone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{pluecker_prevariety, FanoResult, Provenance};
use crate::error::{Error, Result};
use crate::numkernel::{binomial, k_subsets, subset_rank, Rational, TropValue};
use crate::polyhedra::{fm_project, Constraint, HPolyhedron, Orbit, PolyComplex, Rel};
use crate::troplin::{lift_point, realize_space, TropPluecker};

/// Cells of `Γ_p` over one cone, as polyhedra in `(p, x)` (finite Plücker
/// coordinates first, then finite line coordinates).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParametricCellFamily {
    pub cone: HPolyhedron,
    pub sample: Vec<Rational>,
    pub cells: Vec<HPolyhedron>,
}

/// Coordinates `i` of `P^n` that are infinite on every line of the orbit:
/// all Plücker coordinates containing `i` are infinite.
pub fn line_orbit(n: usize, orbit: &Orbit) -> Orbit {
    let m = n + 1;
    let inf: Vec<usize> = (0..m)
        .filter(|&i| (0..m).filter(|&j| j != i).all(|j| orbit.contains(subset_rank(m, &[i.min(j), i.max(j)]))))
        .collect();
    Orbit::new(inf, m).unwrap_or_default()
}

impl ParametricCellFamily {
    /// Instantiates the cells at a Plücker point of the cone.
    pub fn at(&self, p: &[Rational]) -> Vec<HPolyhedron> {
        let kp = p.len();
        self.cells
            .iter()
            .map(|c| {
                let kx = c.ambient() - kp;
                let rows = c
                    .constraints()
                    .iter()
                    .map(|r| {
                        let shift: Rational = r.a[..kp].iter().zip(p).map(|(a, b)| a * b).sum();
                        Constraint::new(r.a[kp..].to_vec(), &r.b - &shift, r.rel)
                    })
                    .collect();
                HPolyhedron::new(kx, rows).expect("x coordinates")
            })
            .collect()
    }
}

/// Builds the family on `cone` from the combinatorics of `Γ` at an
/// interior sample.
pub fn cell_family(n: usize, orbit: &Orbit, cone: &HPolyhedron) -> Result<ParametricCellFamily> {
    let m = n + 1;
    let nplk = binomial(m, 2);
    let pcoords = orbit.finite_coords(nplk);
    let kp = pcoords.len();
    let xorbit = line_orbit(n, orbit);
    let xcoords = xorbit.finite_coords(m);
    let kx = xcoords.len();
    let ri = cone.relint().ok_or_else(|| Error::Internal("empty cone".into()))?;
    let sample = ri.point.clone();
    let p = TropPluecker::new(1, n, lift_point(nplk, orbit, &sample))?;
    let gamma = realize_space(&p, &xorbit)?;
    let pvar = |s: &[usize]| pcoords.iter().position(|&c| c == subset_rank(m, s));
    let xvar = |i: usize| xcoords.iter().position(|&c| c == i);
    let mut cells = Vec::new();
    for cell in &gamma.complex.cells {
        let x = cell.relint().ok_or_else(|| Error::Internal("empty cell".into()))?.point;
        let mut rows = cone.constraints().iter().map(|c| widen(c, kp + kx, 0)).collect::<Vec<_>>();
        for t in k_subsets(m, 3) {
            // finite terms x_i + p_{T∖i}
            let terms: Vec<(usize, usize)> = t
                .iter()
                .filter_map(|&i| {
                    let rest: Vec<usize> = t.iter().copied().filter(|&j| j != i).collect();
                    Some((pvar(&rest)?, xvar(i)?))
                })
                .collect();
            if terms.len() < 2 {
                continue;
            }
            let val = |&(pv, xv): &(usize, usize)| &sample[pv] + &x[xv];
            let vals: Vec<Rational> = terms.iter().map(val).collect();
            let min = vals.iter().min().expect("terms").clone();
            let t0 = vals.iter().position(|v| *v == min).expect("min");
            for (k, term) in terms.iter().enumerate() {
                if k == t0 {
                    continue;
                }
                // (p_0 + x_0) − (p_k + x_k)  ≤ / = 0
                let mut a = vec![Rational::zero(); kp + kx];
                a[terms[t0].0] += Rational::one();
                a[kp + terms[t0].1] += Rational::one();
                a[term.0] -= Rational::one();
                a[kp + term.1] -= Rational::one();
                let rel = if vals[k] == min { Rel::Eq } else { Rel::Le };
                rows.push(Constraint::new(a, Rational::zero(), rel));
            }
        }
        cells.push(HPolyhedron::new(kp + kx, rows)?.remove_redundant());
    }
    Ok(ParametricCellFamily { cone: cone.clone(), sample, cells })
}

/// Embeds a row into `len` coordinates starting at `offset`.
fn widen(c: &Constraint, len: usize, offset: usize) -> Constraint {
    let mut a = vec![Rational::zero(); len];
    for (k, v) in c.a.iter().enumerate() {
        a[offset + k] = v.clone();
    }
    Constraint::new(a, c.b.clone(), c.rel)
}

/// Pieces of `base` outside the polyhedron cut out by `rows`: the k-th
/// piece violates row k and satisfies the earlier ones.
fn subtract(base: &HPolyhedron, rows: &[Constraint]) -> Vec<HPolyhedron> {
    let mut split = Vec::new();
    for c in rows {
        match c.rel {
            Rel::Eq => {
                split.push(Constraint::le(c.a.clone(), c.b.clone()));
                split.push(Constraint::ge(c.a.clone(), c.b.clone()));
            }
            _ => split.push(c.clone()),
        }
    }
    let mut out = Vec::new();
    let mut prefix = base.clone();
    for c in split {
        let piece = prefix.clone().with(c.negated().expect("inequality"));
        if !piece.is_empty() {
            out.push(piece.remove_redundant());
        }
        prefix.push(c);
        if prefix.is_empty() {
            break;
        }
    }
    out
}

/// `base` minus the union of `holes`, as a list of (not necessarily closed)
/// pieces.
fn difference(base: HPolyhedron, holes: &[HPolyhedron]) -> Vec<HPolyhedron> {
    let mut pieces = vec![base];
    for h in holes {
        let mut next = Vec::new();
        for p in pieces {
            if p.intersect(h).is_empty() {
                next.push(p);
            } else {
                next.extend(subtract(&p, h.constraints()));
            }
        }
        pieces = next;
        if pieces.is_empty() {
            break;
        }
    }
    pieces
}

/// Closed cells of `{p ∈ C : Γ_p ⊆ |K|}` for one cone.
fn fano_on_cone(n: usize, orbit: &Orbit, cone: &HPolyhedron, k: &PolyComplex) -> Result<Vec<HPolyhedron>> {
    let fam = cell_family(n, orbit, cone)?;
    let kp = cone.ambient();
    let kx = k.ambient;
    let holes: Vec<HPolyhedron> = k
        .cells
        .iter()
        .map(|s| {
            let rows = s.constraints().iter().map(|c| widen(c, kp + kx, kp)).collect();
            HPolyhedron::new(kp + kx, rows).expect("lifted")
        })
        .collect();
    let keep: Vec<usize> = (0..kp).collect();
    let mut bad = Vec::new();
    for cell in &fam.cells {
        for piece in difference(cell.clone(), &holes) {
            let proj = fm_project(&piece, &keep);
            if !proj.is_empty() {
                bad.push(proj);
            }
        }
    }
    let good = difference(cone.clone(), &bad);
    Ok(good.iter().map(|g| g.closure_constraints().remove_redundant()).filter(|g| !g.is_empty()).collect())
}

/// `F_1(trop X) ∩ O` for a complex `K` in the finite line coordinates of
/// the orbit (see [`line_orbit`]).
pub fn fano_general(k: &PolyComplex, d: usize, n: usize, orbit: &Orbit) -> Result<FanoResult> {
    if d != 1 || n > 5 {
        return Err(Error::OutOfScope(format!("projection route covers d = 1, n ≤ 5 (got d = {d}, n = {n})")));
    }
    let nplk = binomial(n + 1, 2);
    let orbit = Orbit::new(orbit.infinite().to_vec(), nplk)?;
    let xorbit = line_orbit(n, &orbit);
    if k.ambient != n + 1 - xorbit.infinite().len() {
        return Err(Error::OrbitMismatch(format!(
            "complex lives in R^{} but lines of the orbit have {} finite coordinates",
            k.ambient,
            n + 1 - xorbit.infinite().len()
        )));
    }
    if k.cells.iter().any(|c| !c.is_closed()) {
        return Err(Error::DegenerateInput("cells of trop X must be closed".into()));
    }
    let cones = pluecker_prevariety(1, n, &orbit)?;
    let parts: Vec<Result<Vec<HPolyhedron>>> = cones.cells.par_iter().map(|c| fano_on_cone(n, &orbit, c, k)).collect();
    let mut cells = Vec::new();
    for p in parts {
        cells.extend(p?);
    }
    let complex = PolyComplex::new(cones.ambient, cells).maximal_cells().canonicalized();
    Ok(FanoResult { d, n, orbit, complex, provenance: Provenance::Projection })
}

/// Points on a Plücker vector as entries of the finite coordinates.
pub fn finite_entries(p: &TropPluecker, orbit: &Orbit) -> Result<Vec<Rational>> {
    let vals = p.values();
    let mut out = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        match (orbit.contains(i), v) {
            (true, TropValue::Infinity) => {}
            (false, TropValue::Finite(r)) => out.push(r.clone()),
            _ => return Err(Error::OrbitMismatch(format!("entry {i} does not match the orbit"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn cherries() -> TropPluecker {
        let mut map = BTreeMap::new();
        for s in k_subsets(5, 2) {
            let v = if [vec![0, 1], vec![2, 3]].contains(&s) { 1 } else { 0 };
            map.insert(s, TropValue::int(v));
        }
        TropPluecker::from_map(1, 4, &map).unwrap()
    }

    #[test]
    fn family_reproduces_the_sample() {
        let cones = pluecker_prevariety(1, 5, &Orbit::torus()).unwrap();
        let fam = cell_family(5, &Orbit::torus(), &cones.cells[0]).unwrap();
        assert_eq!(fam.cells.len(), 9);
        let p = TropPluecker::new(1, 5, lift_point(15, &Orbit::torus(), &fam.sample)).unwrap();
        let g = realize_space(&p, &Orbit::torus()).unwrap();
        let inst = PolyComplex::new(6, fam.at(&fam.sample)).canonicalized();
        assert_eq!(inst, g.complex);
    }

    #[test]
    fn a_line_contains_only_itself() {
        let p = cherries();
        let g = realize_space(&p, &Orbit::torus()).unwrap();
        let f = fano_general(&g.complex, 1, 4, &Orbit::torus()).unwrap();
        assert_eq!(f.complex.cells.len(), 1);
        let cell = &f.complex.cells[0];
        assert_eq!(cell.dim(), Some(1));
        assert!(cell.contains(&finite_entries(&p, &Orbit::torus()).unwrap()));
    }

    #[test]
    fn scope() {
        let k = PolyComplex::empty(7);
        assert!(matches!(fano_general(&k, 1, 6, &Orbit::torus()), Err(Error::OutOfScope(_))));
    }
}
