//! Tropical Fano schemes: lines and planes inside tropical varieties.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{binomial, k_subsets, subset_rank, TropValue};
use crate::polyhedra::{contained_in_complex, Containment, Orbit, PolyComplex};
use crate::prevariety::{intersect_system, TropPolynomial, TropSystem};
use crate::troplin::{realize_space, TropPluecker};

mod general;
mod plane;

pub use general::{cell_family, fano_general, finite_entries, line_orbit, ParametricCellFamily};
pub use plane::{
    classical_plane_fano_trop, disjoint_pairings, exterior_square, genericity_check, pairing_label, pairing_line, Genericity,
    PairingLine,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Incidence,
    Projection,
}

/// A polyhedral complex in the Plücker coordinates of `d`-planes in `P^n`,
/// restricted to an orbit (cells live in the finite coordinates).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanoResult {
    pub d: usize,
    pub n: usize,
    pub orbit: Orbit,
    pub complex: PolyComplex,
    pub provenance: Provenance,
}

impl FanoResult {
    /// Number of Plücker coordinates.
    pub fn ambient(&self) -> usize {
        binomial(self.n + 1, self.d + 1)
    }
}

fn monomial(nvars: usize, vars: &[usize]) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    for &v in vars {
        e[v] += 1;
    }
    e
}

/// Three-term Plücker relations in the coordinates of `d`-planes in `P^n`
/// as degree-two tropical polynomials.
pub fn pluecker_relations(d: usize, n: usize) -> Vec<TropPolynomial> {
    let m = n + 1;
    let nvars = binomial(m, d + 1);
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let idx = |s: &[usize], a: usize, b: usize| {
        let mut v = s.to_vec();
        v.push(a);
        v.push(b);
        v.sort_unstable();
        subset_rank(m, &v)
    };
    for s in k_subsets(m, d - 1) {
        let rest: Vec<usize> = (0..m).filter(|x| !s.contains(x)).collect();
        for q in k_subsets(rest.len(), 4) {
            let [i, j, k, l] = [rest[q[0]], rest[q[1]], rest[q[2]], rest[q[3]]];
            out.push(TropPolynomial::new(vec![
                (TropValue::zero(), monomial(nvars, &[idx(&s, i, j), idx(&s, k, l)])),
                (TropValue::zero(), monomial(nvars, &[idx(&s, i, k), idx(&s, j, l)])),
                (TropValue::zero(), monomial(nvars, &[idx(&s, i, l), idx(&s, j, k)])),
            ]));
        }
    }
    out
}

/// Prevariety of the Plücker relations of `d`-planes, in an orbit.
pub fn pluecker_prevariety(d: usize, n: usize, orbit: &Orbit) -> Result<PolyComplex> {
    let nvars = binomial(n + 1, d + 1);
    let mut polys = pluecker_relations(d, n);
    if polys.is_empty() {
        // a lone tautology keeps the system well formed
        return Ok(PolyComplex::new(nvars - orbit.infinite().len(), vec![crate::polyhedra::HPolyhedron::universe(
            nvars - orbit.infinite().len(),
        )]));
    }
    polys.dedup();
    intersect_system(&TropSystem::new(nvars, polys, orbit.clone())?)
}

/// Plücker relations for `d`-planes together with the incidence relations
/// `⊕_{i∈T∖S} p_{S∪i} ⊙ w_{T∖i}` for all `|S| = d`, `|T| = e+2`, where `w`
/// is the Plücker vector of an `e`-plane.
pub fn incidence_system(w: &TropPluecker, d: usize) -> Result<TropSystem> {
    let e = w.d();
    if d >= e {
        return Err(Error::BadDimensions(format!("need d < e, got d = {d}, e = {e}")));
    }
    let m = w.n() + 1;
    let nvars = binomial(m, d + 1);
    let mut polys = pluecker_relations(d, w.n());
    for s in k_subsets(m, d) {
        for t in k_subsets(m, e + 2) {
            let terms: Vec<(TropValue, Vec<u32>)> = t
                .iter()
                .filter(|i| !s.contains(i))
                .map(|&i| {
                    let mut si = s.clone();
                    si.push(i);
                    si.sort_unstable();
                    let ti: Vec<usize> = t.iter().copied().filter(|&j| j != i).collect();
                    (w.get(&ti), monomial(nvars, &[subset_rank(m, &si)]))
                })
                .filter(|(c, _)| c.is_finite())
                .collect();
            if terms.len() >= 2 {
                polys.push(TropPolynomial::new(terms));
            }
        }
    }
    TropSystem::new(nvars, polys, Orbit::torus())
}

/// `F_d(Γ_w) ∩ O` as the incidence prevariety.
pub fn fano_linear(w: &TropPluecker, d: usize, orbit: &Orbit) -> Result<FanoResult> {
    let mut sys = incidence_system(w, d)?;
    sys.orbit = Orbit::new(orbit.infinite().to_vec(), sys.ambient)?;
    let complex = intersect_system(&sys)?;
    Ok(FanoResult { d, n: w.n(), orbit: sys.orbit, complex, provenance: Provenance::Incidence })
}

/// Whether `Γ_p`, taken in the line orbit `orbit`, lies in `|K|`; otherwise
/// a point of `Γ_p` outside.
pub fn contains_line(p: &TropPluecker, k: &PolyComplex, orbit: &Orbit) -> Result<Containment> {
    let g = realize_space(p, orbit)?;
    if g.complex.ambient != k.ambient {
        return Err(Error::OrbitMismatch(format!("line in R^{} but complex in R^{}", g.complex.ambient, k.ambient)));
    }
    for cell in &g.complex.cells {
        let c = contained_in_complex(cell, k)?;
        if !c.holds() {
            return Ok(c);
        }
    }
    Ok(Containment::Contained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::troplin::circuit_system;

    #[test]
    fn incidence_counts() {
        let w = TropPluecker::zero(2, 5);
        let s = incidence_system(&w, 1).unwrap();
        assert_eq!(s.ambient, 15);
        assert_eq!(s.polys.len(), 15 + 6 * 15);
        assert!(matches!(incidence_system(&w, 2), Err(Error::BadDimensions(_))));
    }

    #[test]
    fn points_give_circuits() {
        let w = TropPluecker::zero(2, 5);
        let s = incidence_system(&w, 0).unwrap();
        assert_eq!(s.polys, circuit_system(&w).unwrap().polys);
    }

    #[test]
    fn relations_of_lines_in_p3() {
        let r = pluecker_relations(1, 3);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].terms.len(), 3);
    }
}
