//! Double description conversion between H- and V-representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hpoly::{Constraint, HPolyhedron, Rel};
use super::lp::dot;
use crate::error::{Error, Result};
use crate::numkernel::{QMatrix, Rational};

/// `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolyhedron {
    pub ambient: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl VPolyhedron {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Generators of a polyhedral cone: `span(lineality) + cone(rays)`.
struct ConeGens {
    lineality: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
}

/// Double description on `{y : A y ≤ 0, E y = 0}`.
fn dd_cone(dim: usize, ineqs: &[Vec<Rational>], eqs: &[Vec<Rational>]) -> ConeGens {
    let lineality = if eqs.is_empty() {
        (0..dim).map(|k| unit(dim, k)).collect()
    } else {
        QMatrix::from_fn(eqs.len(), dim, |i, j| eqs[i][j].clone()).kernel()
    };
    let mut gens = ConeGens { lineality, rays: Vec::new() };
    // zero sets: indices of inserted inequalities tight at each ray
    let mut zeros: Vec<Vec<usize>> = Vec::new();
    for (idx, h) in ineqs.iter().enumerate() {
        if let Some(p) = gens.lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = gens.lineality.remove(p);
            let hl0 = dot(h, &l0);
            for l in gens.lineality.iter_mut() {
                let f = dot(h, l) / &hl0;
                if !f.is_zero() {
                    axpy(l, &-f, &l0);
                }
            }
            for r in gens.rays.iter_mut() {
                let f = dot(h, r) / &hl0;
                if !f.is_zero() {
                    axpy(r, &-f, &l0);
                }
            }
            // every existing ray is now tight at h
            for z in zeros.iter_mut() {
                z.push(idx);
            }
            if hl0.is_positive() {
                for x in l0.iter_mut() {
                    *x = -&*x;
                }
            }
            gens.rays.push(primitive(&l0));
            // l0 is tight at all earlier constraints (it was lineality)
            zeros.push((0..idx).collect());
            continue;
        }
        let vals: Vec<Rational> = gens.rays.iter().map(|r| dot(h, r)).collect();
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (i, z) in zeros.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.push(idx);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = zeros[p].iter().filter(|c| zeros[q].contains(c)).copied().collect();
                let adjacent = (0..gens.rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.iter().all(|c| zeros[r].contains(c)));
                if !adjacent {
                    continue;
                }
                // (h·p) q − (h·q) p lies on h = 0
                let mut ray: Vec<Rational> = gens.rays[q].iter().map(|x| x * &vals[p]).collect();
                axpy(&mut ray, &-&vals[q], &gens.rays[p]);
                new_rays.push(primitive(&ray));
                let mut z = common;
                z.push(idx);
                new_zeros.push(z);
            }
        }
        let mut rays = Vec::new();
        let mut zs = Vec::new();
        for i in 0..gens.rays.len() {
            if vals[i].is_positive() {
                continue;
            }
            let mut z = zeros[i].clone();
            if vals[i].is_zero() {
                z.push(idx);
            }
            rays.push(gens.rays[i].clone());
            zs.push(z);
        }
        rays.extend(new_rays);
        zs.extend(new_zeros);
        gens.rays = rays;
        zeros = zs;
    }
    gens
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    (0..n).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
}

fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

/// Scales a nonzero vector to a primitive integer vector, same direction.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_bigint(x / &g)).collect()
}

/// Projects `v` onto the orthogonal complement of `span(basis)`.
fn project_out(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve (BᵀB) c = Bᵀ v, return v − B c.
    let k = basis.len();
    let gram = QMatrix::from_fn(k, k + 1, |i, j| {
        if j < k { dot(&basis[i], &basis[j]) } else { dot(&basis[i], v) }
    });
    let (r, _) = gram.rref();
    let mut out = v.to_vec();
    for i in 0..k {
        let c = r.get(i, k).clone();
        axpy(&mut out, &-c, &basis[i]);
    }
    out
}

/// H- to V-representation of a closed polyhedron.
pub fn h_to_v(p: &HPolyhedron) -> Result<VPolyhedron> {
    if !p.is_closed() {
        return Err(Error::DegenerateInput("V-representation needs a closed polyhedron".into()));
    }
    let n = p.ambient();
    let mut ineqs = vec![{
        let mut h = vec![Rational::zero(); n + 1];
        h[n] = -Rational::one();
        h
    }];
    let mut eqs = Vec::new();
    for c in p.constraints() {
        let mut h = c.a.clone();
        h.push(-&c.b);
        match c.rel {
            Rel::Eq => eqs.push(h),
            _ => ineqs.push(h),
        }
    }
    let gens = dd_cone(n + 1, &ineqs, &eqs);
    let lineality: Vec<Vec<Rational>> = gens.lineality.iter().map(|l| primitive(&l[..n])).collect();
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &gens.rays {
        let lam = &r[n];
        if lam.is_positive() {
            let x: Vec<Rational> = r[..n].iter().map(|x| x / lam).collect();
            let x = project_out(&x, &lineality);
            if !vertices.contains(&x) {
                vertices.push(x);
            }
        } else {
            let x = primitive(&project_out(&r[..n], &lineality));
            if x.iter().any(|c| !c.is_zero()) && !rays.contains(&x) {
                rays.push(x);
            }
        }
    }
    vertices.sort();
    rays.sort();
    if vertices.is_empty() {
        return Ok(VPolyhedron { ambient: n, vertices, rays: Vec::new(), lineality: Vec::new() });
    }
    Ok(VPolyhedron { ambient: n, vertices, rays, lineality })
}

/// V- to H-representation via the polar cone.
pub fn v_to_h(v: &VPolyhedron) -> HPolyhedron {
    let n = v.ambient;
    if v.vertices.is_empty() {
        return HPolyhedron::empty(n);
    }
    // constraints on h = (a, β) with a·x + β·λ ≤ 0 for every generator
    let mut ineqs = Vec::new();
    for x in &v.vertices {
        let mut g = x.clone();
        g.push(Rational::one());
        ineqs.push(g);
    }
    for r in &v.rays {
        let mut g = r.clone();
        g.push(Rational::zero());
        ineqs.push(g);
    }
    let eqs: Vec<Vec<Rational>> = v
        .lineality
        .iter()
        .map(|l| {
            let mut g = l.clone();
            g.push(Rational::zero());
            g
        })
        .collect();
    let polar = dd_cone(n + 1, &ineqs, &eqs);
    let mut constraints = Vec::new();
    for h in &polar.lineality {
        let c = Constraint::eq(h[..n].to_vec(), -&h[n]);
        if !c.is_trivial_lhs() {
            constraints.push(c.normalized());
        }
    }
    for h in &polar.rays {
        let c = Constraint::le(h[..n].to_vec(), -&h[n]);
        if !c.is_trivial_lhs() {
            constraints.push(c.normalized());
        }
    }
    constraints.sort();
    constraints.dedup();
    HPolyhedron::new(n, constraints).expect("lengths match")
}

/// Converts in the direction requested: H input yields V, and back.
pub fn hv_convert(p: &HPolyhedron) -> Result<VPolyhedron> {
    h_to_v(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::qi;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn simplex_vertices() {
        let p = HPolyhedron::new(
            3,
            vec![
                Constraint::eq(v(&[1, 1, 1]), qi(1)),
                Constraint::ge(v(&[1, 0, 0]), qi(0)),
                Constraint::ge(v(&[0, 1, 0]), qi(0)),
                Constraint::ge(v(&[0, 0, 1]), qi(0)),
            ],
        )
        .unwrap();
        let vp = h_to_v(&p).unwrap();
        assert_eq!(vp.vertices, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
        assert!(vp.rays.is_empty() && vp.lineality.is_empty());
        assert!(v_to_h(&vp).same_set(&p));
    }

    #[test]
    fn quadrant_cone() {
        let p = HPolyhedron::new(2, vec![Constraint::ge(v(&[1, 0]), qi(0)), Constraint::ge(v(&[0, 1]), qi(0))]).unwrap();
        let vp = h_to_v(&p).unwrap();
        assert_eq!(vp.vertices, vec![v(&[0, 0])]);
        assert_eq!(vp.rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn halfplane() {
        let p = HPolyhedron::new(2, vec![Constraint::ge(v(&[1, 0]), qi(0))]).unwrap();
        let vp = h_to_v(&p).unwrap();
        assert_eq!(vp.vertices, vec![v(&[0, 0])]);
        assert_eq!(vp.rays, vec![v(&[1, 0])]);
        assert_eq!(vp.lineality.len(), 1);
        assert!(vp.lineality[0][0].is_zero());
        assert!(v_to_h(&vp).same_set(&p));
    }

    #[test]
    fn empty_polyhedron() {
        let p = HPolyhedron::new(1, vec![Constraint::ge(v(&[1]), qi(1)), Constraint::le(v(&[1]), qi(0))]).unwrap();
        let vp = h_to_v(&p).unwrap();
        assert!(vp.is_empty());
        assert!(v_to_h(&vp).is_empty());
    }

    #[test]
    fn cube_has_eight_vertices() {
        let mut cs = Vec::new();
        for i in 0..3 {
            let mut e = vec![qi(0); 3];
            e[i] = qi(1);
            cs.push(Constraint::le(e.clone(), qi(1)));
            cs.push(Constraint::ge(e, qi(0)));
        }
        let p = HPolyhedron::new(3, cs).unwrap();
        let vp = h_to_v(&p).unwrap();
        assert_eq!(vp.vertices.len(), 8);
        let back = v_to_h(&vp);
        assert_eq!(back.constraints().len(), 6);
        assert!(back.same_set(&p));
    }
}
