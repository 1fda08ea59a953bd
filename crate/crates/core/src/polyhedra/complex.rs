use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hpoly::{Constraint, HPolyhedron, Rel};
use crate::error::{Error, Result};
use crate::numkernel::Rational;

/// Coordinates set to ∞ in trop P^n.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Orbit {
    infinite: Vec<usize>,
}

impl Orbit {
    pub fn torus() -> Self {
        Orbit { infinite: Vec::new() }
    }

    /// `n` is the number of coordinates; the orbit must leave one finite.
    pub fn new(mut infinite: Vec<usize>, n: usize) -> Result<Self> {
        infinite.sort_unstable();
        infinite.dedup();
        if infinite.iter().any(|&i| i >= n) {
            return Err(Error::BadDimensions(format!("orbit index out of range 0..{n}")));
        }
        if infinite.len() >= n {
            return Err(Error::DegenerateInput("orbit sets every coordinate to infinity".into()));
        }
        Ok(Orbit { infinite })
    }

    pub fn infinite(&self) -> &[usize] {
        &self.infinite
    }

    pub fn is_torus(&self) -> bool {
        self.infinite.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.infinite.binary_search(&i).is_ok()
    }

    /// Finite coordinates among `0..n`, ascending.
    pub fn finite_coords(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| !self.contains(i)).collect()
    }
}

/// A finite collection of closed polyhedra in a common ambient space.
///
/// Usually only maximal cells are listed; faces are implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyComplex {
    pub ambient: usize,
    pub cells: Vec<HPolyhedron>,
    pub fan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanStats {
    /// Dimension of the support, or −1 when empty.
    pub dim: i64,
    pub lineality_dim: i64,
    /// Number of maximal cells per dimension.
    pub max_cells_by_dim: BTreeMap<usize, usize>,
}

impl PolyComplex {
    pub fn new(ambient: usize, cells: Vec<HPolyhedron>) -> Self {
        let fan = !cells.is_empty() && cells.iter().all(HPolyhedron::is_cone);
        PolyComplex { ambient, cells, fan }
    }

    pub fn empty(ambient: usize) -> Self {
        PolyComplex { ambient, cells: Vec::new(), fan: true }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether `x` lies in some cell.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// True if every cell contains the all-ones line.
    pub fn has_ones_lineality(&self) -> bool {
        self.cells.iter().all(HPolyhedron::has_ones_lineality)
    }

    /// Canonical form of every cell, empty cells and set duplicates removed,
    /// sorted.
    pub fn canonicalized(&self) -> PolyComplex {
        let mut seen = HashSet::new();
        let mut cells: Vec<HPolyhedron> = self
            .cells
            .par_iter()
            .map(HPolyhedron::canonical)
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|c| !c.constraints().iter().any(|r| r.is_trivial_lhs() && r.b.is_negative()))
            .filter(|c| seen.insert(c.clone()))
            .collect();
        cells.sort_by(|a, b| a.constraints().cmp(b.constraints()));
        PolyComplex { ambient: self.ambient, cells, fan: self.fan }
    }

    /// Keeps the cells not contained in another cell (set duplicates count
    /// once, the first occurrence wins).
    pub fn maximal_cells(&self) -> PolyComplex {
        let dims: Vec<Option<usize>> = self.cells.par_iter().map(HPolyhedron::dim).collect();
        let keep: Vec<bool> = (0..self.cells.len())
            .into_par_iter()
            .map(|i| {
                let Some(di) = dims[i] else { return false };
                !(0..self.cells.len()).any(|j| {
                    if i == j {
                        return false;
                    }
                    let Some(dj) = dims[j] else { return false };
                    if dj < di || (dj == di && j > i) {
                        return false;
                    }
                    self.cells[i].is_subset_of(&self.cells[j])
                })
            })
            .collect();
        let cells = self.cells.iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c.clone()).collect();
        PolyComplex { ambient: self.ambient, cells, fan: self.fan }
    }

    /// All nonempty faces of all cells, deduplicated by canonical form.
    pub fn with_faces(&self) -> PolyComplex {
        let mut seen: HashSet<HPolyhedron> = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<HPolyhedron> = self.cells.iter().map(HPolyhedron::canonical).collect();
        while let Some(c) = stack.pop() {
            if c.is_empty() || !seen.insert(c.clone()) {
                continue;
            }
            for (i, r) in c.constraints().iter().enumerate() {
                if r.rel == Rel::Eq {
                    continue;
                }
                let mut rows = c.constraints().to_vec();
                rows[i] = Constraint::eq(r.a.clone(), r.b.clone());
                let face = HPolyhedron::new(c.ambient(), rows).expect("same ambient").canonical();
                stack.push(face);
            }
            out.push(c);
        }
        out.sort_by(|a, b| a.constraints().cmp(b.constraints()));
        PolyComplex { ambient: self.ambient, cells: out, fan: self.fan }
    }

    /// Rays of a fan as primitive integer vectors, taken modulo the
    /// all-ones line when every cell contains it.
    pub fn rays(&self) -> Vec<Vec<Rational>> {
        let faces = self.with_faces();
        let quotient = self.has_ones_lineality();
        let base = if quotient { 1 } else { 0 };
        let mut rays: Vec<Vec<Rational>> = faces
            .cells
            .iter()
            .filter_map(|c| {
                let ri = c.relint()?;
                if ri.dim != base + 1 {
                    return None;
                }
                Some(canonical_direction(&ri.point, quotient))
            })
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        rays.sort();
        rays.dedup();
        rays
    }
}

/// Primitive integer representative of the ray through `x`; modulo the
/// all-ones line when `quotient` (minimum coordinate moved to zero).
pub fn canonical_direction(x: &[Rational], quotient: bool) -> Vec<Rational> {
    let v: Vec<Rational> = if quotient {
        let m = x.iter().min().cloned().unwrap_or_else(Rational::zero);
        x.iter().map(|c| c - &m).collect()
    } else {
        x.to_vec()
    };
    super::vrep::primitive(&v)
}

/// Dimension data of a complex. Dimensions drop by one when every cell
/// contains the all-ones line.
pub fn fan_stats(k: &PolyComplex) -> FanStats {
    let shift = i64::from(!k.cells.is_empty() && k.has_ones_lineality());
    let maximal = k.maximal_cells();
    let mut by_dim = BTreeMap::new();
    let mut dim = -1i64;
    for c in &maximal.cells {
        if let Some(d) = c.dim() {
            let d = d as i64 - shift;
            dim = dim.max(d);
            *by_dim.entry(d as usize).or_insert(0) += 1;
        }
    }
    let lineality_dim = if k.cells.is_empty() {
        -1
    } else {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for c in &k.cells {
            rows.extend(c.constraints().iter().map(|r| r.a.clone()));
        }
        let dim = if rows.is_empty() {
            k.ambient
        } else {
            let m = crate::numkernel::QMatrix::from_fn(rows.len(), k.ambient, |i, j| rows[i][j].clone());
            k.ambient - m.rank()
        };
        dim as i64 - shift
    };
    FanStats { dim, lineality_dim, max_cells_by_dim: by_dim }
}

/// Pieces covering the complement of a closed polyhedron: for the i-th
/// constraint, `{a_i·x > b_i} ∩ {a_j·x ≤ b_j : j < i}`. Equations count as
/// two inequalities. Empty pieces are dropped.
pub fn complement_pieces(p: &HPolyhedron) -> Vec<HPolyhedron> {
    complement_within(&HPolyhedron::universe(p.ambient()), &weak_rows(p))
}

/// Weak rows of a closed polyhedron with equations split in two.
pub fn weak_rows(p: &HPolyhedron) -> Vec<Constraint> {
    let mut rows = Vec::new();
    for c in p.constraints() {
        match c.rel {
            Rel::Eq => {
                rows.push(Constraint::le(c.a.clone(), c.b.clone()));
                rows.push(Constraint::ge(c.a.clone(), c.b.clone()));
            }
            _ => rows.push(c.closure()),
        }
    }
    rows
}

/// Complement pieces of `rows` intersected with `base`.
pub fn complement_within(base: &HPolyhedron, rows: &[Constraint]) -> Vec<HPolyhedron> {
    let mut out = Vec::new();
    let mut prefix = base.clone();
    for c in rows {
        let piece = prefix.clone().with(c.negated().expect("weak row"));
        if !piece.is_empty() {
            out.push(piece);
        }
        prefix.push(c.clone());
    }
    out
}

/// Result of a containment test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained,
    /// A point of the tested polyhedron outside every cell.
    Witness(Vec<Rational>),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained)
    }
}

/// Decides `P ⊆ |K|` for a closed polyhedron `P`.
///
/// Worklist: a piece inside some cell is done; otherwise it is cut along
/// a cell meeting it in full dimension (largest intersection, lowest index)
/// and the full-dimensional closed pieces outside that cell go back on the
/// list. A piece meeting no cell in full dimension yields a witness.
pub fn contained_in_complex(p: &HPolyhedron, k: &PolyComplex) -> Result<Containment> {
    if !p.is_closed() {
        return Err(Error::DegenerateInput("containment needs a closed polyhedron".into()));
    }
    if p.ambient() != k.ambient {
        return Err(Error::BadDimensions(format!(
            "polyhedron in R^{} but complex in R^{}",
            p.ambient(),
            k.ambient
        )));
    }
    if p.is_empty() {
        return Ok(Containment::Contained);
    }
    let mut work = vec![p.clone()];
    while let Some(q) = work.pop() {
        let Some(ri) = q.relint() else { continue };
        let dq = ri.dim;
        if k.cells.iter().any(|s| s.constraints().iter().all(|c| q.implies(c))) {
            continue;
        }
        let best = k
            .cells
            .iter()
            .enumerate()
            .filter_map(|(i, s)| q.intersect(s).dim().map(|d| (d, i)))
            .filter(|&(d, _)| d == dq)
            .min_by_key(|&(_, i)| i);
        let Some((_, si)) = best else {
            return Ok(Containment::Witness(witness_outside(&q, &ri, k)));
        };
        let rows: Vec<Constraint> =
            weak_rows(&k.cells[si]).into_iter().filter(|c| !q.implies(c)).collect();
        for piece in complement_within(&q, &rows) {
            let closed = piece.closure_constraints();
            if closed.dim() == Some(dq) {
                work.push(closed);
            }
        }
    }
    Ok(Containment::Contained)
}

/// A point of `q` in no cell of `k`, assuming no cell meets `q` in full
/// dimension: perturb the relative-interior point inside the affine hull
/// along a fixed sequence of directions until every cell is avoided.
fn witness_outside(q: &HPolyhedron, ri: &super::hpoly::Relint, k: &PolyComplex) -> Vec<Rational> {
    if !k.contains_point(&ri.point) {
        return ri.point.clone();
    }
    let dirs = &ri.hull.dirs;
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 19) as i64 - 9
    };
    for attempt in 0..10_000u32 {
        let coeffs: Vec<Rational> = dirs.iter().map(|_| Rational::from_int(next())).collect();
        let mut scale = Rational::new(1, 1 + i64::from(attempt % 7));
        for _ in 0..64 {
            let mut x = ri.point.clone();
            for (c, d) in coeffs.iter().zip(dirs) {
                let f = c * &scale;
                for (xi, di) in x.iter_mut().zip(d) {
                    *xi += &f * di;
                }
            }
            if q.contains(&x) {
                if !k.contains_point(&x) {
                    return x;
                }
                break;
            }
            scale *= Rational::new(1, 2);
        }
    }
    ri.point.clone()
}

/// Meet of two complexes: all nonempty pairwise intersections, reduced to
/// the maximal ones.
pub fn refine(k1: &PolyComplex, k2: &PolyComplex) -> Result<PolyComplex> {
    if k1.ambient != k2.ambient {
        return Err(Error::BadDimensions("refine needs equal ambient dimensions".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..k1.cells.len()).flat_map(|i| (0..k2.cells.len()).map(move |j| (i, j))).collect();
    let cells: Vec<HPolyhedron> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let c = k1.cells[i].intersect(&k2.cells[j]);
            (!c.is_empty()).then(|| c.canonical())
        })
        .collect();
    let mut seen = HashSet::new();
    let cells: Vec<HPolyhedron> = cells.into_iter().filter(|c| seen.insert(c.clone())).collect();
    let out = PolyComplex { ambient: k1.ambient, cells, fan: k1.fan && k2.fan };
    Ok(out.maximal_cells().canonicalized())
}

/// Common subdivision of the union `|K1| ∪ |K2|`: each cell is cut by every
/// hyperplane bounding a cell of either complex; maximal pieces are kept.
pub fn overlay(k1: &PolyComplex, k2: &PolyComplex) -> Result<PolyComplex> {
    if k1.ambient != k2.ambient {
        return Err(Error::BadDimensions("overlay needs equal ambient dimensions".into()));
    }
    let mut hyperplanes: Vec<Constraint> = Vec::new();
    for c in k1.cells.iter().chain(&k2.cells) {
        for r in c.constraints() {
            let h = Constraint::le(r.a.clone(), r.b.clone()).normalized();
            if !h.is_trivial_lhs() && !hyperplanes.contains(&h) {
                hyperplanes.push(h);
            }
        }
    }
    let cells: Vec<HPolyhedron> = k1
        .cells
        .par_iter()
        .chain(k2.cells.par_iter())
        .flat_map(|cell| {
            let Some(d) = cell.dim() else { return Vec::new() };
            let mut pieces = vec![cell.clone()];
            for h in &hyperplanes {
                let mut next = Vec::new();
                for p in pieces {
                    let lo = p.clone().with(h.clone());
                    let hi = p.clone().with(Constraint::ge(h.a.clone(), h.b.clone()));
                    let lo_full = lo.dim() == Some(d);
                    let hi_full = hi.dim() == Some(d);
                    if lo_full && hi_full {
                        next.push(lo);
                        next.push(hi);
                    } else {
                        next.push(p);
                    }
                }
                pieces = next;
            }
            pieces.into_iter().map(|p| p.canonical()).collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let cells: Vec<HPolyhedron> = cells.into_iter().filter(|c| seen.insert(c.clone())).collect();
    let out = PolyComplex { ambient: k1.ambient, cells, fan: k1.fan && k2.fan };
    Ok(out.maximal_cells().canonicalized())
}

/// Mutual containment of supports.
pub fn same_support(k1: &PolyComplex, k2: &PolyComplex) -> Result<bool> {
    for c in &k1.cells {
        if !contained_in_complex(c, k2)?.holds() {
            return Ok(false);
        }
    }
    for c in &k2.cells {
        if !contained_in_complex(c, k1)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::qi;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn cone(n: usize, gens: &[Vec<Rational>]) -> HPolyhedron {
        let vp = super::super::vrep::VPolyhedron {
            ambient: n,
            vertices: vec![vec![qi(0); n]],
            rays: gens.to_vec(),
            lineality: vec![v(&vec![1; n])],
        };
        super::super::vrep::v_to_h(&vp)
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        let mut e = vec![qi(0); n];
        e[i] = qi(1);
        e
    }

    fn standard_plane() -> PolyComplex {
        let mut cells = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                cells.push(cone(6, &[unit(6, i), unit(6, j)]));
            }
        }
        PolyComplex::new(6, cells)
    }

    #[test]
    fn complement_examples() {
        let p = HPolyhedron::new(1, vec![Constraint::le(v(&[1]), qi(0))]).unwrap();
        let pieces = complement_pieces(&p);
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].contains(&v(&[1])) && !pieces[0].contains(&v(&[0])));
        let mut sq = Vec::new();
        for i in 0..2 {
            sq.push(Constraint::ge(unit(2, i), qi(0)));
            sq.push(Constraint::le(unit(2, i), qi(1)));
        }
        let sq = HPolyhedron::new(2, sq).unwrap();
        let pieces = complement_pieces(&sq);
        assert_eq!(pieces.len(), 4);
        for (i, a) in pieces.iter().enumerate() {
            assert!(a.intersect(&sq).is_empty());
            for b in &pieces[i + 1..] {
                assert!(a.intersect(b).is_empty());
            }
        }
        let pt = HPolyhedron::new(1, vec![Constraint::eq(v(&[1]), qi(0))]).unwrap();
        assert_eq!(complement_pieces(&pt).len(), 2);
    }

    #[test]
    fn plane_stats_and_containment() {
        let k = standard_plane();
        let stats = fan_stats(&k);
        assert_eq!(stats.dim, 2);
        assert_eq!(stats.max_cells_by_dim, BTreeMap::from([(2, 15)]));
        let ray = cone(6, &[v(&[1, 1, 0, 0, 0, 0])]);
        assert!(contained_in_complex(&ray, &k).unwrap().holds());
        let bad = cone(6, &[v(&[1, 2, -1, 0, 0, 0])]);
        match contained_in_complex(&bad, &k).unwrap() {
            Containment::Witness(x) => {
                assert!(bad.contains(&x));
                assert!(!k.contains_point(&x));
            }
            Containment::Contained => panic!("ray leaves the plane"),
        }
        assert!(contained_in_complex(&k.cells[3], &k).unwrap().holds());
    }

    #[test]
    fn cone_split_across_cells() {
        // pos(e0, e1) ∪ pos(e1, e2) mod 1 covers pos(e0 + e1, e1 + e2) but
        // not pos(e0, e2).
        let k = PolyComplex::new(3, vec![cone(3, &[unit(3, 0), unit(3, 1)]), cone(3, &[unit(3, 1), unit(3, 2)])]);
        let q = cone(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(contained_in_complex(&q, &k).unwrap().holds());
        let q = cone(3, &[unit(3, 0), unit(3, 2)]);
        assert!(!contained_in_complex(&q, &k).unwrap().holds());
        let q = cone(3, &[v(&[2, 1, 0]), unit(3, 1)]);
        assert!(contained_in_complex(&q, &k).unwrap().holds());
    }

    #[test]
    fn refine_and_overlay() {
        let k = standard_plane();
        let r = refine(&k, &k).unwrap();
        assert_eq!(fan_stats(&r).max_cells_by_dim, BTreeMap::from([(2, 15)]));
        assert!(same_support(&r, &k).unwrap());
        // two crossing lines in R^2
        let l1 = PolyComplex::new(2, vec![HPolyhedron::new(2, vec![Constraint::eq(v(&[0, 1]), qi(0))]).unwrap()]);
        let l2 = PolyComplex::new(2, vec![HPolyhedron::new(2, vec![Constraint::eq(v(&[1, 0]), qi(0))]).unwrap()]);
        let o = overlay(&l1, &l2).unwrap();
        assert_eq!(o.cells.len(), 4);
        let all = o.with_faces();
        assert_eq!(all.cells.len(), 5);
        assert_eq!(o.rays().len(), 4);
        let m = refine(&l1, &l2).unwrap();
        assert_eq!(m.cells.len(), 1);
        assert_eq!(m.cells[0].dim(), Some(0));
    }

    #[test]
    fn complex_json_round_trip() {
        let k = standard_plane().canonicalized();
        let s = serde_json::to_string(&k).unwrap();
        let back: PolyComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
