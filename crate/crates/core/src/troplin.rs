//! Tropical Plücker vectors and the tropicalized linear spaces they cut out.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::{
    binomial, k_subsets, kminors_val, parse_subset_label, subset_label, subset_rank, Field, Matrix, Rational,
    TropValue, Valued,
};
use crate::polyhedra::{canonical_direction, h_to_v, Constraint, HPolyhedron, Orbit, PolyComplex, Rel};
use crate::prevariety::{intersect_system, TropPolynomial, TropSystem};

/// Values on the `(d+1)`-subsets of `{0..n}`, stored in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPluecker {
    d: usize,
    n: usize,
    entries: Vec<TropValue>,
}

impl TropPluecker {
    pub fn new(d: usize, n: usize, entries: Vec<TropValue>) -> Result<Self> {
        if d > n {
            return Err(Error::BadDimensions(format!("d = {d} exceeds n = {n}")));
        }
        let want = binomial(n + 1, d + 1);
        if entries.len() != want {
            return Err(Error::BadDimensions(format!("expected {want} entries, got {}", entries.len())));
        }
        if entries.iter().all(TropValue::is_infinite) {
            return Err(Error::DegenerateInput("all Pluecker entries are infinite".into()));
        }
        Ok(TropPluecker { d, n, entries })
    }

    /// Every entry zero: the uniform matroid with trivial valuation.
    pub fn zero(d: usize, n: usize) -> Self {
        TropPluecker { d, n, entries: vec![TropValue::zero(); binomial(n + 1, d + 1)] }
    }

    /// Valuations of the maximal minors of a `(d+1) × (n+1)` matrix.
    pub fn from_matrix<T: Field + Valued>(m: &Matrix<T>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() < m.nrows() {
            return Err(Error::BadDimensions("need a wide matrix with at least one row".into()));
        }
        let entries = kminors_val(m, m.nrows())?;
        TropPluecker::new(m.nrows() - 1, m.ncols() - 1, entries)
    }

    pub fn from_map(d: usize, n: usize, map: &BTreeMap<Vec<usize>, TropValue>) -> Result<Self> {
        let mut entries = vec![TropValue::Infinity; binomial(n + 1, d + 1)];
        for (s, v) in map {
            if s.len() != d + 1 || s.iter().any(|&i| i > n) || !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::BadDimensions(format!("bad index set {}", subset_label(s))));
            }
            entries[subset_rank(n + 1, s)] = v.clone();
        }
        TropPluecker::new(d, n, entries)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry of a `(d+1)`-set in any order; repeated indices give ∞.
    pub fn get(&self, s: &[usize]) -> TropValue {
        let mut s = s.to_vec();
        s.sort_unstable();
        if s.len() != self.d + 1 || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&i| i > self.n) {
            return TropValue::Infinity;
        }
        self.entries[subset_rank(self.n + 1, &s)].clone()
    }

    pub fn values(&self) -> &[TropValue] {
        &self.entries
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &TropValue)> {
        k_subsets(self.n + 1, self.d + 1).zip(&self.entries)
    }

    /// Shifted so the smallest finite entry is zero.
    pub fn normalized(&self) -> Self {
        let min = self.entries.iter().filter_map(TropValue::finite).min().cloned().unwrap_or_else(Rational::zero);
        let entries = self.entries.iter().map(|v| v.shift(&-&min)).collect();
        TropPluecker { d: self.d, n: self.n, entries }
    }

    /// Equal up to a global additive constant.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.normalized() == other.normalized()
    }

    pub fn support(&self) -> Vec<Vec<usize>> {
        self.entries().filter(|(_, v)| v.is_finite()).map(|(s, _)| s).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PlueckerJson {
    d: usize,
    n: usize,
    entries: BTreeMap<String, TropValue>,
}

impl Serialize for TropPluecker {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.entries().map(|(k, v)| (subset_label(&k), v.clone())).collect();
        PlueckerJson { d: self.d, n: self.n, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropPluecker {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PlueckerJson::deserialize(de)?;
        let mut map = BTreeMap::new();
        for (k, v) in j.entries {
            let s = parse_subset_label(&k).ok_or_else(|| D::Error::custom(format!("bad subset label {k:?}")))?;
            map.insert(s, v);
        }
        TropPluecker::from_map(j.d, j.n, &map).map_err(D::Error::custom)
    }
}

/// Three-term relations: for every `(d−1)`-set `S` and distinct
/// `i, j, k, l` outside it, the minimum of `p_{Sij} + p_{Skl}`,
/// `p_{Sik} + p_{Sjl}`, `p_{Sil} + p_{Sjk}` is attained twice.
pub fn check_3term(p: &TropPluecker) -> bool {
    first_3term_violation(p).is_none()
}

/// The index sets `(S, {i,j,k,l})` of a failing relation.
pub fn first_3term_violation(p: &TropPluecker) -> Option<(Vec<usize>, [usize; 4])> {
    if p.d == 0 {
        return None;
    }
    let m = p.n + 1;
    for s in k_subsets(m, p.d - 1) {
        let rest: Vec<usize> = (0..m).filter(|x| !s.contains(x)).collect();
        for q in k_subsets(rest.len(), 4) {
            let [i, j, k, l] = [rest[q[0]], rest[q[1]], rest[q[2]], rest[q[3]]];
            let with = |a: usize, b: usize| {
                let mut v = s.clone();
                v.push(a);
                v.push(b);
                p.get(&v)
            };
            let terms = [
                with(i, j).tmul(&with(k, l)),
                with(i, k).tmul(&with(j, l)),
                with(i, l).tmul(&with(j, k)),
            ];
            let min = terms.iter().min().expect("three terms");
            if min.is_finite() && terms.iter().filter(|t| *t == min).count() < 2 {
                return Some((s, [i, j, k, l]));
            }
        }
    }
    None
}

/// One polynomial `⊕_{i∈T} p_{T∖i} ⊙ x_i` per `(d+2)`-set `T` with at
/// least two finite coefficients, in `n+1` variables.
pub fn circuit_system(p: &TropPluecker) -> Result<TropSystem> {
    if let Some((s, q)) = first_3term_violation(p) {
        return Err(Error::NotPluecker(format!("relation S = {s:?}, {q:?} has a unique minimum")));
    }
    Ok(circuit_system_unchecked(p, Orbit::torus()))
}

fn circuit_system_unchecked(p: &TropPluecker, orbit: Orbit) -> TropSystem {
    let m = p.n + 1;
    let mut polys = Vec::new();
    for t in k_subsets(m, p.d + 2) {
        let terms: Vec<(usize, TropValue)> = t
            .iter()
            .map(|&i| {
                let rest: Vec<usize> = t.iter().copied().filter(|&j| j != i).collect();
                (i, p.get(&rest))
            })
            .collect();
        let poly = TropPolynomial::linear(m, &terms);
        if poly.finite_terms() >= 2 {
            polys.push(poly);
        }
    }
    TropSystem { ambient: m, orbit, polys }
}

/// `Γ_p` inside an orbit: the circuit prevariety in the finite coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TropLinearSpace {
    pub plucker: TropPluecker,
    pub orbit: Orbit,
    pub complex: PolyComplex,
}

impl TropLinearSpace {
    pub fn system(&self) -> TropSystem {
        circuit_system_unchecked(&self.plucker, self.orbit.clone())
    }

    /// Lifts a point of the finite coordinates to `R ∪ {∞}` coordinates.
    pub fn lift(&self, y: &[Rational]) -> Vec<TropValue> {
        lift_point(self.plucker.n + 1, &self.orbit, y)
    }
}

pub fn lift_point(m: usize, orbit: &Orbit, y: &[Rational]) -> Vec<TropValue> {
    let mut out = vec![TropValue::Infinity; m];
    for (&i, v) in orbit.finite_coords(m).iter().zip(y) {
        out[i] = TropValue::Finite(v.clone());
    }
    out
}

pub fn realize_space(p: &TropPluecker, orbit: &Orbit) -> Result<TropLinearSpace> {
    circuit_system(p)?;
    let orbit = Orbit::new(orbit.infinite().to_vec(), p.n + 1)?;
    let sys = circuit_system_unchecked(p, orbit.clone());
    let complex = intersect_system(&sys)?;
    Ok(TropLinearSpace { plucker: p.clone(), orbit, complex })
}

/// Union of the recession cones of the cells, maximal cones only.
pub fn recession_fan(g: &TropLinearSpace) -> PolyComplex {
    recession_of(&g.complex)
}

pub fn recession_of(k: &PolyComplex) -> PolyComplex {
    let cells = k
        .cells
        .iter()
        .map(|c| {
            let rows = c
                .constraints()
                .iter()
                .map(|r| Constraint::new(r.a.clone(), Rational::zero(), if r.rel == Rel::Eq { Rel::Eq } else { Rel::Le }))
                .collect();
            HPolyhedron::new(k.ambient, rows).expect("same ambient")
        })
        .collect();
    PolyComplex::new(k.ambient, cells).maximal_cells().canonicalized()
}

/// Combinatorial data of a tropical line (`d = 1`) read off its complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    /// Vertices normalized so the first coordinate is zero.
    pub vertices: Vec<Vec<Rational>>,
    /// Bounded edges as vertex index pairs with lattice length.
    pub edges: Vec<(usize, usize, Rational)>,
    /// For every unbounded ray: its vertex and the leaf labels `F` with
    /// direction `e_F` modulo the all-ones vector.
    pub leaves: Vec<(usize, Vec<usize>)>,
}

fn normalize_point(x: &[Rational]) -> Vec<Rational> {
    let f = x[0].clone();
    x.iter().map(|v| v - &f).collect()
}

/// Tree structure of a one-dimensional tropicalized linear space in the
/// torus.
pub fn tree_report(g: &TropLinearSpace) -> Result<TreeReport> {
    if g.plucker.d != 1 {
        return Err(Error::BadDimensions("tree reports need d = 1".into()));
    }
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    let index = |x: Vec<Rational>, vs: &mut Vec<Vec<Rational>>| -> usize {
        let x = normalize_point(&x);
        match vs.iter().position(|v| *v == x) {
            Some(i) => i,
            None => {
                vs.push(x);
                vs.len() - 1
            }
        }
    };
    let mut edges = Vec::new();
    let mut leaves = Vec::new();
    for c in &g.complex.cells {
        let v = h_to_v(c)?;
        let ids: Vec<usize> = v.vertices.iter().map(|x| index(x.clone(), &mut vertices)).collect();
        let rays: Vec<Vec<Rational>> = v.rays.iter().map(|r| canonical_direction(r, true)).collect();
        match (ids.len(), rays.len()) {
            (1, 0) => {}
            (2, 0) => {
                let (a, b) = (ids[0].min(ids[1]), ids[0].max(ids[1]));
                let diff: Vec<Rational> = vertices[b].iter().zip(&vertices[a]).map(|(x, y)| x - y).collect();
                let min = diff.iter().min().cloned().expect("nonempty");
                let shifted: Vec<Rational> = diff.iter().map(|x| x - &min).collect();
                let prim = canonical_direction(&shifted, true);
                let (k, pk) = prim.iter().enumerate().find(|(_, x)| !x.is_zero()).expect("nonzero edge");
                edges.push((a, b, &shifted[k] / pk));
            }
            (1, 1) => {
                let r = &rays[0];
                let top = r.iter().max().cloned().expect("nonempty");
                if r.iter().any(|x| !x.is_zero() && *x != top) {
                    return Err(Error::Internal("ray is not an indicator direction".into()));
                }
                let labels = (0..r.len()).filter(|&i| r[i] == top).collect();
                leaves.push((ids[0], labels));
            }
            _ => return Err(Error::Internal("cell of a tropical line is not an edge".into())),
        }
    }
    edges.sort_by_key(|e| (e.0, e.1));
    leaves.sort();
    Ok(TreeReport { vertices, edges, leaves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{qi, IntMatrix};
    use crate::polyhedra::fan_stats;

    fn line(vals: [i64; 6]) -> TropPluecker {
        TropPluecker::new(1, 3, vals.iter().map(|&v| TropValue::int(v)).collect()).unwrap()
    }

    #[test]
    fn three_term_by_hand() {
        assert!(check_3term(&TropPluecker::zero(2, 5)));
        assert!(check_3term(&line([0, 0, 0, 0, 0, 1])));
        assert!(check_3term(&line([1, 0, 0, 0, 0, 0])));
        assert!(!check_3term(&line([0, 1, 1, 0, 0, 0])));
        assert!(matches!(circuit_system(&line([0, 1, 1, 0, 0, 0])), Err(Error::NotPluecker(_))));
    }

    #[test]
    fn circuit_system_of_zero_vector() {
        let s = circuit_system(&TropPluecker::zero(2, 5)).unwrap();
        assert_eq!(s.polys.len(), 15);
        assert!(s.polys.iter().all(|p| p.terms.len() == 4));
    }

    #[test]
    fn circuit_polynomial_of_parallel_pair() {
        // rows (1,0,1,1,1) and (0,1,0,0,0)
        let m = IntMatrix::from_rows(vec![vec![1, 0, 1, 1, 1], vec![0, 1, 0, 0, 0]]).unwrap();
        let p = TropPluecker::from_matrix(&m.to_q()).unwrap();
        assert!(p.get(&[0, 2]).is_infinite());
        let s = circuit_system(&p).unwrap();
        let e = |i: usize| {
            let mut v = vec![0u32; 5];
            v[i] = 1;
            v
        };
        let f = s.polys.iter().find(|f| f.terms.len() == 3 && f.terms[0].exp == e(0) && f.terms[2].exp == e(2)).unwrap();
        assert!(f.terms[1].coeff.is_infinite());
        assert_eq!(f.finite_terms(), 2);
    }

    #[test]
    fn standard_plane_and_symmetry() {
        let g = realize_space(&TropPluecker::zero(2, 5), &Orbit::torus()).unwrap();
        let st = fan_stats(&g.complex);
        assert_eq!(st.max_cells_by_dim, BTreeMap::from([(2, 15)]));
        assert_eq!(recession_fan(&g), g.complex);
    }

    #[test]
    fn snowflake_line() {
        let mut map = BTreeMap::new();
        for s in k_subsets(6, 2) {
            let v = if [vec![0, 1], vec![2, 3], vec![4, 5]].contains(&s) { 1 } else { 0 };
            map.insert(s, TropValue::int(v));
        }
        let p = TropPluecker::from_map(1, 5, &map).unwrap();
        assert!(check_3term(&p));
        let g = realize_space(&p, &Orbit::torus()).unwrap();
        let t = tree_report(&g).unwrap();
        assert_eq!(t.vertices.len(), 4);
        assert_eq!(t.edges.len(), 3);
        assert!(t.edges.iter().all(|e| e.2 == qi(1)));
        let labels: Vec<Vec<usize>> = t.leaves.iter().map(|l| l.1.clone()).collect();
        assert_eq!(labels.len(), 6);
        // the two leaves of each cherry share a vertex
        for pair in [[0, 1], [2, 3], [4, 5]] {
            let v: Vec<usize> = t.leaves.iter().filter(|l| pair.contains(&l.1[0])).map(|l| l.0).collect();
            assert_eq!(v[0], v[1]);
        }
        let rec = recession_fan(&g);
        let rays = rec.rays();
        assert_eq!(rays.len(), 6);
    }

    #[test]
    fn three_rays_through_a_vertex() {
        // x0 + x1 + x2 = 0, x2 = x3 = x4
        let m = IntMatrix::from_rows(vec![vec![1, -1, 0, 0, 0], vec![1, 0, -1, -1, -1]]).unwrap();
        let p = TropPluecker::from_matrix(&m.to_q()).unwrap();
        let g = realize_space(&p, &Orbit::torus()).unwrap();
        let rays = g.complex.rays();
        assert_eq!(
            rays,
            vec![
                vec![qi(0), qi(0), qi(1), qi(1), qi(1)],
                vec![qi(0), qi(1), qi(0), qi(0), qi(0)],
                vec![qi(1), qi(0), qi(0), qi(0), qi(0)],
            ]
        );
        assert_eq!(tree_report(&g).unwrap().vertices.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = line([0, 0, 0, 0, 0, 1]);
        let j = serde_json::to_string(&p).unwrap();
        assert!(j.contains("\"23\":\"1\"") || j.contains("\"23\":1"), "{j}");
        let back: TropPluecker = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
