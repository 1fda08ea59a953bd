//! Min-plus hypersurfaces and tropical prevarieties.
//!
//! A point lies on the hypersurface of `F = ⊕ c_t ⊙ x^{a_t}` when the
//! minimum of `c_t + a_t·x` is attained at least twice. Intersections are
//! computed cell by cell: every cell is labelled by the sets of minimizing
//! terms ("achiever sets") at a relative-interior point, and the closed cell
//! for a label is cut out by "the achievers tie and are at most every other
//! term".

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{Rational, TropValue};
use crate::polyhedra::lp::{dot, AffineParam};
use crate::polyhedra::{Constraint, HPolyhedron, Orbit, PolyComplex};

/// Bitmask over the terms of one polynomial.
pub type Achievers = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: TropValue,
    pub exp: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropPolynomial {
    pub terms: Vec<Term>,
}

impl TropPolynomial {
    pub fn new(terms: Vec<(TropValue, Vec<u32>)>) -> Self {
        TropPolynomial { terms: terms.into_iter().map(|(coeff, exp)| Term { coeff, exp }).collect() }
    }

    /// `⊕_i c_i ⊙ x_i` for the listed variables.
    pub fn linear(n: usize, terms: &[(usize, TropValue)]) -> Self {
        TropPolynomial::new(
            terms
                .iter()
                .map(|(i, c)| {
                    let mut e = vec![0; n];
                    e[*i] = 1;
                    (c.clone(), e)
                })
                .collect(),
        )
    }

    pub fn finite_terms(&self) -> usize {
        self.terms.iter().filter(|t| t.coeff.is_finite()).count()
    }

    /// Value `min_t c_t + a_t·x` at a point with possibly infinite entries.
    pub fn eval(&self, x: &[TropValue]) -> TropValue {
        self.terms.iter().map(|t| term_value(t, x)).min().unwrap_or(TropValue::Infinity)
    }
}

fn term_value(t: &Term, x: &[TropValue]) -> TropValue {
    let mut v = t.coeff.clone();
    for (e, xi) in t.exp.iter().zip(x) {
        if *e > 0 {
            v = v.tmul(&match xi {
                TropValue::Finite(r) => TropValue::Finite(r * &Rational::from_int(*e as i64)),
                TropValue::Infinity => TropValue::Infinity,
            });
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropSystem {
    pub ambient: usize,
    #[serde(default)]
    pub orbit: Orbit,
    pub polys: Vec<TropPolynomial>,
}

/// An affine form `c + a·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Form {
    c: Rational,
    a: Vec<Rational>,
}

impl Form {
    fn at(&self, x: &[Rational]) -> Rational {
        &self.c + &dot(&self.a, x)
    }
}

/// The system with the orbit's coordinates removed: each polynomial a
/// list of affine forms over the finite coordinates.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub coords: Vec<usize>,
    polys: Vec<Vec<Form>>,
}

impl TropSystem {
    pub fn new(ambient: usize, polys: Vec<TropPolynomial>, orbit: Orbit) -> Result<Self> {
        let s = TropSystem { ambient, orbit, polys };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, p) in self.polys.iter().enumerate() {
            if p.terms.iter().any(|t| t.exp.len() != self.ambient) {
                return Err(Error::BadDimensions(format!("polynomial {k}: exponent length differs from {}", self.ambient)));
            }
        }
        Orbit::new(self.orbit.infinite().to_vec(), self.ambient)?;
        Ok(())
    }

    /// Restriction to the orbit. `None` when some polynomial keeps exactly
    /// one finite term, so the restricted prevariety is empty.
    pub fn restrict(&self) -> Result<Option<Restricted>> {
        self.validate()?;
        let coords = self.orbit.finite_coords(self.ambient);
        let mut polys = Vec::new();
        for (k, p) in self.polys.iter().enumerate() {
            if p.finite_terms() < 2 {
                return Err(Error::DegenerateSystem(format!("polynomial {k} has fewer than two finite terms")));
            }
            let mut forms: Vec<Form> = Vec::new();
            for t in &p.terms {
                let Some(c) = t.coeff.finite() else { continue };
                if self.orbit.infinite().iter().any(|&i| t.exp[i] > 0) {
                    continue;
                }
                let f = Form { c: c.clone(), a: coords.iter().map(|&i| Rational::from_int(t.exp[i] as i64)).collect() };
                if !forms.contains(&f) {
                    forms.push(f);
                }
            }
            match forms.len() {
                0 => continue,
                1 => return Ok(None),
                _ => {}
            }
            if forms.len() > 64 {
                return Err(Error::OutOfScope("polynomials with more than 64 terms".into()));
            }
            polys.push(forms);
        }
        Ok(Some(Restricted { coords, polys }))
    }

    /// Whether `x` lies on every hypersurface. Infinite entries of `x` must
    /// match the orbit.
    pub fn member(&self, x: &[TropValue]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::BadDimensions(format!("point of length {} for ambient {}", x.len(), self.ambient)));
        }
        let inf: Vec<usize> = (0..x.len()).filter(|&i| x[i].is_infinite()).collect();
        if inf != self.orbit.infinite() {
            return Err(Error::OrbitMismatch(format!("point infinite at {inf:?}, system orbit {:?}", self.orbit.infinite())));
        }
        let Some(r) = self.restrict()? else { return Ok(false) };
        let y: Vec<Rational> = r.coords.iter().map(|&i| x[i].finite().expect("finite coordinate").clone()).collect();
        Ok(r.member(&y))
    }
}

impl Restricted {
    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn member(&self, y: &[Rational]) -> bool {
        self.signature_at(y).iter().all(|m| m.count_ones() >= 2)
    }

    /// Achiever set of every polynomial at `y`.
    pub fn signature_at(&self, y: &[Rational]) -> Vec<Achievers> {
        self.polys.iter().map(|p| achievers(p, y)).collect()
    }

    /// Closed cell of all points whose achiever sets contain `sig`.
    pub fn cell_of_signature(&self, sig: &[Achievers]) -> HPolyhedron {
        let n = self.ambient();
        let mut rows = Vec::new();
        for (p, &m) in self.polys.iter().zip(sig) {
            rows.extend(signature_rows(p, m));
        }
        HPolyhedron::new(n, rows).expect("forms have ambient length")
    }
}

fn achievers(p: &[Form], y: &[Rational]) -> Achievers {
    let vals: Vec<Rational> = p.iter().map(|f| f.at(y)).collect();
    let min = vals.iter().min().expect("nonempty polynomial");
    vals.iter().enumerate().filter(|(_, v)| *v == min).fold(0, |m, (i, _)| m | 1 << i)
}

/// `f_i = f_{i0}` for achievers `i`, `f_{i0} ≤ f_k` for the others.
fn signature_rows(p: &[Form], m: Achievers) -> Vec<Constraint> {
    let i0 = m.trailing_zeros() as usize;
    let mut rows = Vec::new();
    for (k, f) in p.iter().enumerate() {
        if k == i0 {
            continue;
        }
        // f_{i0} − f_k  (≤ or =)  0
        let a: Vec<Rational> = p[i0].a.iter().zip(&f.a).map(|(x, y)| x - y).collect();
        let b = &f.c - &p[i0].c;
        rows.push(if m >> k & 1 == 1 { Constraint::eq(a, b) } else { Constraint::le(a, b) });
    }
    rows
}

/// Hypersurface of one polynomial in the torus: the nonempty closed cells
/// `S_ij` of unordered finite term pairs.
pub fn trop_hypersurface(f: &TropPolynomial) -> Result<PolyComplex> {
    let n = f.terms.first().map_or(0, |t| t.exp.len());
    let sys = TropSystem::new(n, vec![f.clone()], Orbit::torus())?;
    let r = sys.restrict()?.expect("torus keeps every finite term");
    let p = &r.polys[0];
    let mut cells = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let cell = HPolyhedron::new(n, signature_rows(p, 1 << i | 1 << j)).expect("ambient");
            if !cell.is_empty() {
                cells.push(cell);
            }
        }
    }
    Ok(PolyComplex::new(n, cells).canonicalized())
}

/// A cell during the fold: parametrized affine hull, irredundant
/// inequalities in hull coordinates, and its label.
#[derive(Clone)]
struct Cell {
    sig: Vec<Achievers>,
    hull: AffineParam,
    ineqs: Vec<(Vec<Rational>, Rational)>,
    point: Vec<Rational>,
}

impl Cell {
    fn poly(&self) -> HPolyhedron {
        let rows = self.ineqs.iter().map(|(a, b)| Constraint::le(a.clone(), b.clone())).collect();
        HPolyhedron::new(self.hull.dim(), rows).expect("hull coordinates")
    }

    /// Form in hull coordinates.
    fn pull(&self, f: &Form) -> Form {
        Form { c: f.at(&self.hull.x0), a: self.hull.pull_linear(&f.a) }
    }
}

fn compose(outer: &AffineParam, inner: &AffineParam) -> AffineParam {
    AffineParam {
        x0: outer.push(&inner.x0),
        dirs: inner
            .dirs
            .iter()
            .map(|d| {
                let mut v = vec![Rational::zero(); outer.x0.len()];
                for (dk, ok) in d.iter().zip(&outer.dirs) {
                    if dk.is_zero() {
                        continue;
                    }
                    for (vi, oi) in v.iter_mut().zip(ok) {
                        *vi += dk * oi;
                    }
                }
                v
            })
            .collect(),
    }
}

fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

/// Restricts `parent` by extra rows in its hull coordinates and returns the
/// resulting cell, or `None` when empty.
fn subcell(parent: &Cell, extra: Vec<Constraint>, sig: Vec<Achievers>) -> Option<Cell> {
    let mut q = parent.poly();
    for c in extra {
        q.push(c);
    }
    let ri = q.relint()?;
    let hull = compose(&parent.hull, &ri.hull);
    let mut rows: Vec<Constraint> = Vec::new();
    for (i, c) in q.constraints().iter().enumerate() {
        if ri.implicit_eq.contains(&i) {
            continue;
        }
        let (a, b) = ri.hull.pull(&c.a, &c.b);
        if is_zero_vec(&a) {
            continue;
        }
        rows.push(Constraint::le(a, b));
    }
    let reduced = HPolyhedron::new(ri.dim, rows).expect("hull coordinates").remove_redundant();
    let ineqs = reduced.constraints().iter().map(|c| (c.a.clone(), c.b.clone())).collect();
    let point = parent.hull.push(&ri.point);
    Some(Cell { sig, hull, ineqs, point })
}

/// Whether the closed cell lies entirely in `{achievers of p ⊇ m}`.
fn cell_inside(cell: &Cell, pulled: &[Form], m: Achievers) -> bool {
    let i0 = m.trailing_zeros() as usize;
    let poly = cell.poly();
    for (k, f) in pulled.iter().enumerate() {
        if k == i0 {
            continue;
        }
        let a: Vec<Rational> = pulled[i0].a.iter().zip(&f.a).map(|(x, y)| x - y).collect();
        let b = &f.c - &pulled[i0].c;
        if m >> k & 1 == 1 {
            if !(is_zero_vec(&a) && b.is_zero()) {
                return false;
            }
        } else if is_zero_vec(&a) {
            if b.is_negative() {
                return false;
            }
        } else if !poly.implies(&Constraint::le(a, b)) {
            return false;
        }
    }
    true
}

fn normalized_forms(p: &[Form]) -> Vec<Form> {
    let min = p.iter().map(|f| f.c.clone()).min().expect("nonempty");
    let mut v: Vec<Form> = p.iter().map(|f| Form { c: &f.c - &min, a: f.a.clone() }).collect();
    v.sort_by(|x, y| (&x.a, &x.c).cmp(&(&y.a, &y.c)));
    v
}

/// The prevariety of the system inside its orbit, as the list of maximal
/// closed cells in the coordinates `orbit.finite_coords(ambient)`.
pub fn intersect_system(s: &TropSystem) -> Result<PolyComplex> {
    let Some(r) = s.restrict()? else {
        return Ok(PolyComplex::empty(s.ambient - s.orbit.infinite().len()));
    };
    let n = r.ambient();
    // dedup up to additive constants, then fewest terms first
    let mut seen = HashSet::new();
    let mut polys: Vec<Vec<Form>> = Vec::new();
    for p in &r.polys {
        let key = normalized_forms(p);
        if seen.insert(key.clone()) {
            polys.push(key);
        }
    }
    polys.sort_by_key(Vec::len);
    let sys = Restricted { coords: r.coords.clone(), polys };

    let mut cells = vec![Cell { sig: Vec::new(), hull: AffineParam::full(n), ineqs: Vec::new(), point: vec![Rational::zero(); n] }];
    for (idx, p) in sys.polys.iter().enumerate() {
        let mut next: HashMap<Vec<Achievers>, Cell> = HashMap::new();
        for cell in &cells {
            let pulled: Vec<Form> = p.iter().map(|f| cell.pull(f)).collect();
            let here = achievers(p, &cell.point);
            if here.count_ones() >= 2 && cell_inside(cell, &pulled, here) {
                let mut sig = cell.sig.clone();
                sig.push(here);
                next.entry(sig.clone()).or_insert_with(|| Cell { sig, ..cell.clone() });
                continue;
            }
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    let (fi, fj) = (&pulled[i], &pulled[j]);
                    let da: Vec<Rational> = fi.a.iter().zip(&fj.a).map(|(x, y)| x - y).collect();
                    if is_zero_vec(&da) && fi.c != fj.c {
                        continue;
                    }
                    let mut q = cell.poly();
                    q.push(Constraint::eq(da, &fj.c - &fi.c));
                    for (k, fk) in pulled.iter().enumerate() {
                        if k != i && k != j {
                            let a: Vec<Rational> = fi.a.iter().zip(&fk.a).map(|(x, y)| x - y).collect();
                            let b = &fk.c - &fi.c;
                            if is_zero_vec(&a) {
                                if b.is_negative() {
                                    q = HPolyhedron::empty(q.ambient());
                                    break;
                                }
                                continue;
                            }
                            q.push(Constraint::le(a, b));
                        }
                    }
                    let Some(ri) = q.relint() else { continue };
                    let x = cell.hull.push(&ri.point);
                    let sig: Vec<Achievers> = sys.polys[..=idx].iter().map(|f| achievers(f, &x)).collect();
                    if next.contains_key(&sig) {
                        continue;
                    }
                    // equalities for the achievers gained on earlier polynomials and on p
                    let mut extra = Vec::new();
                    for (k, (&m, f)) in sig.iter().zip(&sys.polys[..=idx]).enumerate() {
                        let old = cell.sig.get(k).copied().unwrap_or(0);
                        if m == old {
                            continue;
                        }
                        let pf: Vec<Form> = f.iter().map(|t| cell.pull(t)).collect();
                        let rows = signature_rows(&pf, m);
                        let i0 = m.trailing_zeros() as usize;
                        for (t, row) in (0..f.len()).filter(|&t| t != i0).zip(rows) {
                            if k == idx || m >> t & 1 == 1 {
                                extra.push(row);
                            }
                        }
                    }
                    if let Some(c) = subcell(cell, extra, sig.clone()) {
                        next.insert(sig, c);
                    }
                }
            }
        }
        // drop cells that are faces of others (larger achiever sets)
        let all: Vec<Cell> = next.into_values().collect();
        let mut keep: Vec<Cell> = all
            .iter()
            .filter(|c| {
                !all.iter().any(|o| o.sig != c.sig && o.sig.iter().zip(&c.sig).all(|(a, b)| a & b == *a))
            })
            .cloned()
            .collect();
        keep.sort_by(|a, b| a.sig.cmp(&b.sig));
        cells = keep;
        if cells.is_empty() {
            break;
        }
    }
    let out: Vec<HPolyhedron> = cells.iter().map(|c| sys.cell_of_signature(&c.sig)).collect();
    Ok(PolyComplex::new(n, out).canonicalized())
}

/// A relative-interior point of every cell, in the finite coordinates.
pub fn cell_witnesses(k: &PolyComplex) -> Vec<Vec<Rational>> {
    k.cells.iter().filter_map(|c| c.relint().map(|r| r.point)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{k_subsets, qi};
    use crate::polyhedra::fan_stats;
    use std::collections::BTreeMap;

    fn min_of(n: usize, vars: &[usize]) -> TropPolynomial {
        TropPolynomial::linear(n, &vars.iter().map(|&i| (i, TropValue::zero())).collect::<Vec<_>>())
    }

    fn fin(xs: &[i64]) -> Vec<TropValue> {
        xs.iter().map(|&x| TropValue::int(x)).collect()
    }

    #[test]
    fn tropical_line_in_plane() {
        let k = trop_hypersurface(&min_of(3, &[0, 1, 2])).unwrap();
        assert_eq!(k.cells.len(), 3);
        assert_eq!(fan_stats(&k).max_cells_by_dim, BTreeMap::from([(1, 3)]));
    }

    #[test]
    fn binomial_is_hyperplane() {
        let f = TropPolynomial::new(vec![(TropValue::zero(), vec![1, 0, 1, 0]), (TropValue::zero(), vec![0, 1, 0, 1])]);
        let k = trop_hypersurface(&f).unwrap();
        assert_eq!(k.cells.len(), 1);
        let h = HPolyhedron::new(4, vec![Constraint::eq(vec![qi(1), qi(-1), qi(1), qi(-1)], qi(0))]).unwrap();
        assert!(k.cells[0].same_set(&h));
    }

    #[test]
    fn shifted_monomials() {
        let f = TropPolynomial::linear(2, &[(0, TropValue::zero()), (1, TropValue::int(1))]);
        let k = trop_hypersurface(&f).unwrap();
        assert_eq!(k.cells.len(), 1);
        assert!(k.cells[0].contains(&[qi(1), qi(0)]));
        assert!(!k.cells[0].contains(&[qi(0), qi(0)]));
    }

    #[test]
    fn single_poly_system() {
        let s = TropSystem::new(6, vec![min_of(6, &[0, 1, 2, 3, 4, 5])], Orbit::torus()).unwrap();
        let k = intersect_system(&s).unwrap();
        assert_eq!(fan_stats(&k).max_cells_by_dim, BTreeMap::from([(4, 15)]));
    }

    #[test]
    fn standard_plane() {
        let polys = k_subsets(6, 4).map(|t| min_of(6, &t)).collect();
        let s = TropSystem::new(6, polys, Orbit::torus()).unwrap();
        let k = intersect_system(&s).unwrap();
        let st = fan_stats(&k);
        assert_eq!(st.max_cells_by_dim, BTreeMap::from([(2, 15)]));
        for x in cell_witnesses(&k) {
            assert!(s.member(&x.iter().cloned().map(TropValue::Finite).collect::<Vec<_>>()).unwrap());
        }
        assert!(s.member(&fin(&[0; 6])).unwrap());
        assert!(!s.member(&fin(&[0, 1, 2, 3, 4, 5])).unwrap());
    }

    #[test]
    fn orbit_restriction() {
        // min(x0, x1, x2) with x2 = ∞ → x0 = x1
        let s = TropSystem::new(3, vec![min_of(3, &[0, 1, 2])], Orbit::new(vec![2], 3).unwrap()).unwrap();
        let k = intersect_system(&s).unwrap();
        assert_eq!(k.ambient, 2);
        assert_eq!(k.cells.len(), 1);
        assert_eq!(k.cells[0].dim(), Some(1));
        // min(x0, x1) with x1 = ∞ → empty
        let s = TropSystem::new(3, vec![min_of(3, &[0, 1])], Orbit::new(vec![1], 3).unwrap()).unwrap();
        assert!(intersect_system(&s).unwrap().is_empty());
        // min(x1, x2) with both infinite → discarded
        let s = TropSystem::new(3, vec![min_of(3, &[1, 2])], Orbit::new(vec![1, 2], 3).unwrap()).unwrap();
        let k = intersect_system(&s).unwrap();
        assert_eq!(k.cells.len(), 1);
        assert_eq!(k.cells[0].dim(), Some(1));
    }

    #[test]
    fn member_orbit_mismatch() {
        let s = TropSystem::new(3, vec![min_of(3, &[0, 1, 2])], Orbit::torus()).unwrap();
        let x = vec![TropValue::zero(), TropValue::Infinity, TropValue::zero()];
        assert!(matches!(s.member(&x), Err(Error::OrbitMismatch(_))));
    }

    #[test]
    fn degenerate_polynomial() {
        let f = TropPolynomial::new(vec![(TropValue::zero(), vec![1, 0]), (TropValue::Infinity, vec![0, 1])]);
        assert!(matches!(trop_hypersurface(&f), Err(Error::DegenerateSystem(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = TropSystem::new(3, vec![min_of(3, &[0, 1, 2])], Orbit::new(vec![2], 3).unwrap()).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains("\"coeff\""));
        let back: TropSystem = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
