//! Toric varieties `X_A` of lattice point sets, their tropicalizations,
//! Cayley structures and lines inside them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fano::contains_line;
use crate::matroids::matroid_from_plucker;
use crate::numkernel::{lattice_kernel, Field, IntMatrix, Matrix, Rational, TMatrix, TRatFn, TropValue};
use crate::polyhedra::{Constraint, Containment, HPolyhedron, Orbit, PolyComplex};
use crate::troplin::{realize_space, TropPluecker};

/// Columns of `A` are the lattice points; the last row is all ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLattice", into = "RawLattice")]
pub struct LatticePointSet {
    a: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawLattice {
    #[serde(rename = "A")]
    a: IntMatrix,
}

impl TryFrom<RawLattice> for LatticePointSet {
    type Error = Error;
    fn try_from(r: RawLattice) -> Result<Self> {
        LatticePointSet::new(r.a)
    }
}

impl From<LatticePointSet> for RawLattice {
    fn from(l: LatticePointSet) -> Self {
        RawLattice { a: l.a }
    }
}

impl LatticePointSet {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if a.nrows() == 0 || a.ncols() == 0 {
            return Err(Error::BadDimensions("empty lattice point set".into()));
        }
        if a.row(a.nrows() - 1).iter().any(|&v| v != 1) {
            return Err(Error::DegenerateInput("last row of A must be all ones".into()));
        }
        Ok(LatticePointSet { a })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        LatticePointSet::new(Matrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Number of lattice points, the `n + 1` of `P^n`.
    pub fn len(&self) -> usize {
        self.a.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.a.ncols() == 0
    }

    /// Saturated integer relations among the points.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        lattice_kernel(&self.a)
    }
}

/// A labeling of the points onto the vertices `0..=s` of a simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyStructure {
    pub s: usize,
    pub labels: Vec<usize>,
}

impl CayleyStructure {
    /// Points grouped by label.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.s + 1];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }
}

/// `x^{l+} − x^{l−}` for an integer relation `l` of the points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    pub relation: Vec<i64>,
}

impl Binomial {
    pub fn plus(&self) -> Vec<u32> {
        self.relation.iter().map(|&v| v.max(0) as u32).collect()
    }

    pub fn minus(&self) -> Vec<u32> {
        self.relation.iter().map(|&v| (-v).max(0) as u32).collect()
    }
}

fn monomial_string(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl std::fmt::Display for Binomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} - {}", monomial_string(&self.plus()), monomial_string(&self.minus()))
    }
}

/// `trop X_A`: the row space of `A`, a single cell containing `R·1`.
pub fn trop_toric(a: &LatticePointSet) -> PolyComplex {
    let n = a.len();
    let rows = a
        .kernel()
        .into_iter()
        .map(|l| Constraint::eq(l.into_iter().map(Rational::from_int).collect(), Rational::zero()))
        .collect();
    let cell = HPolyhedron::new(n, rows).expect("ambient matches");
    PolyComplex::new(n, vec![cell.canonical()])
}

/// One binomial per vector of a lattice basis of the relations. These cut
/// out `X_A` on the torus, which is all the line checks need.
pub fn toric_binomials(a: &LatticePointSet) -> Vec<Binomial> {
    a.kernel().into_iter().map(|relation| Binomial { relation }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyCheck {
    pub holds: bool,
    /// Basis relations whose label sums do not vanish.
    pub failing: Vec<Vec<i64>>,
    /// Some basis relation has a zero entry.
    pub partial_support: bool,
}

/// Checks `Σ l_i e_{π(i)} = 0` for every relation `l` of a kernel basis.
pub fn verify_cayley(a: &LatticePointSet, pi: &CayleyStructure) -> Result<CayleyCheck> {
    if pi.labels.len() != a.len() {
        return Err(Error::BadDimensions(format!("{} labels for {} points", pi.labels.len(), a.len())));
    }
    if let Some(&l) = pi.labels.iter().find(|&&l| l > pi.s) {
        return Err(Error::BadDimensions(format!("label {l} exceeds s = {}", pi.s)));
    }
    if (0..=pi.s).any(|k| !pi.labels.contains(&k)) {
        return Err(Error::NotSurjective(pi.s));
    }
    let kernel = a.kernel();
    let mut failing = Vec::new();
    for l in &kernel {
        let mut sums = vec![0i64; pi.s + 1];
        for (i, &v) in l.iter().enumerate() {
            sums[pi.labels[i]] += v;
        }
        if sums.iter().any(|&s| s != 0) {
            failing.push(l.clone());
        }
    }
    let partial_support = kernel.iter().any(|l| l.contains(&0));
    Ok(CayleyCheck { holds: failing.is_empty(), failing, partial_support })
}

fn check_line(a: &LatticePointSet, p: &TropPluecker) -> Result<()> {
    if p.d() != 1 {
        return Err(Error::BadDimensions(format!("expected a line, got d = {}", p.d())));
    }
    if p.n() + 1 != a.len() {
        return Err(Error::BadDimensions(format!("line in P^{} but {} lattice points", p.n(), a.len())));
    }
    match contains_line(p, &trop_toric(a), &Orbit::torus())? {
        Containment::Contained => Ok(()),
        Containment::Witness(w) => Err(Error::NotContained(format!(
            "point ({}) of the line is not in trop X_A",
            w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// The Cayley structure of a tropical line in `trop X_A`: points are labeled
/// by the minimal flat of the line's matroid containing them.
pub fn cayley_from_line(a: &LatticePointSet, p: &TropPluecker) -> Result<CayleyStructure> {
    check_line(a, p)?;
    let flats = matroid_from_plucker(p)?.minimal_flats()?;
    let mut labels = vec![0; a.len()];
    for (k, f) in flats.iter().enumerate() {
        for &i in f {
            labels[i] = k;
        }
    }
    Ok(CayleyStructure { s: flats.len() - 1, labels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationCertificate {
    /// Every binomial vanishes identically on a parametrization of `ℓ`.
    pub binomials_vanish: bool,
    /// Valuated minors of the basis equal `p` up to a shift.
    pub plucker_match: bool,
    /// `trop ℓ` and `Γ_p` are the same complex.
    pub same_support: bool,
}

impl RealizationCertificate {
    pub fn passed(&self) -> bool {
        self.binomials_vanish && self.plucker_match && self.same_support
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToricRealization {
    pub cayley: CayleyStructure,
    /// `2 × (n+1)` basis of `ℓ`.
    pub basis: TMatrix,
    /// Coefficient rows `h` of the linear equations `Σ h_i x_i = 0`.
    pub equations: Vec<Vec<TRatFn>>,
    pub certificate: RealizationCertificate,
}

fn integral(r: &Rational) -> Result<i64> {
    r.to_i64()
        .filter(|_| r.is_integer())
        .ok_or_else(|| Error::OutOfScope(format!("valuation {r} is not an integer")))
}

fn laurent(terms: &BTreeMap<i64, Rational>) -> TRatFn {
    terms
        .iter()
        .fold(TRatFn::zero(), |s, (&k, c)| s.add(&TRatFn::t_pow(k).mul(&TRatFn::constant(c.clone()))))
}

/// Elements `a_1, …, a_m` of `Q[t, 1/t]` with `val(a_k − a_l) = δ_kl` for an
/// ultrametric `δ` (the larger, the closer).
fn ultrametric_points(delta: &[Vec<i64>]) -> Vec<BTreeMap<i64, Rational>> {
    let m = delta.len();
    let mut pts: Vec<BTreeMap<i64, Rational>> = Vec::with_capacity(m);
    for k in 0..m {
        if k == 0 {
            pts.push(BTreeMap::new());
            continue;
        }
        let j = (0..k).max_by_key(|&j| (delta[k][j], std::cmp::Reverse(j))).expect("k > 0");
        let level = delta[k][j];
        // leading coefficients of a_j − a_l at the level, to be avoided
        let taken: Vec<Rational> = (0..k)
            .filter(|&l| delta[j].get(l).is_some_and(|&d| l == j || d >= level))
            .map(|l| {
                let cj = pts[j].get(&level).cloned().unwrap_or_else(Rational::zero);
                let cl = pts[l].get(&level).cloned().unwrap_or_else(Rational::zero);
                -(cj - cl)
            })
            .collect();
        let c = (1..).map(Rational::from_int).find(|c| !taken.contains(c)).expect("unbounded");
        let mut a = pts[j].clone();
        let e = a.entry(level).or_insert_with(Rational::zero);
        *e = &*e + &c;
        if e.is_zero() {
            a.remove(&level);
        }
        pts.push(a);
    }
    pts
}

/// A classical line over `Q(t)` inside `X_A` whose tropicalization is
/// `Γ_p`, with its linear equations and a certificate.
///
/// Coordinates in one Cayley class are proportional on the line, so the
/// line sits in a translate of the linear space `{x_i = x_j, i ~ j}`. One
/// representative per class gives a line with uniform matroid, realized by
/// columns `(0, 1)` and `t^{p_0k} (1, a_k)` where the `a_k` sit on the tree
/// of the line.
pub fn realize_in_toric(a: &LatticePointSet, p: &TropPluecker) -> Result<ToricRealization> {
    let cayley = cayley_from_line(a, p)?;
    if !verify_cayley(a, &cayley)?.holds {
        return Err(Error::Internal("flat partition of a contained line is not Cayley".into()));
    }
    let classes = cayley.classes();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let val = |i: usize, j: usize| -> Result<i64> {
        match p.get(&[i.min(j), i.max(j)]) {
            TropValue::Finite(r) => integral(&r),
            TropValue::Infinity => Err(Error::Internal(format!("p_{{{i}{j}}} is infinite across classes"))),
        }
    };
    let m = reps.len();
    let n1 = a.len();
    let mut cols: Vec<[TRatFn; 2]> = vec![[TRatFn::zero(), TRatFn::zero()]; n1];
    cols[reps[0]] = [TRatFn::zero(), TRatFn::one()];
    let p0: Vec<i64> = (1..m).map(|k| val(reps[0], reps[k])).collect::<Result<_>>()?;
    let mut delta = vec![vec![0i64; m - 1]; m - 1];
    for k in 1..m {
        for l in 1..m {
            if k != l {
                delta[k - 1][l - 1] = val(reps[k], reps[l])? - p0[k - 1] - p0[l - 1];
            }
        }
    }
    for (k, ak) in ultrametric_points(&delta).iter().enumerate() {
        let s = TRatFn::t_pow(p0[k]);
        cols[reps[k + 1]] = [s.clone(), s.mul(&laurent(ak))];
    }
    // exponents of the proportionality factors inside each class
    let mut shift = vec![0i64; n1];
    for (c, class) in classes.iter().enumerate() {
        let other = reps[if c == 0 { 1 } else { 0 }];
        for &i in &class[1..] {
            shift[i] = val(i, other)? - val(class[0], other)?;
            let f = TRatFn::t_pow(shift[i]);
            cols[i] = [cols[class[0]][0].mul(&f), cols[class[0]][1].mul(&f)];
        }
    }
    let basis = Matrix::from_fn(2, n1, |r, j| cols[j][r].clone());

    let mut equations = Vec::new();
    for class in &classes {
        for w in class.windows(2) {
            let mut h = vec![TRatFn::zero(); n1];
            h[w[0]] = TRatFn::t_pow(shift[w[1]] - shift[w[0]]);
            h[w[1]] = TRatFn::from_int(-1);
            equations.push(h);
        }
    }
    let rep_basis = basis.select_columns(&reps);
    for k in rep_basis.kernel() {
        let lead = k.iter().find(|v| !v.is_zero()).expect("kernel vectors are nonzero").clone();
        let mut h = vec![TRatFn::zero(); n1];
        for (&r, v) in reps.iter().zip(&k) {
            h[r] = v.div(&lead);
        }
        equations.push(h);
    }

    let certificate = certify(a, p, &basis)?;
    if !certificate.passed() {
        return Err(Error::Internal(format!("realization failed its certificate: {certificate:?}")));
    }
    Ok(ToricRealization { cayley, basis, equations, certificate })
}

/// Homogeneous polynomial in `(α, β)`: entry `k` is the coefficient of
/// `α^k β^{deg−k}`.
fn hmul(f: &[TRatFn], g: &[TRatFn]) -> Vec<TRatFn> {
    let mut out = vec![TRatFn::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

fn monomial_on_line(basis: &TMatrix, e: &[u32]) -> Vec<TRatFn> {
    let mut acc = vec![TRatFn::one()];
    for (i, &k) in e.iter().enumerate() {
        let form = [basis.get(1, i).clone(), basis.get(0, i).clone()];
        for _ in 0..k {
            acc = hmul(&acc, &form);
        }
    }
    acc
}

fn certify(a: &LatticePointSet, p: &TropPluecker, basis: &TMatrix) -> Result<RealizationCertificate> {
    let binomials_vanish = toric_binomials(a)
        .iter()
        .all(|b| monomial_on_line(basis, &b.plus()) == monomial_on_line(basis, &b.minus()));
    let q = TropPluecker::from_matrix(basis)?;
    let plucker_match = q.projectively_equal(p);
    let same_support = realize_space(&q, &Orbit::torus())?.complex == realize_space(p, &Orbit::torus())?.complex;
    Ok(RealizationCertificate { binomials_vanish, plucker_match, same_support })
}

/// A torus element `t` with `rowspace(B2 · diag(t)) = rowspace(B1)`, if
/// one exists.
pub fn torus_equivalent(b1: &TMatrix, b2: &TMatrix) -> Result<Option<Vec<TRatFn>>> {
    if b1.ncols() != b2.ncols() {
        return Err(Error::BadDimensions("bases of different ambient spaces".into()));
    }
    let (r1, p1) = b1.rref();
    let (r2, p2) = b2.rref();
    if p1 != p2 {
        return Ok(None);
    }
    let n = b1.ncols();
    for r in 0..p1.len() {
        for j in 0..n {
            if r1.get(r, j).is_zero() != r2.get(r, j).is_zero() {
                return Ok(None);
            }
        }
    }
    // r1[r][j] = r2[r][j] · t_j / t_{p_r}; propagate along nonzero entries
    let mut t: Vec<Option<TRatFn>> = vec![None; n];
    for start in 0..n {
        if t[start].is_some() {
            continue;
        }
        t[start] = Some(TRatFn::one());
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let tc = t[c].clone().expect("set");
            for (r, &pr) in p1.iter().enumerate() {
                if c == pr {
                    for j in 0..n {
                        if t[j].is_none() && !r2.get(r, j).is_zero() {
                            t[j] = Some(r1.get(r, j).mul(&tc).div(r2.get(r, j)));
                            stack.push(j);
                        }
                    }
                } else if !r2.get(r, c).is_zero() && t[pr].is_none() {
                    t[pr] = Some(r2.get(r, c).mul(&tc).div(r1.get(r, c)));
                    stack.push(pr);
                }
            }
        }
    }
    let t: Vec<TRatFn> = t.into_iter().map(|v| v.expect("all visited")).collect();
    for (r, &pr) in p1.iter().enumerate() {
        for j in 0..n {
            if r2.get(r, j).mul(&t[j]) != r1.get(r, j).mul(&t[pr]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::kminors_val;

    fn ex47() -> LatticePointSet {
        LatticePointSet::from_rows(vec![
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![2, 1, 7, 3, 5],
            vec![1, 1, 1, 1, 1],
        ])
        .unwrap()
    }

    fn line_of(rows: Vec<Vec<i64>>) -> (TMatrix, TropPluecker) {
        let b = IntMatrix::from_rows(rows).unwrap().to_t();
        let p = TropPluecker::new(1, b.ncols() - 1, kminors_val(&b, 2).unwrap()).unwrap();
        (b, p)
    }

    #[test]
    fn square_relation() {
        let a = LatticePointSet::from_rows(vec![vec![1, 0, 0, 1], vec![1, 0, -1, 0], vec![1, 1, 1, 1]]).unwrap();
        let b = toric_binomials(&a);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].relation, vec![1, -1, 1, -1]);
        assert_eq!(b[0].to_string(), "x0*x2 - x1*x3");
    }

    #[test]
    fn last_row_must_be_ones() {
        assert!(LatticePointSet::from_rows(vec![vec![1, 2], vec![1, 2]]).is_err());
        let s = r#"{"A": [[0, 1], [1, 1]]}"#;
        let a: LatticePointSet = serde_json::from_str(s).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"A":[[0,1],[1,1]]}"#);
        assert!(serde_json::from_str::<LatticePointSet>(r#"{"A": [[0, 1], [1, 2]]}"#).is_err());
    }

    #[test]
    fn cayley_checks() {
        let a = ex47();
        assert_eq!(toric_binomials(&a)[0].to_string(), "x2*x3 - x4^2");
        let good = CayleyStructure { s: 1, labels: vec![0, 1, 0, 0, 0] };
        assert!(verify_cayley(&a, &good).unwrap().holds);
        let bad = CayleyStructure { s: 2, labels: vec![0, 1, 2, 2, 0] };
        assert!(!verify_cayley(&a, &bad).unwrap().holds);
        let gap = CayleyStructure { s: 2, labels: vec![0, 0, 2, 2, 2] };
        assert_eq!(verify_cayley(&a, &gap), Err(Error::NotSurjective(2)));
    }

    #[test]
    fn lines_of_the_example() {
        let a = ex47();
        let (_, g1) = line_of(vec![vec![1, 0, 1, 1, 1], vec![0, 1, 0, 0, 0]]);
        let c1 = cayley_from_line(&a, &g1).unwrap();
        assert_eq!(c1.classes(), vec![vec![0, 2, 3, 4], vec![1]]);
        let r1 = realize_in_toric(&a, &g1).unwrap();
        let want: Vec<Vec<TRatFn>> = [[1, 0, -1, 0, 0], [0, 0, 1, -1, 0], [0, 0, 0, 1, -1]]
            .iter()
            .map(|r| r.iter().map(|&v| TRatFn::from_int(v)).collect())
            .collect();
        assert_eq!(r1.equations, want);

        let (b2, g2) = line_of(vec![vec![1, -1, 0, 0, 0], vec![1, 0, -1, -1, -1]]);
        let c2 = cayley_from_line(&a, &g2).unwrap();
        assert_eq!(c2.classes(), vec![vec![0], vec![1], vec![2, 3, 4]]);
        let r2 = realize_in_toric(&a, &g2).unwrap();
        assert!(r2.certificate.passed());
        assert!(torus_equivalent(&r2.basis, &b2).unwrap().is_some());
    }

    #[test]
    fn valuations_survive() {
        // a line with a bounded edge, pushed into X_A by a torus translate
        let a = LatticePointSet::from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 1, 1]])
            .unwrap();
        let mut map = BTreeMap::new();
        for s in crate::numkernel::k_subsets(4, 2) {
            let v = if s == vec![0, 1] || s == vec![2, 3] { 2 } else { 0 };
            map.insert(s, TropValue::int(v));
        }
        let p = TropPluecker::from_map(1, 3, &map).unwrap();
        let r = realize_in_toric(&a, &p).unwrap();
        assert!(r.certificate.passed());
        assert_eq!(r.equations.len(), 2);
    }

    #[test]
    fn line_outside_is_rejected() {
        let a = ex47();
        let (_, p) = line_of(vec![vec![1, 0, 1, 2, 1], vec![0, 1, 1, 0, 3]]);
        assert!(matches!(cayley_from_line(&a, &p), Err(Error::NotContained(_))));
    }

    #[test]
    fn torus_equivalence_detects_scaling() {
        let b = IntMatrix::from_rows(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap().to_t();
        let scaled = Matrix::from_fn(2, 4, |r, j| b.get(r, j).mul(&TRatFn::t_pow(j as i64)));
        let t = torus_equivalent(&scaled, &b).unwrap().unwrap();
        assert_eq!(t[2].div(&t[0]), TRatFn::t_pow(2));
        let other = IntMatrix::from_rows(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 3]]).unwrap().to_t();
        assert!(torus_equivalent(&other, &b).unwrap().is_none());
    }
}
