use std::fmt;

use serde::{Deserialize, Serialize};

use super::lp::{dot, maximize, AffineParam, LpResult};
use crate::error::{Error, Result};
use crate::numkernel::{QMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    /// `a·x ≤ b`
    Le,
    /// `a·x < b`
    Lt,
    /// `a·x = b`
    Eq,
}

/// A single linear constraint `a·x (rel) b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub a: Vec<Rational>,
    pub b: Rational,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(a: Vec<Rational>, b: Rational, rel: Rel) -> Self {
        Constraint { a, b, rel }
    }

    pub fn le(a: Vec<Rational>, b: Rational) -> Self {
        Constraint::new(a, b, Rel::Le)
    }

    pub fn lt(a: Vec<Rational>, b: Rational) -> Self {
        Constraint::new(a, b, Rel::Lt)
    }

    pub fn eq(a: Vec<Rational>, b: Rational) -> Self {
        Constraint::new(a, b, Rel::Eq)
    }

    /// `a·x ≥ b` written as `−a·x ≤ −b`.
    pub fn ge(a: Vec<Rational>, b: Rational) -> Self {
        Constraint::le(a.iter().map(|x| -x).collect(), -b)
    }

    /// `a·x > b` written as `−a·x < −b`.
    pub fn gt(a: Vec<Rational>, b: Rational) -> Self {
        Constraint::lt(a.iter().map(|x| -x).collect(), -b)
    }

    pub fn is_trivial_lhs(&self) -> bool {
        self.a.iter().all(Rational::is_zero)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let v = dot(&self.a, x);
        match self.rel {
            Rel::Le => v <= self.b,
            Rel::Lt => v < self.b,
            Rel::Eq => v == self.b,
        }
    }

    /// The complement of a half-space; `None` for equations.
    pub fn negated(&self) -> Option<Constraint> {
        match self.rel {
            Rel::Le => Some(Constraint::gt(self.a.clone(), self.b.clone())),
            Rel::Lt => Some(Constraint::ge(self.a.clone(), self.b.clone())),
            Rel::Eq => None,
        }
    }

    pub fn closure(&self) -> Constraint {
        match self.rel {
            Rel::Lt => Constraint::le(self.a.clone(), self.b.clone()),
            _ => self.clone(),
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one
    /// (value one for equations).
    pub fn normalized(&self) -> Constraint {
        let Some(lead) = self.a.iter().find(|x| !x.is_zero()) else {
            let b = match self.b.signum() {
                0 => Rational::zero(),
                s => Rational::from_int(s as i64),
            };
            return Constraint { a: self.a.clone(), b, rel: self.rel };
        };
        let s = if self.rel == Rel::Eq { lead.recip() } else { lead.abs().recip() };
        Constraint {
            a: self.a.iter().map(|x| x * &s).collect(),
            b: &self.b * &s,
            rel: self.rel,
        }
    }
}

/// A polyhedron given by weak and strict inequalities and equations.
/// With strict rows it need not be closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    n: usize,
    constraints: Vec<Constraint>,
}

/// Relative-interior data of a nonempty polyhedron.
#[derive(Clone, Debug)]
pub struct Relint {
    pub point: Vec<Rational>,
    pub dim: usize,
    /// Indices of constraints holding with equality on the whole polyhedron.
    pub implicit_eq: Vec<usize>,
    /// Parametrization of the affine hull.
    pub hull: AffineParam,
}

impl HPolyhedron {
    pub fn universe(n: usize) -> Self {
        HPolyhedron { n, constraints: Vec::new() }
    }

    /// The canonical empty polyhedron `0 ≤ −1`.
    pub fn empty(n: usize) -> Self {
        HPolyhedron { n, constraints: vec![Constraint::le(vec![Rational::zero(); n], -Rational::one())] }
    }

    pub fn new(n: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.a.len() != n) {
            return Err(Error::BadDimensions(format!(
                "constraint of length {} in ambient dimension {n}",
                c.a.len()
            )));
        }
        Ok(HPolyhedron { n, constraints })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.a.len(), self.n, "constraint length mismatch");
        self.constraints.push(c);
    }

    pub fn with(mut self, c: Constraint) -> Self {
        self.push(c);
        self
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        assert_eq!(self.n, other.n, "ambient mismatch");
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        HPolyhedron { n: self.n, constraints }
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| c.rel != Rel::Lt)
    }

    pub fn closure_constraints(&self) -> HPolyhedron {
        HPolyhedron { n: self.n, constraints: self.constraints.iter().map(Constraint::closure).collect() }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    fn equations(&self, extra: &[usize]) -> Vec<(&[Rational], &Rational)> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(i, c)| c.rel == Rel::Eq || extra.contains(i))
            .map(|(_, c)| (&c.a[..], &c.b))
            .collect()
    }

    /// A point of the polyhedron, strictly satisfying all strict rows.
    pub fn feasible(&self) -> Option<Vec<Rational>> {
        let hull = AffineParam::from_equations(self.n, &self.equations(&[]))?;
        let k = hull.dim();
        let has_strict = self.constraints.iter().any(|c| c.rel == Rel::Lt);
        let mut rows = Vec::with_capacity(self.constraints.len() + 1);
        for c in &self.constraints {
            if c.rel == Rel::Eq {
                continue;
            }
            let (mut a, b) = hull.pull(&c.a, &c.b);
            if a.iter().all(Rational::is_zero) {
                let ok = if c.rel == Rel::Lt { b.is_positive() } else { !b.is_negative() };
                if !ok {
                    return None;
                }
                continue;
            }
            if has_strict {
                a.push(if c.rel == Rel::Lt { Rational::one() } else { Rational::zero() });
            }
            rows.push((a, b));
        }
        if !has_strict {
            return match maximize(&vec![Rational::zero(); k], &rows) {
                LpResult::Optimal { point, .. } => Some(hull.push(&point)),
                LpResult::Unbounded => unreachable!("zero objective"),
                LpResult::Infeasible => None,
            };
        }
        let mut t_row = vec![Rational::zero(); k + 1];
        t_row[k] = Rational::one();
        rows.push((t_row.clone(), Rational::one()));
        match maximize(&t_row, &rows) {
            LpResult::Optimal { point, value, .. } if value.is_positive() => Some(hull.push(&point[..k])),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.feasible().is_none()
    }

    /// Relative-interior point, dimension and implicit equations.
    ///
    /// Repeatedly maximizes a common slack `t` over the undecided rows; at
    /// optimum zero the rows with positive multiplier are tight on the whole
    /// closure and move to the equations.
    pub fn relint(&self) -> Option<Relint> {
        let mut implicit: Vec<usize> = Vec::new();
        loop {
            let hull = AffineParam::from_equations(self.n, &self.equations(&implicit))?;
            let k = hull.dim();
            let mut rows = Vec::new();
            let mut row_src = Vec::new();
            for (i, c) in self.constraints.iter().enumerate() {
                if c.rel == Rel::Eq || implicit.contains(&i) {
                    continue;
                }
                let (mut a, b) = hull.pull(&c.a, &c.b);
                if a.iter().all(Rational::is_zero) {
                    match b.signum() {
                        1 => continue,
                        0 if c.rel == Rel::Le => {
                            implicit.push(i);
                            continue;
                        }
                        _ => return None,
                    }
                }
                a.push(Rational::one());
                rows.push((a, b));
                row_src.push(i);
            }
            if rows.is_empty() {
                let mut implicit_eq: Vec<usize> = self
                    .constraints
                    .iter()
                    .enumerate()
                    .filter(|(i, c)| c.rel == Rel::Eq || implicit.contains(i))
                    .map(|(i, _)| i)
                    .collect();
                implicit_eq.sort_unstable();
                return Some(Relint { point: hull.x0.clone(), dim: k, implicit_eq, hull });
            }
            let mut t_row = vec![Rational::zero(); k + 1];
            t_row[k] = Rational::one();
            rows.push((t_row.clone(), Rational::one()));
            let LpResult::Optimal { point, value, duals } = maximize(&t_row, &rows) else {
                return None;
            };
            if value.is_positive() {
                let mut implicit_eq: Vec<usize> = self
                    .constraints
                    .iter()
                    .enumerate()
                    .filter(|(i, c)| c.rel == Rel::Eq || implicit.contains(i))
                    .map(|(i, _)| i)
                    .collect();
                implicit_eq.sort_unstable();
                let point = hull.push(&point[..k]);
                return Some(Relint { point, dim: k, implicit_eq, hull });
            }
            if value.is_negative() {
                return None;
            }
            let mut moved = false;
            for (r, &i) in row_src.iter().enumerate() {
                if duals[r].is_positive() {
                    if self.constraints[i].rel == Rel::Lt {
                        return None;
                    }
                    implicit.push(i);
                    moved = true;
                }
            }
            if !moved {
                return None;
            }
        }
    }

    /// Dimension, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.relint().map(|r| r.dim)
    }

    /// Whether every point satisfies `c`.
    pub fn implies(&self, c: &Constraint) -> bool {
        match c.negated() {
            Some(neg) => self.clone().with(neg).is_empty(),
            None => {
                let le = Constraint::le(c.a.clone(), c.b.clone());
                let ge = Constraint::ge(c.a.clone(), c.b.clone());
                self.implies(&le) && self.implies(&ge)
            }
        }
    }

    pub fn is_subset_of(&self, other: &HPolyhedron) -> bool {
        if self.is_empty() {
            return true;
        }
        other.constraints.iter().all(|c| self.implies(c))
    }

    pub fn same_set(&self, other: &HPolyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Drops rows implied by the remaining ones. Empty input becomes
    /// [`HPolyhedron::empty`].
    pub fn remove_redundant(&self) -> HPolyhedron {
        if self.is_empty() {
            return HPolyhedron::empty(self.n);
        }
        let mut rows: Vec<Constraint> = Vec::new();
        for c in &self.constraints {
            let c = c.normalized();
            if c.is_trivial_lhs() || rows.contains(&c) {
                continue;
            }
            rows.push(c);
        }
        let mut i = 0;
        while i < rows.len() {
            let c = rows[i].clone();
            let others = HPolyhedron {
                n: self.n,
                constraints: rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect(),
            };
            if others.implies(&c) {
                rows.remove(i);
            } else {
                i += 1;
            }
        }
        HPolyhedron { n: self.n, constraints: rows }
    }

    /// A unique description of a closed polyhedron: affine hull in reduced
    /// echelon form, then irredundant facet inequalities reduced against it,
    /// all normalized and sorted. Empty sets map to [`HPolyhedron::empty`].
    pub fn canonical(&self) -> HPolyhedron {
        let Some(ri) = self.closure_constraints().relint() else {
            return HPolyhedron::empty(self.n);
        };
        let n = self.n;
        let eqs: Vec<&Constraint> = ri.implicit_eq.iter().map(|&i| &self.constraints[i]).collect();
        let m = QMatrix::from_fn(eqs.len(), n + 1, |i, j| {
            if j < n { eqs[i].a[j].clone() } else { eqs[i].b.clone() }
        });
        let (r, pivots) = m.rref();
        let hull: Vec<Constraint> = (0..r.nrows())
            .map(|i| Constraint::eq(r.row(i)[..n].to_vec(), r.get(i, n).clone()))
            .collect();
        let reduce = |c: &Constraint| {
            let mut a = c.a.clone();
            let mut b = c.b.clone();
            for (i, &p) in pivots.iter().enumerate() {
                if a[p].is_zero() {
                    continue;
                }
                let f = a[p].clone();
                for j in 0..n {
                    a[j] -= &f * &hull[i].a[j];
                }
                b -= &f * &hull[i].b;
            }
            Constraint::new(a, b, c.rel).normalized()
        };
        let mut ineqs: Vec<Constraint> = Vec::new();
        for (i, c) in self.constraints.iter().enumerate() {
            if ri.implicit_eq.contains(&i) {
                continue;
            }
            let c = reduce(&c.closure());
            if !c.is_trivial_lhs() && !ineqs.contains(&c) {
                ineqs.push(c);
            }
        }
        let base = HPolyhedron { n, constraints: hull.clone() };
        let mut keep: Vec<Constraint> = Vec::new();
        for i in 0..ineqs.len() {
            let others = base.intersect(&HPolyhedron {
                n,
                constraints: ineqs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .filter(|&(j, c)| j > i || keep.contains(c))
                    .map(|(_, c)| c.clone())
                    .collect(),
            });
            if !others.implies(&ineqs[i]) {
                keep.push(ineqs[i].clone());
            }
        }
        keep.sort();
        let mut constraints = hull;
        constraints.extend(keep);
        HPolyhedron { n, constraints }
    }

    /// Lineality space `{v : a·v = 0 for every row}`.
    pub fn lineality(&self) -> Vec<Vec<Rational>> {
        if self.constraints.is_empty() {
            return AffineParam::full(self.n).dirs;
        }
        let m = QMatrix::from_fn(self.constraints.len(), self.n, |i, j| self.constraints[i].a[j].clone());
        m.kernel()
    }

    /// Whether the all-ones vector lies in the lineality space.
    pub fn has_ones_lineality(&self) -> bool {
        self.constraints.iter().all(|c| c.a.iter().sum::<Rational>().is_zero())
    }

    /// Cone through the origin: every right-hand side is zero.
    pub fn is_cone(&self) -> bool {
        self.constraints.iter().all(|c| c.b.is_zero())
    }

    /// Image under the linear substitution `x = M y` (for `M` of shape
    /// `n × k`), giving a polyhedron in `y`.
    pub fn pullback(&self, m: &QMatrix) -> HPolyhedron {
        assert_eq!(m.nrows(), self.n);
        let k = m.ncols();
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let a = (0..k).map(|j| dot(&c.a, &m.column(j))).collect();
                Constraint::new(a, c.b.clone(), c.rel)
            })
            .collect();
        HPolyhedron { n: k, constraints }
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let mut first = true;
            for (j, a) in c.a.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if a.is_one() {
                    write!(f, "x{j}")?;
                } else {
                    write!(f, "{a}*x{j}")?;
                }
            }
            if first {
                write!(f, "0")?;
            }
            let op = match c.rel {
                Rel::Le => "<=",
                Rel::Lt => "<",
                Rel::Eq => "=",
            };
            write!(f, " {op} {}", c.b)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPolyhedron(R^{}) {}", self.n, self)
    }
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<usize>,
    #[serde(default)]
    ineq: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    eq: Vec<Vec<serde_json::Value>>,
}

fn parse_rational(v: &serde_json::Value) -> Result<Rational, String> {
    match v {
        serde_json::Value::String(s) => s.parse().map_err(|e: Error| e.to_string()),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Rational::from_int)
            .ok_or_else(|| format!("non-integer number {n}; write rationals as strings")),
        other => Err(format!("expected a rational, found {other}")),
    }
}

impl Serialize for HPolyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let row = |c: &Constraint| -> Vec<serde_json::Value> {
            let mut r: Vec<serde_json::Value> =
                c.a.iter().chain(std::iter::once(&c.b)).map(|x| serde_json::Value::String(x.to_string())).collect();
            if c.rel == Rel::Lt {
                r.push(serde_json::Value::Bool(true));
            }
            r
        };
        RawPoly {
            ambient: Some(self.n),
            ineq: self.constraints.iter().filter(|c| c.rel != Rel::Eq).map(row).collect(),
            eq: self.constraints.iter().filter(|c| c.rel == Rel::Eq).map(row).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HPolyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPoly::deserialize(d)?;
        let mut n = raw.ambient;
        let mut constraints = Vec::new();
        for (rows, is_eq) in [(&raw.eq, true), (&raw.ineq, false)] {
            for row in rows {
                let (vals, strict) = match row.last() {
                    Some(serde_json::Value::Bool(b)) if !is_eq => (&row[..row.len() - 1], *b),
                    _ => (&row[..], false),
                };
                if vals.is_empty() {
                    return Err(D::Error::custom("empty constraint row"));
                }
                let nums: Vec<Rational> =
                    vals.iter().map(parse_rational).collect::<Result<_, _>>().map_err(D::Error::custom)?;
                let len = nums.len() - 1;
                match n {
                    None => n = Some(len),
                    Some(m) if m != len => {
                        return Err(D::Error::custom(format!("constraint has {len} coefficients, expected {m}")))
                    }
                    _ => {}
                }
                let b = nums[len].clone();
                let a = nums[..len].to_vec();
                let rel = if is_eq { Rel::Eq } else if strict { Rel::Lt } else { Rel::Le };
                constraints.push(Constraint::new(a, b, rel));
            }
        }
        let n = n.ok_or_else(|| D::Error::custom("cannot infer ambient dimension of an unconstrained polyhedron"))?;
        HPolyhedron::new(n, constraints).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{q, qi};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn feasibility_examples() {
        let seg = HPolyhedron::new(1, vec![Constraint::ge(v(&[1]), qi(0)), Constraint::le(v(&[1]), qi(1))]).unwrap();
        let w = seg.feasible().unwrap();
        assert!(seg.contains(&w));
        let open = HPolyhedron::new(1, vec![Constraint::lt(v(&[1]), qi(0)), Constraint::gt(v(&[1]), qi(0))]).unwrap();
        assert!(open.is_empty());
        let p = HPolyhedron::new(
            2,
            vec![Constraint::eq(v(&[1, 1]), qi(1)), Constraint::ge(v(&[1, 0]), qi(2)), Constraint::ge(v(&[0, 1]), qi(2))],
        )
        .unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn strict_witness_is_strict() {
        let p = HPolyhedron::new(2, vec![Constraint::lt(v(&[1, -1]), qi(0)), Constraint::le(v(&[0, 1]), qi(0))]).unwrap();
        let w = p.feasible().unwrap();
        assert!(w[0] < w[1] && w[1] <= qi(0));
    }

    #[test]
    fn relint_and_dimension() {
        // triangle in the plane x + y + z = 1 with x, y, z ≥ 0, plus x ≤ 0 forcing an edge
        let mut p = HPolyhedron::new(
            3,
            vec![
                Constraint::eq(v(&[1, 1, 1]), qi(1)),
                Constraint::ge(v(&[1, 0, 0]), qi(0)),
                Constraint::ge(v(&[0, 1, 0]), qi(0)),
                Constraint::ge(v(&[0, 0, 1]), qi(0)),
            ],
        )
        .unwrap();
        let r = p.relint().unwrap();
        assert_eq!(r.dim, 2);
        assert!(r.point.iter().all(Rational::is_positive));
        p.push(Constraint::le(v(&[1, 0, 0]), qi(0)));
        let r = p.relint().unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.implicit_eq, vec![0, 1, 4]);
        assert_eq!(r.point[0], qi(0));
        assert!(r.point[1].is_positive() && r.point[2].is_positive());
    }

    #[test]
    fn strict_row_forced_tight_is_empty() {
        let p = HPolyhedron::new(1, vec![Constraint::le(v(&[1]), qi(0)), Constraint::ge(v(&[1]), qi(0)), Constraint::lt(v(&[1]), qi(1))])
            .unwrap();
        assert_eq!(p.dim(), Some(0));
        let p = p.with(Constraint::gt(v(&[1]), qi(0)));
        assert_eq!(p.dim(), None);
    }

    #[test]
    fn canonical_forms_agree() {
        let a = HPolyhedron::new(2, vec![Constraint::le(v(&[2, 0]), qi(2)), Constraint::ge(v(&[1, 0]), qi(0)), Constraint::eq(v(&[0, 3]), qi(3))])
            .unwrap();
        let b = HPolyhedron::new(
            2,
            vec![
                Constraint::eq(v(&[0, 1]), qi(1)),
                Constraint::le(v(&[1, 0]), qi(1)),
                Constraint::le(v(&[-1, 0]), qi(0)),
                Constraint::le(v(&[0, 1]), qi(5)),
            ],
        )
        .unwrap();
        assert!(a.same_set(&b));
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn json_round_trip() {
        let p = HPolyhedron::new(2, vec![Constraint::eq(v(&[1, 1]), qi(0)), Constraint::lt(vec![q(1, 2), qi(0)], qi(1))]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: HPolyhedron = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let parsed: HPolyhedron = serde_json::from_str(r#"{"ineq": [["1", "0", "1/2", true], [0, 1, 3]]}"#).unwrap();
        assert_eq!(parsed.ambient(), 2);
        assert_eq!(parsed.constraints()[0].rel, Rel::Lt);
    }
}
