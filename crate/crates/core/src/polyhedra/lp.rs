//! Exact dictionary simplex over free variables.
//!
//! Problems have the shape `max c·y  s.t.  A y ≤ b` with every `y` free.
//! Equations are removed beforehand by [`AffineParam`], which writes the
//! solution set of `E x = f` as `x0 + N y`.

use crate::numkernel::{QMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal {
        point: Vec<Rational>,
        value: Rational,
        /// One nonnegative multiplier per inequality row.
        duals: Vec<Rational>,
    },
}

/// Affine parametrization `x = x0 + Σ_k y_k · dirs[k]` of `{x : E x = f}`.
#[derive(Clone, Debug)]
pub struct AffineParam {
    pub x0: Vec<Rational>,
    pub dirs: Vec<Vec<Rational>>,
}

impl AffineParam {
    pub fn full(n: usize) -> Self {
        AffineParam {
            x0: vec![Rational::zero(); n],
            dirs: (0..n)
                .map(|k| (0..n).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        }
    }

    /// `None` when the equations are inconsistent.
    pub fn from_equations(n: usize, eqs: &[(&[Rational], &Rational)]) -> Option<Self> {
        if eqs.is_empty() {
            return Some(Self::full(n));
        }
        let m = QMatrix::from_fn(eqs.len(), n + 1, |i, j| {
            if j < n { eqs[i].0[j].clone() } else { eqs[i].1.clone() }
        });
        let (r, pivots) = m.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x0 = vec![Rational::zero(); n];
        for (i, &p) in pivots.iter().enumerate() {
            x0[p] = r.get(i, n).clone();
        }
        let dirs = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        Some(AffineParam { x0, dirs })
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    /// Rewrites `a·x ≤ b` in the parameters: `(a·N) y ≤ b − a·x0`.
    pub fn pull(&self, a: &[Rational], b: &Rational) -> (Vec<Rational>, Rational) {
        let ay = self.dirs.iter().map(|d| dot(a, d)).collect();
        (ay, b - dot(a, &self.x0))
    }

    pub fn pull_linear(&self, c: &[Rational]) -> Vec<Rational> {
        self.dirs.iter().map(|d| dot(c, d)).collect()
    }

    pub fn push(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = self.x0.clone();
        for (yk, d) in y.iter().zip(&self.dirs) {
            if yk.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(d) {
                if !di.is_zero() {
                    *xi += yk * di;
                }
            }
        }
        x
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Solves `max c·y s.t. rows[i].0 · y ≤ rows[i].1` over free `y`.
pub fn maximize(c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpResult {
    Dictionary::new(c.len(), rows).solve(c)
}

/// Variables `0..n` are the free unknowns, `n..n+m` the row slacks and
/// `n+m` the phase-one artificial.
struct Dictionary {
    n: usize,
    m: usize,
    /// basic variable of each row
    basis: Vec<usize>,
    /// nonbasic variable of each column
    nonbasic: Vec<usize>,
    /// `x_basis[i] = beta[i] + Σ_j coef[i][j] · x_nonbasic[j]`
    beta: Vec<Rational>,
    coef: Vec<Vec<Rational>>,
    /// rows whose basic variable is free (never leave, skipped in ratio tests)
    free_row: Vec<bool>,
    /// free columns that could not enter the basis: zero in every bounded row
    dead: Vec<bool>,
}

impl Dictionary {
    fn new(n: usize, rows: &[(Vec<Rational>, Rational)]) -> Self {
        let m = rows.len();
        Dictionary {
            n,
            m,
            basis: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            beta: rows.iter().map(|r| r.1.clone()).collect(),
            coef: rows.iter().map(|r| r.0.iter().map(|a| -a).collect()).collect(),
            free_row: vec![false; m],
            dead: vec![false; n],
        }
    }

    fn pivot(&mut self, r: usize, e: usize, obj: Option<&mut (Rational, Vec<Rational>)>) {
        let d = self.coef[r][e].clone();
        let inv = d.recip();
        let ncols = self.nonbasic.len();
        // solve row r for the entering variable
        let new_beta = -(&self.beta[r] * &inv);
        let mut new_row: Vec<Rational> = self.coef[r].iter().map(|x| -(x * &inv)).collect();
        new_row[e] = inv;
        self.beta[r] = new_beta;
        self.coef[r] = new_row;
        let (row_r, beta_r) = (self.coef[r].clone(), self.beta[r].clone());
        let substitute = |beta: &mut Rational, row: &mut Vec<Rational>| {
            let f = std::mem::take(&mut row[e]);
            if f.is_zero() {
                return;
            }
            *beta += &f * &beta_r;
            for j in 0..ncols {
                if j == e {
                    row[j] = &f * &row_r[j];
                } else if !row_r[j].is_zero() {
                    row[j] += &f * &row_r[j];
                }
            }
        };
        for i in 0..self.basis.len() {
            if i != r {
                let (beta, row) = (&mut self.beta[i], &mut self.coef[i]);
                substitute(beta, row);
            }
        }
        if let Some((z0, zrow)) = obj {
            substitute(z0, zrow);
        }
        std::mem::swap(&mut self.basis[r], &mut self.nonbasic[e]);
    }

    /// Simplex iterations on `obj`; rows flagged free are ignored.
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &mut (Rational, Vec<Rational>), skip_col: impl Fn(usize) -> bool) -> bool {
        let mut degenerate_run = 0usize;
        loop {
            let bland = degenerate_run > 20;
            let mut enter: Option<usize> = None;
            for j in 0..self.nonbasic.len() {
                if skip_col(self.nonbasic[j]) || !obj.1[j].is_positive() {
                    continue;
                }
                enter = match enter {
                    None => Some(j),
                    Some(k) if bland => {
                        if self.nonbasic[j] < self.nonbasic[k] { Some(j) } else { Some(k) }
                    }
                    Some(k) => if obj.1[j] > obj.1[k] { Some(j) } else { Some(k) },
                };
            }
            let Some(e) = enter else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.basis.len() {
                if self.free_row[i] || !self.coef[i][e].is_negative() {
                    continue;
                }
                let ratio = -(&self.beta[i] / &self.coef[i][e]);
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else { return false };
            if ratio.is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, e, Some(obj));
        }
    }

    fn solve(mut self, c: &[Rational]) -> LpResult {
        let (n, m) = (self.n, self.m);
        // Move every free variable into the basis where possible.
        for k in 0..n {
            let e = self.nonbasic.iter().position(|&v| v == k).expect("free var is nonbasic");
            match (0..self.basis.len()).find(|&i| !self.free_row[i] && !self.coef[i][e].is_zero()) {
                Some(r) => {
                    self.pivot(r, e, None);
                    self.free_row[r] = true;
                }
                None => self.dead[k] = true,
            }
        }

        // Phase one with an artificial variable added to every bounded row.
        let worst = (0..self.basis.len())
            .filter(|&i| !self.free_row[i] && self.beta[i].is_negative())
            .min_by(|&a, &b| self.beta[a].cmp(&self.beta[b]));
        if let Some(r) = worst {
            let art = n + m;
            self.nonbasic.push(art);
            for i in 0..self.basis.len() {
                let v = if self.free_row[i] { Rational::zero() } else { Rational::one() };
                self.coef[i].push(v);
            }
            let cols = self.nonbasic.len();
            let mut obj = (Rational::zero(), vec![Rational::zero(); cols]);
            obj.1[cols - 1] = -Rational::one();
            self.pivot(r, cols - 1, Some(&mut obj));
            let dead = self.dead.clone();
            self.optimize(&mut obj, |v| v < n && dead[v]);
            if obj.0.is_negative() {
                return LpResult::Infeasible;
            }
            if let Some(r) = self.basis.iter().position(|&v| v == art) {
                // degenerate: artificial is basic at zero; swap it out
                let e = (0..self.nonbasic.len())
                    .find(|&j| !self.coef[r][j].is_zero() && !(self.nonbasic[j] < n && self.dead[self.nonbasic[j]]));
                match e {
                    Some(e) => self.pivot(r, e, None),
                    None => {
                        // row is identically the artificial; drop it
                        self.basis.remove(r);
                        self.beta.remove(r);
                        self.coef.remove(r);
                        self.free_row.remove(r);
                    }
                }
            }
            let col = self.nonbasic.iter().position(|&v| v == art).expect("artificial nonbasic");
            self.nonbasic.remove(col);
            for row in self.coef.iter_mut() {
                row.remove(col);
            }
        }

        // Phase two: express the objective in the current nonbasic variables.
        let cols = self.nonbasic.len();
        let mut obj = (Rational::zero(), vec![Rational::zero(); cols]);
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if v < n {
                obj.1[j] = c[v].clone();
            }
        }
        for (i, &v) in self.basis.iter().enumerate() {
            if v < n && !c[v].is_zero() {
                obj.0 += &c[v] * &self.beta[i];
                for j in 0..cols {
                    if !self.coef[i][j].is_zero() {
                        obj.1[j] += &c[v] * &self.coef[i][j];
                    }
                }
            }
        }
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if v < n && self.dead[v] && !obj.1[j].is_zero() {
                return LpResult::Unbounded;
            }
        }
        let dead = self.dead.clone();
        if !self.optimize(&mut obj, |v| v < n && dead[v]) {
            return LpResult::Unbounded;
        }

        let mut point = vec![Rational::zero(); n];
        for (i, &v) in self.basis.iter().enumerate() {
            if v < n {
                point[v] = self.beta[i].clone();
            }
        }
        let mut duals = vec![Rational::zero(); m];
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if v >= n && v < n + m {
                duals[v - n] = -&obj.1[j];
            }
        }
        LpResult::Optimal { point, value: obj.0, duals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{q, qi};

    fn row(a: &[i64], b: i64) -> (Vec<Rational>, Rational) {
        (a.iter().map(|&x| qi(x)).collect(), qi(b))
    }

    #[test]
    fn bounded_box() {
        let rows = vec![row(&[1, 0], 2), row(&[0, 1], 3), row(&[-1, 0], 0), row(&[0, -1], 0)];
        match maximize(&[qi(1), qi(1)], &rows) {
            LpResult::Optimal { point, value, duals } => {
                assert_eq!(value, qi(5));
                assert_eq!(point, vec![qi(2), qi(3)]);
                assert_eq!(duals, vec![qi(1), qi(1), qi(0), qi(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // x + y ≥ 3, x ≤ 1, y ≤ 5, maximize −y
        let rows = vec![row(&[-1, -1], -3), row(&[1, 0], 1), row(&[0, 1], 5)];
        match maximize(&[qi(0), qi(-1)], &rows) {
            LpResult::Optimal { value, point, .. } => {
                assert_eq!(value, qi(-2));
                assert_eq!(point[1], qi(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = vec![row(&[1], 0), row(&[-1], -1)];
        assert_eq!(maximize(&[qi(0)], &rows), LpResult::Infeasible);
        let rows = vec![row(&[1, -1], 0)];
        assert_eq!(maximize(&[qi(1), qi(1)], &rows), LpResult::Unbounded);
        // lineality direction not in the objective: optimum exists
        let rows = vec![row(&[1, 1], 4)];
        assert!(matches!(maximize(&[qi(1), qi(1)], &rows), LpResult::Optimal { .. }));
    }

    #[test]
    fn no_rows() {
        assert!(matches!(maximize(&[qi(0), qi(0)], &[]), LpResult::Optimal { .. }));
        assert_eq!(maximize(&[qi(1)], &[]), LpResult::Unbounded);
    }

    #[test]
    fn fractional_optimum() {
        // 2x + 3y ≤ 1, x ≥ 0, y ≥ 0; max x + y -> x = 1/2
        let rows = vec![row(&[2, 3], 1), row(&[-1, 0], 0), row(&[0, -1], 0)];
        match maximize(&[qi(1), qi(1)], &rows) {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn affine_param_round_trip() {
        let a = [qi(1), qi(1), qi(1)];
        let b = qi(3);
        let p = AffineParam::from_equations(3, &[(&a[..], &b)]).unwrap();
        assert_eq!(p.dim(), 2);
        let x = p.push(&[q(1, 3), qi(-7)]);
        assert_eq!(dot(&a, &x), b);
        let bad = [qi(0), qi(0), qi(0)];
        assert!(AffineParam::from_equations(3, &[(&bad[..], &qi(1))]).is_none());
    }
}
