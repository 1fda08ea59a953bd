//! Fourier–Motzkin projection with strict inequalities.

use super::hpoly::{Constraint, HPolyhedron, Rel};
use crate::numkernel::Rational;

/// Projects `p` onto the coordinates `keep` (in the order given).
///
/// Equations eliminate variables first; remaining variables go by
/// Fourier–Motzkin, cheapest first. Combining a strict row with any row
/// gives a strict row. Redundant rows are pruned after every step.
pub fn fm_project(p: &HPolyhedron, keep: &[usize]) -> HPolyhedron {
    let n = p.ambient();
    let k = keep.len();
    if p.is_empty() {
        return HPolyhedron::empty(k);
    }
    let mut eliminate: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let mut rows: Vec<Constraint> = p.constraints().to_vec();

    // Substitute equations.
    loop {
        let found = rows.iter().enumerate().find_map(|(r, c)| {
            if c.rel != Rel::Eq {
                return None;
            }
            eliminate.iter().position(|&v| !c.a[v].is_zero()).map(|e| (r, e))
        });
        let Some((r, e)) = found else { break };
        let var = eliminate.remove(e);
        let eqn = rows.remove(r);
        let pivot = eqn.a[var].clone();
        rows = rows
            .into_iter()
            .map(|c| {
                if c.a[var].is_zero() {
                    return c;
                }
                let f = &c.a[var] / &pivot;
                let a = c.a.iter().zip(&eqn.a).map(|(x, y)| x - &(&f * y)).collect();
                Constraint::new(a, &c.b - &(&f * &eqn.b), c.rel)
            })
            .collect();
    }
    // Remaining equations only involve kept variables: split them.
    rows = rows
        .into_iter()
        .flat_map(|c| {
            if c.rel == Rel::Eq {
                vec![Constraint::le(c.a.clone(), c.b.clone()), Constraint::ge(c.a, c.b)]
            } else {
                vec![c]
            }
        })
        .collect();
    let mut current = HPolyhedron::new(n, rows).expect("lengths preserved").remove_redundant();

    while !eliminate.is_empty() {
        let rows = current.constraints();
        let cost = |v: usize| {
            let pos = rows.iter().filter(|c| c.a[v].is_positive()).count();
            let neg = rows.iter().filter(|c| c.a[v].is_negative()).count();
            pos * neg
        };
        let (idx, &var) = eliminate
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| cost(v))
            .expect("nonempty");
        eliminate.remove(idx);
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for c in rows {
            match c.a[var].signum() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => zero.push(c.clone()),
            }
        }
        for p in &pos {
            for q in &neg {
                let (fp, fq) = (-&q.a[var], p.a[var].clone());
                let mut a: Vec<Rational> = p.a.iter().zip(&q.a).map(|(x, y)| &fp * x + &fq * y).collect();
                a[var] = Rational::zero();
                let b = &fp * &p.b + &fq * &q.b;
                let rel = if p.rel == Rel::Lt || q.rel == Rel::Lt { Rel::Lt } else { Rel::Le };
                zero.push(Constraint::new(a, b, rel));
            }
        }
        current = HPolyhedron::new(n, zero).expect("lengths preserved").remove_redundant();
    }

    let rows: Vec<Constraint> = current
        .constraints()
        .iter()
        .map(|c| Constraint::new(keep.iter().map(|&i| c.a[i].clone()).collect(), c.b.clone(), c.rel))
        .collect();
    recover_equations(HPolyhedron::new(k, rows).expect("lengths match keep"))
}

/// Merges opposite weak rows `a·x ≤ b`, `−a·x ≤ −b` into equations.
fn recover_equations(p: HPolyhedron) -> HPolyhedron {
    let rows = p.constraints();
    let mut out: Vec<Constraint> = Vec::new();
    let mut used = vec![false; rows.len()];
    for i in 0..rows.len() {
        if used[i] {
            continue;
        }
        let c = &rows[i];
        if c.rel == Rel::Le {
            let opposite = (i + 1..rows.len()).find(|&j| {
                !used[j]
                    && rows[j].rel == Rel::Le
                    && rows[j].b == -&c.b
                    && rows[j].a.iter().zip(&c.a).all(|(x, y)| *x == -y)
            });
            if let Some(j) = opposite {
                used[j] = true;
                out.push(Constraint::eq(c.a.clone(), c.b.clone()).normalized());
                continue;
            }
        }
        out.push(c.clone());
    }
    HPolyhedron::new(p.ambient(), out).expect("same ambient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::qi;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn triangle_to_segment() {
        let p = HPolyhedron::new(
            2,
            vec![Constraint::le(v(&[1, 1]), qi(1)), Constraint::ge(v(&[1, 0]), qi(0)), Constraint::ge(v(&[0, 1]), qi(0))],
        )
        .unwrap();
        let proj = fm_project(&p, &[0]);
        let expect = HPolyhedron::new(1, vec![Constraint::ge(v(&[1]), qi(0)), Constraint::le(v(&[1]), qi(1))]).unwrap();
        assert!(proj.same_set(&expect));
        assert_eq!(proj.constraints().len(), 2);
    }

    #[test]
    fn strictness_propagates() {
        // x < y, y < z  ->  x < z
        let p = HPolyhedron::new(3, vec![Constraint::lt(v(&[1, -1, 0]), qi(0)), Constraint::lt(v(&[0, 1, -1]), qi(0))]).unwrap();
        let proj = fm_project(&p, &[0, 2]);
        assert_eq!(proj.constraints(), &[Constraint::lt(v(&[1, -1]), qi(0))]);
    }

    #[test]
    fn equations_substitute() {
        // x = y + 1, 0 ≤ y ≤ 2 -> 1 ≤ x ≤ 3
        let p = HPolyhedron::new(
            2,
            vec![Constraint::eq(v(&[1, -1]), qi(1)), Constraint::ge(v(&[0, 1]), qi(0)), Constraint::le(v(&[0, 1]), qi(2))],
        )
        .unwrap();
        let proj = fm_project(&p, &[0]);
        let expect = HPolyhedron::new(1, vec![Constraint::ge(v(&[1]), qi(1)), Constraint::le(v(&[1]), qi(3))]).unwrap();
        assert!(proj.same_set(&expect));
    }

    #[test]
    fn empty_and_equation_recovery() {
        let p = HPolyhedron::new(2, vec![Constraint::lt(v(&[1, 0]), qi(0)), Constraint::gt(v(&[1, 0]), qi(0))]).unwrap();
        assert!(fm_project(&p, &[1]).is_empty());
        // x = y, y = 0 -> x = 0
        let p = HPolyhedron::new(2, vec![Constraint::eq(v(&[1, -1]), qi(0)), Constraint::eq(v(&[0, 1]), qi(0))]).unwrap();
        assert_eq!(fm_project(&p, &[0]).constraints(), &[Constraint::eq(v(&[1]), qi(0))]);
    }
}
