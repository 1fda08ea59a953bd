//! The worked examples as a regression suite, shared by the command line
//! driver and the acceptance tests.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano::{
    classical_plane_fano_trop, contains_line, disjoint_pairings, fano_general, fano_linear, genericity_check,
    pairing_line, FanoResult,
};
use crate::matroids::{bergman_fan, matroid_from_columns, Matroid};
use crate::numkernel::{
    k_subsets, kminors_val, subset_rank, Field, IntMatrix, Matrix, QMatrix, QPoly, Rational, TMatrix, TRatFn, TropValue,
};
use crate::polyhedra::{
    canonical_direction, fan_stats, h_to_v, refine, same_support, v_to_h, HPolyhedron, Orbit, PolyComplex, VPolyhedron,
};
use crate::prevariety::{cell_witnesses, intersect_system, TropPolynomial, TropSystem};
use crate::toriclib::{cayley_from_line, realize_in_toric, toric_binomials, torus_equivalent, LatticePointSet};
use crate::troplin::{realize_space, recession_fan, TropLinearSpace, TropPluecker};

/// Result of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{status}] {} ({:.1}s): {}", self.id, self.title, self.seconds, self.detail)
    }
}

pub const TITLES: [&str; 9] = [
    "cone counts of the lines in the standard plane",
    "rays agree with the classical Fano scheme of a general plane",
    "one extra ray for a special plane, at a barycentre",
    "the line through three collinear pair points",
    "a cone that is not a fan",
    "generic planes miss the snowflake line",
    "projection and incidence routes agree",
    "toric varieties, Cayley structures and lines",
    "property suites",
];

/// Matrices of the worked examples.
pub mod data {
    use super::*;

    fn int(rows: Vec<Vec<i64>>) -> TMatrix {
        IntMatrix::from_rows(rows).expect("rectangular").to_t()
    }

    pub fn general_plane() -> TMatrix {
        int(vec![
            vec![0, -271, -92, 0, -13, -54],
            vec![0, -18, -7, -1, 0, -4],
            vec![-1, 12293, 4173, 0, 588, 2450],
        ])
    }

    pub fn special_plane() -> TMatrix {
        int(vec![vec![1, 3, 0, 1, 5, 7], vec![0, 0, 1, 3, -1, -1], vec![1, 4, -1, -3, 0, 0]])
    }

    /// Equations of the line through the collinear pair points of
    /// [`special_plane`].
    pub fn special_line_equations() -> IntMatrix {
        IntMatrix::from_rows(vec![
            vec![0, 0, 0, 0, 1, -1],
            vec![0, 0, 3, -1, 0, 0],
            vec![0, 3, 0, 4, 0, 12],
            vec![3, 0, 0, 1, 0, 3],
        ])
        .expect("rectangular")
    }

    pub fn valued_plane() -> TMatrix {
        let t = TRatFn::t;
        let c = TRatFn::from_int;
        Matrix::from_rows(vec![
            vec![c(1), c(1), c(0), t(), c(1), c(1)],
            vec![c(1), t().add(&c(1)), c(1), c(2), t(), c(0)],
            vec![c(5), c(8), c(6), c(9), c(7), c(10)],
        ])
        .expect("rectangular")
    }

    pub fn square() -> LatticePointSet {
        LatticePointSet::from_rows(vec![vec![1, 0, 0, 1], vec![1, 0, -1, 0], vec![1, 1, 1, 1]]).expect("ones row")
    }

    pub fn five_points() -> LatticePointSet {
        LatticePointSet::from_rows(vec![
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![2, 1, 7, 3, 5],
            vec![1, 1, 1, 1, 1],
        ])
        .expect("ones row")
    }

    pub fn first_toric_line() -> TMatrix {
        int(vec![vec![1, 0, 1, 1, 1], vec![0, 1, 0, 0, 0]])
    }

    pub fn second_toric_line() -> TMatrix {
        int(vec![vec![1, -1, 0, 0, 0], vec![1, 0, -1, -1, -1]])
    }

    /// `x0 + x1 + x2 = 0` and `x2 = x3 = x4`, the torus part of the
    /// second line.
    pub fn second_toric_line_equations() -> IntMatrix {
        IntMatrix::from_rows(vec![vec![1, 1, 1, 0, 0], vec![0, 0, 1, -1, 0], vec![0, 0, 0, 1, -1]]).expect("rectangular")
    }

    /// Entries 1 on the pairs `01, 23, 45`, 0 elsewhere.
    pub fn snowflake() -> TropPluecker {
        let mut map = BTreeMap::new();
        for s in k_subsets(6, 2) {
            let v = i64::from([vec![0, 1], vec![2, 3], vec![4, 5]].contains(&s));
            map.insert(s, TropValue::int(v));
        }
        TropPluecker::from_map(1, 5, &map).expect("pairs")
    }
}

/// Caches the computations several criteria share.
#[derive(Default)]
pub struct Session {
    standard: OnceLock<std::result::Result<(FanoResult, f64), Error>>,
    general: OnceLock<std::result::Result<TropLinearSpace, Error>>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

fn unit_sum(n: usize, idx: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &i in idx {
        v[i] += Rational::one();
    }
    v
}

fn cone_of(rays: &[Vec<Rational>]) -> HPolyhedron {
    let n = rays[0].len();
    v_to_h(&VPolyhedron { ambient: n, vertices: vec![vec![Rational::zero(); n]], rays: rays.to_vec(), lineality: vec![ones(n)] })
        .canonical()
}

/// Rays of a cone modulo the all-ones line.
fn cone_rays(c: &HPolyhedron) -> Result<Vec<Vec<Rational>>> {
    let v = h_to_v(c)?;
    let mut r: Vec<Vec<Rational>> = v.rays.iter().map(|r| canonical_direction(r, true)).collect();
    r.sort();
    r.dedup();
    Ok(r)
}

fn proportional<T: Field>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.is_zero() == y.is_zero())
        && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
}

fn check(cond: bool, what: impl Into<String>, notes: &mut Vec<String>) -> bool {
    if !cond {
        notes.push(what.into());
    }
    cond
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    /// Lines in the standard plane of `P^5` by the incidence route.
    pub fn standard_fano(&self) -> Result<&(FanoResult, f64)> {
        self.standard
            .get_or_init(|| {
                let (r, s) = timed(|| fano_linear(&TropPluecker::zero(2, 5), 1, &Orbit::torus()));
                r.map(|r| (r, s))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn general_fano(&self) -> Result<&TropLinearSpace> {
        self.general.get_or_init(|| classical_plane_fano_trop(&data::general_plane())).as_ref().map_err(Clone::clone)
    }

    pub fn run(&self, id: u32) -> Outcome {
        let t = Instant::now();
        let res = match id {
            1 => self.criterion_1(),
            2 => self.criterion_2(),
            3 => self.criterion_3(),
            4 => criterion_4(),
            5 => criterion_5(),
            6 => criterion_6(),
            7 => self.criterion_7(),
            8 => criterion_8(),
            9 => criterion_9(),
            _ => Err(Error::BadDimensions(format!("no criterion {id}"))),
        };
        let seconds = t.elapsed().as_secs_f64();
        let title = TITLES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown");
        match res {
            Ok((passed, detail)) => Outcome { id, title, passed, detail, seconds },
            Err(e) => Outcome { id, title, passed: false, detail: format!("error: {e}"), seconds },
        }
    }

    fn criterion_1(&self) -> Result<(bool, String)> {
        let (r, secs) = self.standard_fano()?;
        let stats = fan_stats(&r.complex);
        let want = BTreeMap::from([(2, 30), (3, 15)]);
        let ok = stats.max_cells_by_dim == want && *secs < 300.0;
        Ok((ok, format!("maximal cells by dimension {:?} in {secs:.1}s", stats.max_cells_by_dim)))
    }

    fn criterion_2(&self) -> Result<(bool, String)> {
        let (r, _) = self.standard_fano()?;
        let g = self.general_fano()?;
        let mut notes = Vec::new();
        let rays_a = r.complex.rays();
        let rays_b = g.complex.rays();
        check(rays_a == rays_b, format!("{} vs {} rays", rays_a.len(), rays_b.len()), &mut notes);
        let cells: Vec<HPolyhedron> = g.complex.with_faces().cells.iter().map(HPolyhedron::canonical).collect();
        let two: Vec<&HPolyhedron> = r.complex.cells.iter().filter(|c| c.dim() == Some(3)).collect();
        let missing = two.iter().filter(|c| !cells.contains(&c.canonical())).count();
        check(missing == 0, format!("{missing} two-dimensional cones are not cells"), &mut notes);
        Ok((notes.is_empty(), format!("{} shared rays, {} two-dimensional cones checked {}", rays_a.len(), two.len(), notes.join("; "))))
    }

    fn criterion_3(&self) -> Result<(bool, String)> {
        let (r, _) = self.standard_fano()?;
        let g = self.general_fano()?;
        let s = classical_plane_fano_trop(&data::special_plane())?;
        let base = g.complex.rays();
        let extra: Vec<Vec<Rational>> = s.complex.rays().into_iter().filter(|x| !base.contains(x)).collect();
        if extra.len() != 1 {
            return Ok((false, format!("{} extra rays", extra.len())));
        }
        let ray = &extra[0];
        let Some(cone) = r.complex.cells.iter().find(|c| c.dim() == Some(4) && c.contains(ray)) else {
            return Ok((false, "no 3-cone contains the extra ray".into()));
        };
        let gens = cone_rays(cone)?;
        if gens.len() != 3 {
            return Ok((false, format!("cone has {} rays", gens.len())));
        }
        let sum: Vec<Rational> = (0..ray.len()).map(|i| gens.iter().map(|g| g[i].clone()).sum()).collect();
        let mut notes = Vec::new();
        check(canonical_direction(&sum, true) == *ray, "extra ray is not r1 + r2 + r3", &mut notes);
        let pieces = refine(&PolyComplex::new(ray.len(), vec![cone.clone()]), &s.complex)?;
        let mut want: Vec<HPolyhedron> = gens.iter().map(|g| cone_of(&[g.clone(), sum.clone()])).collect();
        want.sort_by(|a, b| a.constraints().cmp(b.constraints()));
        let got: Vec<HPolyhedron> = pieces.cells.iter().map(HPolyhedron::canonical).collect();
        check(got == want, format!("refinement has {} cells", got.len()), &mut notes);
        Ok((notes.is_empty(), format!("extra ray {} {}", fmt_vec(ray), notes.join("; "))))
    }

    fn criterion_7(&self) -> Result<(bool, String)> {
        let (incidence, _) = self.standard_fano()?;
        let plane = realize_space(&TropPluecker::zero(2, 5), &Orbit::torus())?;
        let (projection, secs) = timed(|| fano_general(&plane.complex, 1, 5, &Orbit::torus()));
        let projection = projection?;
        let agree = same_support(&incidence.complex, &projection.complex)?;
        let fan = projection.complex.fan && projection.complex.cells.iter().all(HPolyhedron::is_cone);
        let stats = fan_stats(&projection.complex);
        Ok((
            agree && fan && secs < 1800.0,
            format!(
                "supports agree: {agree}, output is a fan: {fan}, cells by dimension {:?}, projection route {secs:.1}s",
                stats.max_cells_by_dim
            ),
        ))
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn criterion_4() -> Result<(bool, String)> {
    let l = data::special_plane();
    let Some(line) = pairing_line(&l, &[[0, 1], [2, 3], [4, 5]])? else {
        return Ok((false, "pair points are not collinear".into()));
    };
    let mut notes = Vec::new();
    let eqs: QMatrix = data::special_line_equations().to_q();
    let span = QMatrix::from_rows(eqs.kernel())?;
    let want: Vec<TRatFn> = span.maximal_minors().into_iter().map(TRatFn::constant).collect();
    check(proportional(&line.basis.maximal_minors(), &want), "Plücker vectors are not proportional", &mut notes);
    let mut rays = line.recession_rays.clone();
    rays.sort();
    let mut expect: Vec<Vec<Rational>> = [[0, 1], [2, 3], [4, 5]].iter().map(|p| unit_sum(6, p)).collect();
    expect.sort();
    check(rays == expect, format!("recession rays {rays:?}"), &mut notes);
    Ok((notes.is_empty() && line.certified, format!("recession rays e01, e23, e45 {}", notes.join("; "))))
}

fn criterion_5() -> Result<(bool, String)> {
    let l = data::valued_plane();
    let f = classical_plane_fano_trop(&l)?;
    let sys = f.system();
    let v: Vec<TropValue> = (0..15)
        .map(|k| {
            let hit = [[0, 1], [2, 3], [4, 5]].iter().any(|p| subset_rank(6, p) == k);
            TropValue::int(i64::from(hit))
        })
        .collect();
    let v2: Vec<TropValue> = v.iter().map(|x| x.tmul(x)).collect();
    let (m1, m2) = (sys.member(&v)?, sys.member(&v2)?);
    let g = genericity_check(&l)?;
    let triple_ok = !g.witnesses_ii.contains(&vec![[0, 1], [2, 3], [4, 5]]);
    Ok((
        m1 && !m2 && g.cond_i && triple_ok,
        format!("member(v) = {m1}, member(2v) = {m2}, condition I = {}, 01/23/45 non-collinear = {triple_ok}", g.cond_i),
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..=bound))
}

fn criterion_6() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let plane = realize_space(&TropPluecker::zero(2, 5), &Orbit::torus())?;
    let inside = contains_line(&data::snowflake(), &plane.complex, &Orbit::torus())?.holds();
    let pairings = disjoint_pairings(6);
    let (mut generic, mut bad) = (0, 0);
    for _ in 0..20 {
        let l = random_matrix(&mut rng, 3, 6, 50).to_t();
        if l.rank() < 3 {
            continue;
        }
        let g = genericity_check(&l)?;
        if !(g.cond_i && g.cond_ii) {
            continue;
        }
        generic += 1;
        for p in &pairings {
            if pairing_line(&l, p)?.is_some() {
                bad += 1;
            }
        }
    }
    Ok((
        inside && generic > 0 && bad == 0,
        format!("{generic}/20 generic, {bad} realizing pairings, snowflake in the standard plane: {inside}"),
    ))
}

fn criterion_8() -> Result<(bool, String)> {
    let t = Instant::now();
    let mut notes = Vec::new();
    let sq = toric_binomials(&data::square());
    check(sq.len() == 1 && sq[0].to_string() == "x0*x2 - x1*x3", format!("square binomials {sq:?}"), &mut notes);
    let a = data::five_points();
    let fb = toric_binomials(&a);
    check(fb.len() == 1 && fb[0].to_string() == "x2*x3 - x4^2", format!("binomials {fb:?}"), &mut notes);

    let (b1, b2) = (data::first_toric_line(), data::second_toric_line());
    let p1 = TropPluecker::new(1, 4, kminors_val(&b1, 2)?)?;
    let p2 = TropPluecker::new(1, 4, kminors_val(&b2, 2)?)?;
    let c1 = cayley_from_line(&a, &p1)?.classes();
    let c2 = cayley_from_line(&a, &p2)?.classes();
    check(c1 == vec![vec![0, 2, 3, 4], vec![1]], format!("first partition {c1:?}"), &mut notes);
    check(c2 == vec![vec![0], vec![1], vec![2, 3, 4]], format!("second partition {c2:?}"), &mut notes);

    let r1 = realize_in_toric(&a, &p1)?;
    let want: Vec<Vec<TRatFn>> = [[1, 0, -1, 0, 0], [0, 0, 1, -1, 0], [0, 0, 0, 1, -1]]
        .iter()
        .map(|r| r.iter().map(|&v| TRatFn::from_int(v)).collect())
        .collect();
    check(r1.equations == want, "first line equations differ", &mut notes);
    check(r1.certificate.passed(), "first certificate", &mut notes);
    let r2 = realize_in_toric(&a, &p2)?;
    check(r2.certificate.passed(), "second certificate", &mut notes);
    let expected2 = QMatrix::from_rows(data::second_toric_line_equations().to_q().kernel())?.map(|x| TRatFn::constant(x.clone()));
    check(torus_equivalent(&r2.basis, &expected2)?.is_some(), "second line is not a torus translate", &mut notes);
    let secs = t.elapsed().as_secs_f64();
    check(secs < 60.0, "over a minute", &mut notes);
    Ok((notes.is_empty(), if notes.is_empty() { "binomials, partitions and both lines reproduced".into() } else { notes.join("; ") }))
}

fn random_qpoly(rng: &mut ChaCha8Rng) -> QPoly {
    loop {
        let deg = rng.gen_range(0..4);
        let p = QPoly::new((0..=deg).map(|_| Rational::from_int(rng.gen_range(-4..=4))).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_ratfn(rng: &mut ChaCha8Rng) -> TRatFn {
    TRatFn::new(random_qpoly(rng), random_qpoly(rng))
}

/// Valuations multiply and the ultrametric inequality holds.
pub fn valuation_suite(pairs: usize, seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let (f, g) = (random_ratfn(&mut rng), random_ratfn(&mut rng));
        if f.mul(&g).tval() != f.tval().tmul(&g.tval()) {
            return Err(format!("val({f} * {g})"));
        }
        if f.add(&g).tval() < f.tval().tadd(&g.tval()) {
            return Err(format!("val({f} + {g})"));
        }
    }
    Ok(())
}

/// V → H → V → H gives the same set, and the vertices found are among the
/// generating points.
pub fn hv_suite(count: usize, seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let n = rng.gen_range(1..=4);
        let pt = |rng: &mut ChaCha8Rng| (0..n).map(|_| Rational::from_int(rng.gen_range(-5..=5))).collect::<Vec<_>>();
        let vertices: Vec<Vec<Rational>> = (0..rng.gen_range(1..=5)).map(|_| pt(&mut rng)).collect();
        let rays: Vec<Vec<Rational>> =
            (0..rng.gen_range(0..=2)).map(|_| pt(&mut rng)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let v = VPolyhedron { ambient: n, vertices: vertices.clone(), rays, lineality: Vec::new() };
        let h = v_to_h(&v);
        let back = h_to_v(&h).map_err(|e| e.to_string())?;
        let h2 = v_to_h(&back);
        if !h.same_set(&h2) {
            return Err(format!("round trip {k} changed the set"));
        }
        if !vertices.iter().all(|x| h.contains(x)) {
            return Err(format!("polyhedron {k} lost a generator"));
        }
        if back.lineality.is_empty() && !back.vertices.iter().all(|x| vertices.contains(x)) {
            return Err(format!("polyhedron {k} invented a vertex"));
        }
    }
    Ok(())
}

/// Every cell of a random prevariety has an interior point in the
/// prevariety.
pub fn witness_suite(count: usize, seed: u64) -> std::result::Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = 0;
    for k in 0..count {
        let n = rng.gen_range(3..=4);
        let polys: Vec<TropPolynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut exps: Vec<Vec<u32>> = Vec::new();
                while exps.len() < rng.gen_range(2..=4) {
                    let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    if !exps.contains(&e) {
                        exps.push(e);
                    }
                }
                TropPolynomial::new(exps.into_iter().map(|e| (TropValue::int(rng.gen_range(-3..=3)), e)).collect())
            })
            .collect();
        let sys = TropSystem::new(n, polys, Orbit::torus()).map_err(|e| e.to_string())?;
        let k_ = intersect_system(&sys).map_err(|e| e.to_string())?;
        for w in cell_witnesses(&k_) {
            cells += 1;
            let x: Vec<TropValue> = w.into_iter().map(TropValue::Finite).collect();
            if !sys.member(&x).map_err(|e| e.to_string())? {
                return Err(format!("system {k}: witness outside"));
            }
        }
    }
    Ok(cells)
}

/// Bergman fan against the circuit prevariety of random valuation-zero
/// matrices, and the partition of minimal flats.
pub fn bergman_suite(count: usize, seed: u64) -> std::result::Result<Vec<Matroid>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = random_matrix(&mut rng, 3, 5, 2);
        let q = m.to_q();
        if q.rank() < 3 || (0..5).any(|j| q.column(j).iter().all(Rational::is_zero)) {
            continue;
        }
        let mat = matroid_from_columns(&q).map_err(|e| e.to_string())?;
        let fan = bergman_fan(&mat).map_err(|e| e.to_string())?;
        let p = TropPluecker::new(2, 4, kminors_val(&m.to_t(), 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let g = realize_space(&p, &Orbit::torus()).map_err(|e| e.to_string())?;
        if !same_support(&fan, &g.complex).map_err(|e| e.to_string())? {
            return Err(format!("supports differ for {:?}", m.to_rows()));
        }
        if !same_support(&fan, &recession_fan(&g)).map_err(|e| e.to_string())? {
            return Err(format!("recession fan differs for {:?}", m.to_rows()));
        }
        out.push(mat);
    }
    Ok(out)
}

/// Minimal flats of a loopless matroid partition its ground set.
pub fn partition_holds(m: &Matroid) -> bool {
    let Ok(flats) = m.minimal_flats() else { return false };
    let mut all: Vec<usize> = flats.concat();
    all.sort_unstable();
    all == (0..m.ground_size()).collect::<Vec<_>>()
}

fn criterion_9() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    if let Err(e) = valuation_suite(500, 1) {
        notes.push(e);
    }
    if let Err(e) = hv_suite(100, 2) {
        notes.push(e);
    }
    let cells = witness_suite(20, 3).unwrap_or_else(|e| {
        notes.push(e);
        0
    });
    let matroids = bergman_suite(20, 4).unwrap_or_else(|e| {
        notes.push(e);
        Vec::new()
    });
    let parted = matroids.iter().filter(|m| partition_holds(m)).count();
    check(parted == matroids.len(), "minimal flats fail to partition", &mut notes);
    Ok((
        notes.is_empty(),
        if notes.is_empty() {
            format!("500 valuation pairs, 100 round trips, {cells} witnesses, {} matroids", matroids.len())
        } else {
            notes.join("; ")
        },
    ))
}

/// Runs the selected criteria (all when `only` is empty).
pub fn run_all(only: &[u32]) -> Vec<Outcome> {
    let s = Session::new();
    (1..=9).filter(|i| only.is_empty() || only.contains(i)).map(|i| s.run(i)).collect()
}
