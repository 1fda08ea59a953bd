//! The incidence route and the direct containment test must agree: a line
//! lies in `trop L` exactly when its Plücker vector lies in `F_1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropfano::fano::{contains_line, fano_general, fano_linear};
use tropfano::numkernel::{kminors_val, Field, Matrix, Rational, TMatrix, TRatFn, TropValue};
use tropfano::polyhedra::{h_to_v, Orbit};
use tropfano::toriclib::{cayley_from_line, realize_in_toric, trop_toric, verify_cayley, LatticePointSet};
use tropfano::troplin::{realize_space, TropPluecker};

/// A random matrix whose entries are `c·t^k`.
fn valued_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_k: i64) -> TMatrix {
    Matrix::from_fn(rows, cols, |_, _| {
        let c = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        TRatFn::t_pow(rng.gen_range(0..=max_k)).mul(&TRatFn::from_int(c))
    })
}

fn line_of(y: &[Rational]) -> TropPluecker {
    TropPluecker::new(1, 5, y.iter().cloned().map(TropValue::Finite).collect()).unwrap()
}

/// Relative interior points, vertices and far ray points of every cell.
fn cell_samples(k: &tropfano::polyhedra::PolyComplex) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for c in &k.cells {
        out.push(c.relint().unwrap().point);
        let v = h_to_v(c).unwrap();
        for x in &v.vertices {
            out.push(x.clone());
            for r in &v.rays {
                out.push(x.iter().zip(r).map(|(a, b)| a + &(b * &Rational::from_int(3))).collect());
            }
        }
    }
    out
}

#[test]
fn incidence_cells_are_lines_of_the_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2 {
        let l = valued_matrix(&mut rng, 3, 6, 3);
        let w = TropPluecker::from_matrix(&l).unwrap();
        let plane = realize_space(&w, &Orbit::torus()).unwrap().complex;
        let f = fano_linear(&w, 1, &Orbit::torus()).unwrap();
        assert!(!f.complex.is_empty());
        for y in cell_samples(&f.complex) {
            let p = line_of(&y);
            assert!(contains_line(&p, &plane, &Orbit::torus()).unwrap().holds(), "{y:?}");
        }
    }
}

#[test]
fn random_lines_agree_with_both_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let l = valued_matrix(&mut rng, 3, 6, 2);
    let w = TropPluecker::from_matrix(&l).unwrap();
    assert!(w.values().iter().any(|v| v != &w.values()[0]), "weights should be non-uniform");
    let plane = realize_space(&w, &Orbit::torus()).unwrap().complex;
    let f = fano_linear(&w, 1, &Orbit::torus()).unwrap();
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..60 {
        // lines of the plane: two random points of the classical plane
        let coeffs = valued_matrix(&mut rng, 2, 3, 2);
        let b = coeffs.mul(&l).unwrap();
        let Ok(vals) = kminors_val(&b, 2) else { continue };
        if vals.iter().any(|v| v.is_infinite()) {
            continue;
        }
        let y: Vec<Rational> = vals.iter().map(|v| v.finite().unwrap().clone()).collect();
        let p = line_of(&y);
        let direct = contains_line(&p, &plane, &Orbit::torus()).unwrap().holds();
        assert!(direct, "a classical line of L must tropicalize into trop L");
        assert_eq!(f.complex.contains_point(&y), direct, "{y:?}");
        inside += 1;
        // a random tree metric, usually not in the plane
        let q = valued_matrix(&mut rng, 2, 6, 4);
        let Ok(vals) = kminors_val(&q, 2) else { continue };
        if vals.iter().any(|v| v.is_infinite()) {
            continue;
        }
        let y: Vec<Rational> = vals.iter().map(|v| v.finite().unwrap().clone()).collect();
        let direct = contains_line(&line_of(&y), &plane, &Orbit::torus()).unwrap().holds();
        assert_eq!(f.complex.contains_point(&y), direct, "{y:?}");
        outside += usize::from(!direct);
    }
    assert!(inside > 20);
    assert!(outside > 5);
}

fn five_points() -> LatticePointSet {
    LatticePointSet::from_rows(vec![
        vec![0, 1, 0, 0, 0],
        vec![1, 0, 0, 0, 0],
        vec![2, 1, 7, 3, 5],
        vec![1, 1, 1, 1, 1],
    ])
    .unwrap()
}

/// Lines found by projection in a boundary orbit are realized inside the
/// toric variety.
#[test]
fn sampled_toric_lines_are_realized() {
    let a = five_points();
    // coordinates 23, 24, 34 are infinite: points 2, 3, 4 share a leaf
    let orbit = Orbit::new(vec![7, 8, 9], 10).unwrap();
    let f = fano_general(&trop_toric(&a), 1, 4, &orbit).unwrap();
    assert!(!f.complex.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let finite = orbit.finite_coords(10);
    for cell in &f.complex.cells {
        let v = h_to_v(cell).unwrap();
        for _ in 0..8 {
            let mut y = v.vertices[0].clone();
            for g in v.lineality.iter().chain(&v.rays) {
                let c = Rational::from_int(rng.gen_range(0..=4));
                y.iter_mut().zip(g).for_each(|(a, b)| *a = &*a + &(b * &c));
            }
            assert!(y.iter().all(Rational::is_integer), "{y:?}");
            let mut entries = vec![TropValue::Infinity; 10];
            for (k, &i) in finite.iter().enumerate() {
                entries[i] = TropValue::Finite(y[k].clone());
            }
            let p = TropPluecker::new(1, 4, entries).unwrap();
            let pi = cayley_from_line(&a, &p).unwrap();
            assert!(verify_cayley(&a, &pi).unwrap().holds);
            let r = realize_in_toric(&a, &p).unwrap();
            assert!(r.certificate.passed());
        }
    }
}
