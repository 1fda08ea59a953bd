//! Matroids on small ground sets (at most 64 elements), stored by their
//! bases as bitmasks. Flats, circuits, chains and Bergman fans.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{k_subsets, Field, Matrix, Rational, TropValue};
use crate::polyhedra::{HPolyhedron, PolyComplex};
use crate::prevariety::{TropPolynomial, TropSystem};
use crate::troplin::TropPluecker;

pub type Mask = u64;

pub fn mask_of(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &e| m | (1 << e))
}

pub fn elems_of(m: Mask) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Mask>,
    #[serde(skip)]
    basis_set: HashSet<Mask>,
}

/// A chain of flats `F_1 ⊊ … ⊊ F_k`, the last one being the ground set for
/// maximal chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlatChain {
    pub flats: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatData {
    pub flats: Vec<Vec<usize>>,
    pub minimal_flats: Vec<Vec<usize>>,
    pub maximal_chains: Vec<FlatChain>,
}

impl Matroid {
    /// Builds a matroid from its bases, all of one size.
    pub fn from_bases(n: usize, bases: Vec<Vec<usize>>) -> Result<Self> {
        if n > 64 {
            return Err(Error::OutOfScope("ground sets above 64 elements".into()));
        }
        let Some(rank) = bases.first().map(Vec::len) else {
            return Err(Error::DegenerateInput("matroid without bases".into()));
        };
        if bases.iter().any(|b| b.len() != rank || b.iter().any(|&e| e >= n)) {
            return Err(Error::DegenerateInput("bases of unequal size or out of range".into()));
        }
        let mut masks: Vec<Mask> = bases.iter().map(|b| mask_of(b)).collect();
        masks.sort_unstable();
        masks.dedup();
        let basis_set = masks.iter().copied().collect();
        Ok(Matroid { n, rank, bases: masks, basis_set })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&m| elems_of(m)).collect()
    }

    pub fn is_basis(&self, s: &[usize]) -> bool {
        self.basis_set.contains(&mask_of(s))
    }

    /// Spot-checks the basis exchange axiom on every pair of bases.
    pub fn check_exchange(&self) -> bool {
        for &a in &self.bases {
            for &b in &self.bases {
                for x in elems_of(a & !b) {
                    let ok = elems_of(b & !a).into_iter().any(|y| self.basis_set.contains(&(a & !(1 << x) | 1 << y)));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn rank_of(&self, s: Mask) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        let mut out = s;
        for e in 0..self.n {
            if s >> e & 1 == 0 && self.rank_of(s | 1 << e) == r {
                out |= 1 << e;
            }
        }
        out
    }

    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |a, b| a | b);
        (0..self.n).filter(|&e| union >> e & 1 == 0).collect()
    }

    fn require_loopless(&self) -> Result<()> {
        let loops = self.loops();
        if loops.is_empty() { Ok(()) } else { Err(Error::LoopsPresent(loops)) }
    }

    fn full(&self) -> Mask {
        if self.n == 64 { !0 } else { (1 << self.n) - 1 }
    }

    /// All flats, by rank then as sorted masks.
    pub fn flats(&self) -> Vec<Mask> {
        let mut seen: HashSet<Mask> = HashSet::new();
        let mut frontier = vec![self.closure(0)];
        seen.insert(frontier[0]);
        while let Some(f) = frontier.pop() {
            for e in 0..self.n {
                if f >> e & 1 == 0 {
                    let g = self.closure(f | 1 << e);
                    if seen.insert(g) {
                        frontier.push(g);
                    }
                }
            }
        }
        let mut flats: Vec<Mask> = seen.into_iter().collect();
        flats.sort_by_key(|&f| (self.rank_of(f), f));
        flats
    }

    /// Flats covering `f` (rank one higher).
    fn covers(&self, f: Mask) -> Vec<Mask> {
        let mut out = BTreeSet::new();
        for e in 0..self.n {
            if f >> e & 1 == 0 {
                out.insert(self.closure(f | 1 << e));
            }
        }
        out.into_iter().collect()
    }

    /// Rank-one flats; for loopless matroids these partition the ground set
    /// into parallel classes.
    /// Atoms of the lattice of flats, ordered by their smallest element.
    pub fn minimal_flats(&self) -> Result<Vec<Vec<usize>>> {
        self.require_loopless()?;
        let mut out: Vec<Vec<usize>> = self.covers(0).into_iter().map(elems_of).collect();
        out.sort();
        Ok(out)
    }

    pub fn maximal_chains(&self) -> Result<Vec<FlatChain>> {
        self.require_loopless()?;
        let mut out = Vec::new();
        let mut stack = vec![(0 as Mask, Vec::<Mask>::new())];
        let full = self.full();
        while let Some((f, chain)) = stack.pop() {
            if f == full {
                out.push(FlatChain { flats: chain.into_iter().map(elems_of).collect() });
                continue;
            }
            for g in self.covers(f) {
                let mut c = chain.clone();
                c.push(g);
                stack.push((g, c));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn flats_minimal_and_chains(&self) -> Result<FlatData> {
        self.require_loopless()?;
        Ok(FlatData {
            flats: self.flats().into_iter().map(elems_of).collect(),
            minimal_flats: self.minimal_flats()?,
            maximal_chains: self.maximal_chains()?,
        })
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Mask> = Vec::new();
        for size in 1..=self.rank + 1 {
            for s in k_subsets(self.n, size) {
                let m = mask_of(&s);
                if out.iter().any(|&c| m | c == m) {
                    continue;
                }
                if self.rank_of(m) < size {
                    out.push(m);
                }
            }
        }
        out.into_iter().map(elems_of).collect()
    }

    /// Restriction to the complement of `deleted`, relabelled `0..`.
    pub fn delete(&self, deleted: &[usize]) -> Result<Matroid> {
        let keep: Vec<usize> = (0..self.n).filter(|e| !deleted.contains(e)).collect();
        let dmask = mask_of(deleted);
        let r = self.rank_of(!dmask & self.full());
        let bases: Vec<Vec<usize>> = self
            .bases
            .iter()
            .filter(|&&b| (b & !dmask).count_ones() as usize == r)
            .map(|&b| {
                elems_of(b & !dmask).iter().map(|e| keep.iter().position(|k| k == e).expect("kept")).collect()
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Matroid::from_bases(keep.len(), bases)
    }
}

/// The column matroid of a matrix over any exact field.
pub fn matroid_from_columns<T: Field>(m: &Matrix<T>) -> Result<Matroid> {
    let r = m.rank();
    if r == 0 {
        return Err(Error::DegenerateInput("zero matrix has no bases".into()));
    }
    let bases: Vec<Vec<usize>> = k_subsets(m.ncols(), r).filter(|s| m.select_columns(s).rank() == r).collect();
    Matroid::from_bases(m.ncols(), bases)
}

/// Bases are the subsets with finite Plücker entry.
pub fn matroid_from_plucker(p: &TropPluecker) -> Result<Matroid> {
    let bases: Vec<Vec<usize>> =
        p.entries().filter(|(_, v)| v.is_finite()).map(|(s, _)| s.to_vec()).collect();
    if bases.is_empty() {
        return Err(Error::DegenerateInput("all Pluecker entries are infinite".into()));
    }
    Matroid::from_bases(p.n() + 1, bases)
}

/// Circuit polynomials `⊕_{i∈C} x_i` with trivial coefficients.
pub fn circuit_system_trivial(m: &Matroid) -> TropSystem {
    let n = m.ground_size();
    let polys = m
        .circuits()
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            TropPolynomial::new(
                c.iter()
                    .map(|&i| {
                        let mut e = vec![0u32; n];
                        e[i] = 1;
                        (TropValue::zero(), e)
                    })
                    .collect(),
            )
        })
        .collect();
    TropSystem::new(n, polys, crate::polyhedra::Orbit::torus()).expect("consistent lengths")
}

/// Bergman fan in `R^{n+1}/R·1` (min convention), every face listed.
///
/// Each chain of proper nonempty flats `F_1 ⊊ … ⊊ F_k` spans the cone
/// `pos(e_{F_1}, …, e_{F_k}) + R·1`. Chain cones are merged into the coarse
/// structure of the circuit hypersurfaces: two chains share a cell when
/// every circuit attains its minimum at the same elements on both relative
/// interiors. For uniform matroids this gives the cones `pos(e_i : i ∈ S)`.
pub fn bergman_fan(m: &Matroid) -> Result<PolyComplex> {
    m.require_loopless()?;
    let n = m.ground_size();
    let full = m.full();
    let proper: Vec<Mask> = m.flats().into_iter().filter(|&f| f != 0 && f != full).collect();
    let sys = circuit_system_trivial(m).restrict()?.expect("torus restriction keeps every term");
    let mut sigs: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut stack: Vec<(Mask, Vec<i64>)> = vec![(0, vec![0; n])];
    while let Some((last, w)) = stack.pop() {
        let point: Vec<Rational> = w.iter().map(|&x| Rational::from_int(x)).collect();
        sigs.insert(sys.signature_at(&point));
        for &g in &proper {
            if g != last && g & last == last {
                let mut v = w.clone();
                for e in elems_of(g) {
                    v[e] += 1;
                }
                stack.push((g, v));
            }
        }
    }
    let cells: Vec<HPolyhedron> = sigs.iter().map(|s| sys.cell_of_signature(s)).collect();
    Ok(PolyComplex { ambient: n, cells, fan: true }.canonicalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{qi, QMatrix};
    use crate::polyhedra::fan_stats;
    use std::collections::HashMap;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_bases(n, k_subsets(n, r).collect()).unwrap()
    }

    #[test]
    fn uniform_flats() {
        let m = uniform(3, 6);
        assert!(m.check_exchange());
        let mf = m.minimal_flats().unwrap();
        assert_eq!(mf, (0..6).map(|i| vec![i]).collect::<Vec<_>>());
        let chains = m.maximal_chains().unwrap();
        assert_eq!(chains.len(), 30);
        assert!(chains.iter().all(|c| c.flats.len() == 3));
        assert_eq!(m.circuits().len(), 15);
    }

    #[test]
    fn loops_detected() {
        let a = QMatrix::from_rows(vec![vec![qi(1), qi(0), qi(1)], vec![qi(0), qi(0), qi(1)]]).unwrap();
        let m = matroid_from_columns(&a).unwrap();
        assert_eq!(m.loops(), vec![1]);
        assert_eq!(m.minimal_flats(), Err(Error::LoopsPresent(vec![1])));
        assert!(matches!(bergman_fan(&m), Err(Error::LoopsPresent(_))));
    }

    #[test]
    fn rank_one_single_chain() {
        let m = Matroid::from_bases(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(m.minimal_flats().unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(m.maximal_chains().unwrap().len(), 1);
    }

    #[test]
    fn bergman_of_uniform_counts_faces() {
        for (r, n) in [(2usize, 4usize), (3, 5), (3, 6)] {
            let fan = bergman_fan(&uniform(r, n)).unwrap();
            let mut by_dim: HashMap<usize, usize> = HashMap::new();
            for c in &fan.cells {
                *by_dim.entry(c.dim().unwrap() - 1).or_default() += 1;
            }
            for k in 0..r {
                assert_eq!(by_dim.get(&k).copied().unwrap_or(0), crate::numkernel::binomial(n, k), "U({r},{n}) dim {k}");
            }
        }
        let stats = fan_stats(&bergman_fan(&uniform(3, 6)).unwrap());
        assert_eq!(stats.max_cells_by_dim, std::collections::BTreeMap::from([(2, 15)]));
    }

    #[test]
    fn rank_two_parallel_classes_give_rays() {
        // classes {0,1}, {2}, {3,4}
        let a = QMatrix::from_rows(vec![
            vec![qi(1), qi(2), qi(0), qi(1), qi(3)],
            vec![qi(0), qi(0), qi(1), qi(1), qi(3)],
        ])
        .unwrap();
        let m = matroid_from_columns(&a).unwrap();
        assert_eq!(m.minimal_flats().unwrap(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let fan = bergman_fan(&m).unwrap();
        let rays = fan.rays();
        assert_eq!(rays.len(), 3);
        let mut sum = vec![qi(0); 5];
        for r in &rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        assert!(sum.iter().all(|x| *x == sum[0]));
    }
}
