//! Fiber polytopes `{x >= 0 : W x = b}` of the positive-root map and their
//! lattice-normalized volumes.
//!
//! `W` is the `r × n` matrix whose columns are the positive roots in
//! simple-root coordinates. The volume of a fiber is measured on the affine
//! space `W^{-1}(b)` with the Lebesgue measure giving a fundamental cell of
//! the lattice `ker(W) ∩ Z^n` measure one. This is the asymptotic partition
//! function: the continuous counterpart of [`crate::kostant`].
//!
//! Every face of the fiber is itself a fiber, of the column subset `C` left
//! after zeroing the other coordinates, so the volume is computed by a pyramid
//! decomposition from a vertex over the face lattice indexed by column
//! subsets. For a face `F_C` of dimension `d = |C| - rank(C)` with apex `v`:
//!
//! ```text
//! vol(F_C) = (1/d) * sum over facet hyperplanes {x_a = 0} not through v of
//!            (v_a / g_a) * vol(F_{C \ a})
//! ```
//!
//! where `g_a` generates the image of `x ↦ x_a` on the kernel lattice of `C`,
//! so `v_a / g_a` is the height of the apex in lattice layers. All arithmetic
//! is exact.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::num::{self, Rational};
use crate::rootsys::{RootSystem, RootVector};

/// `{x >= 0 : W x = b}` together with its kernel-lattice data.
#[derive(Debug, Clone)]
pub struct FiberPolytope {
    pub matrix: Vec<Vec<i64>>,
    pub b: RootVector,
    pub kernel_basis: Vec<Vec<i64>>,
    /// A nonnegative solution when the fiber is nonempty, otherwise some
    /// (possibly negative) real solution.
    pub particular_solution: Vec<Rational>,
    pub vertices: Vec<Vec<Rational>>,
}

#[derive(Debug)]
struct Basis {
    columns: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

#[derive(Debug)]
struct SubsetData {
    columns: Vec<usize>,
    dim: usize,
    /// Kernel lattice basis, each vector indexed by position in `columns`.
    kernel: Vec<Vec<i64>>,
    /// gcd of each coordinate over the kernel lattice (0 if it vanishes there).
    gcd: Vec<i64>,
}

/// Per-root-system data shared by every fiber: column bases and the kernel
/// lattice of each column subset, computed lazily and cached.
#[derive(Debug)]
pub struct FiberGeometry {
    rank: usize,
    columns: Vec<Vec<i64>>,
    bases: OnceLock<Vec<Basis>>,
    subsets: RwLock<HashMap<u64, Arc<SubsetData>>>,
}

impl FiberGeometry {
    pub fn new(rs: &RootSystem) -> Self {
        Self::from_columns(rs.positive_roots().to_vec(), rs.rank())
    }

    /// Columns must span `Q^rank` and lie in an open half space.
    pub fn from_columns(columns: Vec<Vec<i64>>, rank: usize) -> Self {
        assert!(columns.len() <= 64, "at most 64 columns supported");
        Self { rank, columns, bases: OnceLock::new(), subsets: RwLock::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `W` as an `r × n` integer matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| self.columns.iter().map(|c| c[i]).collect()).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let full = self.subset(self.full_mask());
        full.kernel.clone()
    }

    fn full_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    fn bases(&self) -> &[Basis] {
        self.bases.get_or_init(|| {
            lattice::combinations(self.n(), self.rank)
                .into_iter()
                .filter_map(|cols| {
                    let m: Vec<Vec<Rational>> = (0..self.rank)
                        .map(|i| cols.iter().map(|&c| num::q(self.columns[c][i])).collect())
                        .collect();
                    num::invert(&m).map(|inverse| Basis { columns: cols, inverse })
                })
                .collect()
        })
    }

    fn subset(&self, mask: u64) -> Arc<SubsetData> {
        if let Some(d) = self.subsets.read().expect("cache lock").get(&mask) {
            return d.clone();
        }
        let columns: Vec<usize> = (0..self.n()).filter(|&i| mask >> i & 1 == 1).collect();
        let m: Vec<Vec<i64>> =
            (0..self.rank).map(|i| columns.iter().map(|&c| self.columns[c][i]).collect()).collect();
        let kernel = lattice::integer_kernel(&m, columns.len());
        let gcd = (0..columns.len())
            .map(|pos| kernel.iter().fold(0i64, |g, v| g.gcd(&v[pos])))
            .collect();
        let data = Arc::new(SubsetData { dim: kernel.len(), columns, kernel, gcd });
        self.subsets.write().expect("cache lock").insert(mask, data.clone());
        data
    }

    fn check_b(&self, b: &RootVector) -> Result<()> {
        if b.dim() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: b.dim() });
        }
        Ok(())
    }

    /// Basic solutions for every invertible column basis, feasible or not.
    fn basic_solutions<'a>(&'a self, b: &'a RootVector) -> impl Iterator<Item = Vec<Rational>> + 'a {
        self.bases().iter().map(move |basis| {
            let xb = num::mat_vec(&basis.inverse, b.coords());
            let mut x = vec![Rational::zero(); self.n()];
            for (&c, v) in basis.columns.iter().zip(xb) {
                x[c] = v;
            }
            x
        })
    }

    /// All vertices of the fiber, sorted; empty iff the fiber is empty.
    pub fn vertices(&self, b: &RootVector) -> Result<Vec<Vec<Rational>>> {
        self.check_b(b)?;
        let set: BTreeSet<Vec<Rational>> = self
            .basic_solutions(b)
            .filter(|x| x.iter().all(|c| !c.is_negative()))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// Whether some vertex has fewer than `rank` nonzero coordinates, i.e. `b`
    /// lies in a cone spanned by a lower-rank set of columns.
    pub fn is_degenerate(&self, b: &RootVector) -> Result<bool> {
        Ok(self
            .vertices(b)?
            .iter()
            .any(|v| v.iter().filter(|c| !c.is_zero()).count() < self.rank))
    }

    pub fn polytope(&self, b: &RootVector) -> Result<FiberPolytope> {
        let vertices = self.vertices(b)?;
        let particular_solution = match vertices.first() {
            Some(v) => v.clone(),
            None => self.basic_solutions(b).next().expect("full-rank columns"),
        };
        Ok(FiberPolytope {
            matrix: self.matrix(),
            b: b.clone(),
            kernel_basis: self.kernel_basis(),
            particular_solution,
            vertices,
        })
    }

    /// Lattice-normalized `(n - r)`-volume of the fiber over `b`.
    ///
    /// Empty and lower-dimensional fibers have volume 0. When `n = r` the
    /// fiber is at most a point and the volume is 1 on the feasible cone.
    pub fn volume(&self, b: &RootVector) -> Result<Rational> {
        let vertices = self.vertices(b)?;
        let mut memo = HashMap::new();
        Ok(self.face_volume(self.full_mask(), &vertices, &mut memo))
    }

    fn face_volume(&self, mask: u64, vertices: &[Vec<Rational>], memo: &mut HashMap<u64, Rational>) -> Rational {
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let apex = vertices.iter().find(|v| {
            v.iter().enumerate().all(|(i, c)| c.is_zero() || mask >> i & 1 == 1)
        });
        let Some(apex) = apex else {
            memo.insert(mask, Rational::zero());
            return Rational::zero();
        };
        let data = self.subset(mask);
        if data.dim == 0 {
            let one = num::q(1);
            memo.insert(mask, one.clone());
            return one;
        }

        let mut facets: Vec<usize> = Vec::new();
        for (pos, &col) in data.columns.iter().enumerate() {
            if !apex[col].is_positive() || data.gcd[pos] == 0 {
                continue;
            }
            let same_hyperplane = facets.iter().any(|&other| {
                let oc = data.columns[other];
                data.kernel.iter().all(|k| {
                    &apex[oc] * num::q(k[pos]) == &apex[col] * num::q(k[other])
                })
            });
            if !same_hyperplane {
                facets.push(pos);
            }
        }

        let mut total = Rational::zero();
        for pos in facets {
            let col = data.columns[pos];
            let sub = self.face_volume(mask & !(1u64 << col), vertices, memo);
            if !sub.is_zero() {
                total += &apex[col] / num::q(data.gcd[pos]) * sub;
            }
        }
        let vol = total / num::q(data.dim as i64);
        memo.insert(mask, vol.clone());
        vol
    }
}

/// Basis of `ker(W) ∩ Z^n` for the positive-root matrix.
pub fn kernel_lattice_basis(rs: &RootSystem) -> Vec<Vec<i64>> {
    FiberGeometry::new(rs).kernel_basis()
}

pub fn fiber_vertices(rs: &RootSystem, b: &RootVector) -> Result<Vec<Vec<Rational>>> {
    FiberGeometry::new(rs).vertices(b)
}

/// One-shot volume; use a shared [`FiberGeometry`] for repeated queries.
pub fn asymptotic_partition_volume(rs: &RootSystem, b: &RootVector) -> Result<Rational> {
    FiberGeometry::new(rs).volume(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::PartitionTable;
    use crate::num::{q, q_frac};
    use proptest::prelude::*;

    fn rs(t: &str) -> RootSystem {
        RootSystem::from_type_str(t).unwrap()
    }

    fn rv(xs: &[i64]) -> RootVector {
        RootVector::from_ints(xs)
    }

    /// Independent route for fibers of dimension <= 2: express the vertices in
    /// coordinates of a given kernel basis and measure the hull directly
    /// (interval length or shoelace area of the angularly sorted polygon).
    fn hull_measure_in_basis(vertices: &[Vec<Rational>], basis: &[Vec<i64>]) -> Rational {
        let d = basis.len();
        if vertices.is_empty() {
            return q(0);
        }
        if d == 0 {
            return q(1);
        }
        // solve basis^T t = v - v0 using d independent coordinates
        let rows = lattice::combinations(basis[0].len(), d)
            .into_iter()
            .find(|cols| {
                let m: Vec<Vec<i64>> = cols.iter().map(|&c| basis.iter().map(|k| k[c]).collect()).collect();
                !lattice::det_int(&m).is_zero()
            })
            .unwrap();
        let m: Vec<Vec<Rational>> = rows.iter().map(|&c| basis.iter().map(|k| q(k[c])).collect()).collect();
        let inv = num::invert(&m).unwrap();
        let pts: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|v| {
                let diff: Vec<Rational> = rows.iter().map(|&c| &v[c] - &vertices[0][c]).collect();
                num::mat_vec(&inv, &diff)
            })
            .collect();
        if d == 1 {
            let max = pts.iter().map(|p| p[0].clone()).max().unwrap();
            let min = pts.iter().map(|p| p[0].clone()).min().unwrap();
            return max - min;
        }
        assert_eq!(d, 2);
        let n = q(pts.len() as i64);
        let cx: Rational = pts.iter().map(|p| p[0].clone()).sum::<Rational>() / &n;
        let cy: Rational = pts.iter().map(|p| p[1].clone()).sum::<Rational>() / &n;
        let mut sorted = pts.clone();
        sorted.sort_by(|a, b| {
            let (ax, ay) = (num::to_f64(&(&a[0] - &cx)), num::to_f64(&(&a[1] - &cy)));
            let (bx, by) = (num::to_f64(&(&b[0] - &cx)), num::to_f64(&(&b[1] - &cy)));
            ay.atan2(ax).partial_cmp(&by.atan2(bx)).unwrap()
        });
        let mut area = q(0);
        for i in 0..sorted.len() {
            let (p, r) = (&sorted[i], &sorted[(i + 1) % sorted.len()]);
            area += &p[0] * &r[1] - &p[1] * &r[0];
        }
        area.abs() / q(2)
    }

    #[test]
    fn kernel_bases() {
        assert_eq!(kernel_lattice_basis(&rs("A2")), vec![vec![1, 1, -1]]);
        assert!(kernel_lattice_basis(&rs("A1")).is_empty());
        assert!(kernel_lattice_basis(&rs("A1xA1")).is_empty());
        for t in ["B2", "G2", "A3", "B3", "D4"] {
            let r = rs(t);
            let k = kernel_lattice_basis(&r);
            assert_eq!(k.len(), r.s());
            assert!(lattice::is_saturated_basis(&k), "{t}");
        }
    }

    #[test]
    fn vertex_examples() {
        let a2 = rs("A2");
        assert_eq!(
            fiber_vertices(&a2, &rv(&[1, 1])).unwrap(),
            vec![num::q_vec(&[0, 0, 1]), num::q_vec(&[1, 1, 0])]
        );
        assert!(fiber_vertices(&a2, &rv(&[-1, 0])).unwrap().is_empty());
        assert_eq!(fiber_vertices(&a2, &rv(&[0, 0])).unwrap(), vec![num::q_vec(&[0, 0, 0])]);
    }

    #[test]
    fn volume_examples() {
        let a2 = rs("A2");
        assert_eq!(asymptotic_partition_volume(&a2, &rv(&[1, 1])).unwrap(), q(1));
        assert_eq!(asymptotic_partition_volume(&a2, &rv(&[2, 2])).unwrap(), q(2));
        assert_eq!(asymptotic_partition_volume(&a2, &rv(&[0, 0])).unwrap(), q(0));
        assert_eq!(asymptotic_partition_volume(&a2, &rv(&[-1, 3])).unwrap(), q(0));
        let a1 = rs("A1");
        assert_eq!(asymptotic_partition_volume(&a1, &RootVector::new(vec![q_frac(3, 2)])).unwrap(), q(1));
        assert_eq!(asymptotic_partition_volume(&a1, &RootVector::new(vec![q_frac(-1, 2)])).unwrap(), q(0));
        // A2 closed form: P(m, n) = min(m, n)
        for (m, n) in [(3, 7), (5, 2), (4, 4)] {
            assert_eq!(asymptotic_partition_volume(&a2, &rv(&[m, n])).unwrap(), q(m.min(n)));
        }
    }

    #[test]
    fn vertex_certificates() {
        for t in ["A2", "B2", "G2", "A3"] {
            let r = rs(t);
            let g = FiberGeometry::new(&r);
            let w = g.matrix();
            let b = rv(&vec![3; r.rank()]);
            let vs = g.vertices(&b).unwrap();
            assert!(!vs.is_empty());
            for v in &vs {
                assert!(v.iter().all(|c| !c.is_negative()));
                assert_eq!(num::int_mat_vec(&w, v), b.coords().to_vec());
            }
            // every feasible basic solution appears
            for cols in lattice::combinations(r.n(), r.rank()) {
                let m: Vec<Vec<Rational>> =
                    (0..r.rank()).map(|i| cols.iter().map(|&c| q(w[i][c])).collect()).collect();
                if let Some(inv) = num::invert(&m) {
                    let xb = num::mat_vec(&inv, b.coords());
                    if xb.iter().all(|c| !c.is_negative()) {
                        let mut x = vec![q(0); r.n()];
                        for (&c, val) in cols.iter().zip(xb) {
                            x[c] = val;
                        }
                        assert!(vs.contains(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn basis_independence_against_direct_hull_measure() {
        // unimodular changes of the kernel basis leave the measure unchanged
        let unimodular = [vec![vec![1, 0], vec![0, 1]], vec![vec![2, 1], vec![1, 1]], vec![vec![1, -3], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        let b2 = rs("B2");
        let g = FiberGeometry::new(&b2);
        let k = g.kernel_basis();
        for b in [[3, 4], [5, 2], [7, 9], [1, 1], [4, 8], [6, 5]] {
            let b = rv(&b);
            let vs = g.vertices(&b).unwrap();
            let vol = g.volume(&b).unwrap();
            for u in &unimodular {
                let transformed: Vec<Vec<i64>> = (0..2)
                    .map(|i| (0..k[0].len()).map(|c| u[i][0] * k[0][c] + u[i][1] * k[1][c]).collect())
                    .collect();
                assert_eq!(hull_measure_in_basis(&vs, &transformed), vol, "b = {b}");
            }
        }
        let a2 = rs("A2");
        let g = FiberGeometry::new(&a2);
        for b in [[3, 4], [5, 2], [1, 1]] {
            let b = rv(&b);
            let vs = g.vertices(&b).unwrap();
            let neg: Vec<Vec<i64>> = vec![g.kernel_basis()[0].iter().map(|x| -x).collect()];
            assert_eq!(hull_measure_in_basis(&vs, &neg), g.volume(&b).unwrap());
        }
    }

    #[test]
    fn riemann_sum_consistency_b2() {
        // p(k b) / k^2 approaches P(b) at rate 1/k
        let b2 = rs("B2");
        let g = FiberGeometry::new(&b2);
        let b = [3, 5];
        let vol = g.volume(&rv(&b)).unwrap();
        let table = PartitionTable::new(&b2, &[64 * 3, 64 * 5]).unwrap();
        let mut errs = Vec::new();
        for k in [8i64, 16, 32, 64] {
            let p = table.get(&[k * b[0], k * b[1]]).unwrap();
            let scaled = Rational::new(p.into(), (k * k).into());
            errs.push(num::to_f64(&(scaled - &vol).abs()));
        }
        for w in errs.windows(2) {
            assert!(w[1] < w[0]);
        }
        let slope = (errs[3] / errs[0]).ln() / 8f64.ln();
        assert!((slope + 1.0).abs() < 0.2, "slope {slope}");
    }

    #[test]
    fn higher_rank_volumes_are_positive_inside_the_cone() {
        for t in ["G2", "A3", "B3", "D4"] {
            let r = rs(t);
            let b = r.to_root_coords(&r.delta()).unwrap().scale(&q(2));
            let vol = asymptotic_partition_volume(&r, &b).unwrap();
            assert!(vol.is_positive(), "{t}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn homogeneity(a in 0i64..12, b in 0i64..12, c in 0i64..6) {
            for (t, bv) in [("A2", vec![a, b]), ("B2", vec![a, b]), ("G2", vec![a, b]), ("A3", vec![a, b, c])] {
                let r = rs(t);
                let g = FiberGeometry::new(&r);
                let base = g.volume(&rv(&bv)).unwrap();
                for k in [2i64, 3, 5] {
                    let scaled = g.volume(&rv(&bv).scale(&q(k))).unwrap();
                    prop_assert_eq!(scaled, &base * q(k).pow(r.s() as i32));
                }
                let half = g.volume(&rv(&bv).scale(&q_frac(1, 2))).unwrap();
                prop_assert_eq!(half * q(2).pow(r.s() as i32), base);
            }
        }

        #[test]
        fn two_dimensional_fibers_match_direct_hull(a in 0i64..15, b in 0i64..15) {
            let b2 = rs("B2");
            let g = FiberGeometry::new(&b2);
            let bv = rv(&[a, b]);
            let vs = g.vertices(&bv).unwrap();
            prop_assert_eq!(hull_measure_in_basis(&vs, &g.kernel_basis()), g.volume(&bv).unwrap());
        }
    }
}
