//! Integer linear algebra: saturated kernel bases, exact determinants, ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::Rational;

/// A basis of `ker(m) ∩ Z^n` for an integer `rows × n` matrix.
///
/// Unimodular column operations reduce `m` to `[L | 0]` with `L` of full
/// column rank; the matching columns of the accumulated unimodular matrix span
/// the integer kernel, so the returned basis is saturated by construction.
/// Vectors are size-reduced against each other for readability.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    // columns of u, stored as rows for convenience
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivot = 0;
    for row in 0..a.len() {
        if pivot == n {
            break;
        }
        loop {
            // smallest nonzero |entry| in this row among columns >= pivot
            let best = (pivot..n).filter(|&c| a[row][c] != 0).min_by_key(|&c| a[row][c].abs());
            let Some(best) = best else { break };
            swap_cols(&mut a, &mut u, pivot, best);
            let p = a[row][pivot];
            let mut done = true;
            for c in pivot + 1..n {
                if a[row][c] != 0 {
                    let f = Integer::div_floor(&a[row][c], &p);
                    add_col(&mut a, &mut u, c, pivot, -f);
                    if a[row][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<i128>> = u[pivot..].to_vec();
    size_reduce(&mut basis);
    for v in basis.iter_mut() {
        // first nonzero coordinate positive
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    basis
        .into_iter()
        .map(|v| v.into_iter().map(|x| i64::try_from(x).expect("kernel entry overflow")).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// column `dst += f * column src`
fn add_col(a: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for row in a.iter_mut() {
        row[dst] += f * row[src];
    }
    let s = u[src].clone();
    for (d, x) in u[dst].iter_mut().zip(s) {
        *d += f * x;
    }
}

/// Cheap pairwise size reduction (not full LLL); keeps the lattice unchanged.
fn size_reduce(basis: &mut [Vec<i128>]) {
    let norm = |v: &[i128]| v.iter().map(|x| x * x).sum::<i128>();
    for _ in 0..8 {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let dot: i128 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
                let nj = norm(&basis[j]);
                if nj == 0 {
                    continue;
                }
                let f = Integer::div_floor(&(2 * dot + nj), &(2 * nj));
                if f != 0 {
                    let bj = basis[j].clone();
                    let cand: Vec<i128> = basis[i].iter().zip(&bj).map(|(a, b)| a - f * b).collect();
                    if norm(&cand) < norm(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det_int(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a square rational matrix.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Rank of an integer matrix.
pub fn rank_int(m: &[Vec<i64>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| crate::num::q_vec(r)).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether the integer vectors generate a saturated lattice of full rank in
/// their real span: the gcd of all maximal minors equals 1.
pub fn is_saturated_basis(basis: &[Vec<i64>]) -> bool {
    let d = basis.len();
    if d == 0 {
        return true;
    }
    let n = basis[0].len();
    let mut g = BigInt::zero();
    for cols in combinations(n, d) {
        let minor: Vec<Vec<i64>> = basis.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
        g = g.gcd(&det_int(&minor));
    }
    g.abs().is_one()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
