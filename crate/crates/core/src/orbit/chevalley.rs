//! sl2-triples of su(n) and the trace-form embedding of weights.

use num_complex::Complex;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::Weight;

pub type IntMatrix = Vec<Vec<Complex<i64>>>;

/// The triple `(X, Y, H)` for the root `e_i - e_j` together with the real
/// basis `U = X - Y`, `V = i (X + Y)` of the corresponding plane in su(n).
#[derive(Debug, Clone, PartialEq)]
pub struct ChevalleyTriple {
    pub i: usize,
    pub j: usize,
    pub x: IntMatrix,
    pub y: IntMatrix,
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl ChevalleyTriple {
    /// Simple-root coordinates of `e_i - e_j`: ones on `i..j`.
    pub fn root_coords(&self, n: usize) -> Vec<i64> {
        (0..n - 1).map(|k| i64::from(k >= self.i && k < self.j)).collect()
    }
}

fn elementary(n: usize, i: usize, j: usize) -> IntMatrix {
    let mut m = vec![vec![Complex::zero(); n]; n];
    m[i][j] = Complex::new(1, 0);
    m
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn combine(a: &IntMatrix, b: &IntMatrix, f: impl Fn(Complex<i64>, Complex<i64>) -> Complex<i64>) -> IntMatrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| f(x, y)).collect()).collect()
}

pub fn commutator(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    combine(&mat_mul(a, b), &mat_mul(b, a), |x, y| x - y)
}

pub fn scale(a: &IntMatrix, s: Complex<i64>) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|&x| x * s).collect()).collect()
}

pub fn is_anti_hermitian(a: &IntMatrix) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| a[i][j] == -a[j][i].conj()))
}

pub fn build_chevalley(n: usize) -> Result<Vec<ChevalleyTriple>> {
    if !(2..=3).contains(&n) {
        return Err(Error::Invalid(format!("SU({n}) is not supported; n must be 2 or 3")));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = elementary(n, i, j);
            let y = elementary(n, j, i);
            let h = combine(&elementary(n, i, i), &elementary(n, j, j), |a, b| a - b);
            let u = combine(&x, &y, |a, b| a - b);
            let v = scale(&combine(&x, &y, |a, b| a + b), Complex::new(0, 1));
            out.push(ChevalleyTriple { i, j, x, y, h, u, v });
        }
    }
    // simple roots first, matching the height order of the root system
    out.sort_by_key(|t| (t.j - t.i, t.i));
    Ok(out)
}

/// Diagonal entries of the traceless matrix `Λ` with
/// `form_scale * tr(Λ H_i) = lambda_i` for every simple coroot `H_i`.
pub fn embed_lambda(n: usize, lambda: &Weight, form_scale: &Rational) -> Result<Vec<Rational>> {
    if !(2..=3).contains(&n) {
        return Err(Error::Invalid(format!("SU({n}) is not supported; n must be 2 or 3")));
    }
    if lambda.dim() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: lambda.dim() });
    }
    if !form_scale.is_positive() {
        return Err(Error::Invalid("form scale must be positive".into()));
    }
    if lambda.coords().iter().any(|c| c.is_zero()) {
        return Err(Error::OnWall(format!("lambda = {lambda} has repeated diagonal entries (non-regular orbit)")));
    }
    if !lambda.is_strongly_dominant() {
        return Err(Error::Hypothesis(format!("lambda = {lambda} must be strongly dominant")));
    }
    // d_k - d_{k+1} = lambda_k / scale, sum d_k = 0
    let mut d = vec![Rational::zero(); n];
    for k in 1..n {
        d[k] = &d[k - 1] - &lambda.coords()[k - 1] / form_scale;
    }
    let mean: Rational = d.iter().cloned().sum::<Rational>() / num::q(n as i64);
    Ok(d.into_iter().map(|x| x - &mean).collect())
}
