//! Haar sampling of SU(n) and binning of moment-map images.
//!
//! Sample `i` draws from a ChaCha8 stream selected by `(seed, i)`, so results
//! do not depend on how samples are split across threads. Histogram merges
//! add integer counts and are therefore order-independent.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::chevalley::embed_lambda;
use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::Weight;

/// Regular grid over a box in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BinSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub bins: Vec<usize>,
}

impl BinSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, bins: Vec<usize>) -> Result<Self> {
        if lo.len() != hi.len() || lo.len() != bins.len() || lo.is_empty() {
            return Err(Error::Invalid("bin spec axes disagree in length".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h)) || bins.contains(&0) {
            return Err(Error::Invalid("bin spec needs lo < hi and at least one bin per axis".into()));
        }
        Ok(Self { lo, hi, bins })
    }

    pub fn dim(&self) -> usize {
        self.bins.len()
    }

    pub fn total_bins(&self) -> usize {
        self.bins.iter().product()
    }

    pub fn width(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / self.bins[axis] as f64
    }

    /// Row-major bin index of a point, or `None` outside the box.
    pub fn locate(&self, p: &[f64]) -> Option<usize> {
        let mut idx = 0;
        for a in 0..self.dim() {
            if !(p[a] >= self.lo[a] && p[a] <= self.hi[a]) {
                return None;
            }
            let b = (((p[a] - self.lo[a]) / self.width(a)) as usize).min(self.bins[a] - 1);
            idx = idx * self.bins[a] + b;
        }
        Some(idx)
    }

    /// Per-axis bin indices of a row-major index.
    pub fn unravel(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for a in (0..self.dim()).rev() {
            out[a] = idx % self.bins[a];
            idx /= self.bins[a];
        }
        out
    }

    pub fn center(&self, idx: usize) -> Vec<f64> {
        self.unravel(idx)
            .iter()
            .enumerate()
            .map(|(a, &b)| self.lo[a] + (b as f64 + 0.5) * self.width(a))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct OrbitSampleConfig {
    /// SU(n), n in {2, 3}.
    pub n: usize,
    pub lambda: Weight,
    pub sample_count: u64,
    pub bins: BinSpec,
    pub seed: u64,
    /// The invariant form is `form_scale * tr(XY)`.
    pub form_scale: Rational,
}

impl OrbitSampleConfig {
    pub fn validate(&self) -> Result<()> {
        embed_lambda(self.n, &self.lambda, &self.form_scale)?;
        if self.sample_count == 0 {
            return Err(Error::Invalid("sample count must be positive".into()));
        }
        if self.bins.dim() != self.n - 1 {
            return Err(Error::DimensionMismatch { expected: self.n - 1, got: self.bins.dim() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDensity {
    pub spec: BinSpec,
    pub lambda: Weight,
    pub counts: Vec<u64>,
    /// Samples that fell outside the box.
    pub outside: u64,
}

impl EmpiricalDensity {
    pub fn from_points(points: &[Vec<f64>], spec: BinSpec, lambda: Weight) -> Self {
        let mut counts = vec![0u64; spec.total_bins()];
        let mut outside = 0;
        for p in points {
            match spec.locate(p) {
                Some(i) => counts[i] += 1,
                None => outside += 1,
            }
        }
        Self { spec, lambda, counts, outside }
    }

    /// Samples inside the box.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts normalized to sum to one over the box.
    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total().max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    /// `center_0, ..., count, frequency` rows, one per bin.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..self.spec.dim()).map(|a| format!("center_{a}")).collect();
        let _ = writeln!(out, "{},count,frequency", header.join(","));
        for (i, (c, f)) in self.counts.iter().zip(self.frequencies()).enumerate() {
            let centers: Vec<String> = self.spec.center(i).iter().map(|x| format!("{x:.12}")).collect();
            let _ = writeln!(out, "{},{c},{f:.12}", centers.join(","));
        }
        out
    }
}

pub type CMatrix = Vec<Vec<Complex64>>;

/// Haar-distributed element of SU(n): Gram-Schmidt on a complex Gaussian
/// matrix (equivalent to QR with a positive diagonal in R), then a global
/// phase fixes the determinant to one.
pub fn haar_special_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    Complex64::new(re * scale, im * scale)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut g: CMatrix = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let det = determinant(&g);
    let phase = Complex64::from_polar(1.0, -det.arg() / n as f64);
    for row in g.iter_mut() {
        for z in row.iter_mut() {
            *z *= phase;
        }
    }
    g
}

pub fn determinant(g: &CMatrix) -> Complex64 {
    match g.len() {
        1 => g[0][0],
        2 => g[0][0] * g[1][1] - g[0][1] * g[1][0],
        3 => {
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
                + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        }
        n => panic!("determinant for n = {n} not needed"),
    }
}

/// Fundamental-weight coordinates of the restriction to the torus of the
/// functional `X ↦ form_scale * tr(g Λ g† X)`.
pub fn moment_image(g: &CMatrix, diag: &[f64], form_scale: f64) -> Vec<f64> {
    let n = diag.len();
    let d: Vec<f64> = (0..n).map(|k| (0..n).map(|j| g[k][j].norm_sqr() * diag[j]).sum()).collect();
    (0..n - 1).map(|i| form_scale * (d[i] - d[i + 1])).collect()
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn prepared(cfg: &OrbitSampleConfig) -> Result<(Vec<f64>, f64)> {
    cfg.validate()?;
    let diag: Vec<f64> = embed_lambda(cfg.n, &cfg.lambda, &cfg.form_scale)?.iter().map(num::to_f64).collect();
    Ok((diag, num::to_f64(&cfg.form_scale)))
}

/// Moment-map images of every sample, in sample order.
pub fn sample_moment_points(cfg: &OrbitSampleConfig) -> Result<Vec<Vec<f64>>> {
    let (diag, scale) = prepared(cfg)?;
    Ok((0..cfg.sample_count)
        .into_par_iter()
        .map(|i| {
            let g = haar_special_unitary(cfg.n, &mut sample_rng(cfg.seed, i));
            moment_image(&g, &diag, scale)
        })
        .collect())
}

pub fn sample_pushforward(cfg: &OrbitSampleConfig) -> Result<EmpiricalDensity> {
    let (diag, scale) = prepared(cfg)?;
    let nbins = cfg.bins.total_bins();
    // last slot counts samples outside the box
    let counts = (0..cfg.sample_count)
        .into_par_iter()
        .fold(
            || vec![0u64; nbins + 1],
            |mut acc, i| {
                let g = haar_special_unitary(cfg.n, &mut sample_rng(cfg.seed, i));
                let p = moment_image(&g, &diag, scale);
                acc[cfg.bins.locate(&p).unwrap_or(nbins)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; nbins + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(EmpiricalDensity {
        spec: cfg.bins.clone(),
        lambda: cfg.lambda.clone(),
        outside: counts[nbins],
        counts: counts[..nbins].to_vec(),
    })
}
