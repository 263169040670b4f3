//! Histogram against exact density, bin by bin.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{BinSpec, EmpiricalDensity};
use crate::dh::DhEngine;
use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::Weight;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub samples: u64,
    pub bins: usize,
    /// Half the L1 distance between the normalized histogram and exact bin masses.
    pub tv_distance: f64,
    /// Expected TV distance from sampling noise alone:
    /// `0.5 * sum sqrt(2 p (1 - p) / (pi N))`.
    pub noise_floor: f64,
    /// `(p_hat - p) / sqrt(p (1 - p) / N)`; `None` where the exact mass is zero.
    pub z_scores: Vec<Option<f64>>,
    pub max_abs_z: f64,
    /// Bins whose midpoint grid saw both zero and nonzero density (they cut
    /// the hull boundary, so their exact mass is only approximate).
    pub boundary_bins: Vec<usize>,
    /// Samples outside the bin box.
    pub outside: u64,
}

fn exact(x: f64) -> Result<Rational> {
    Ratio::<BigInt>::from_float(x).ok_or_else(|| Error::Invalid(format!("non-finite coordinate {x}")))
}

/// Exact density integrated over each bin with a `refine`-per-axis midpoint
/// rule, normalized to total mass one. Also returns the boundary bins.
pub fn exact_bin_masses(
    engine: &DhEngine,
    lambda: &Weight,
    spec: &BinSpec,
    refine: usize,
) -> Result<(Vec<f64>, Vec<usize>)> {
    if refine == 0 {
        return Err(Error::Invalid("refine must be positive".into()));
    }
    if spec.dim() != engine.root_system().rank() {
        return Err(Error::DimensionMismatch { expected: engine.root_system().rank(), got: spec.dim() });
    }
    engine.query(lambda.clone(), Weight::zero(spec.dim()))?;
    let dim = spec.dim();
    let per_bin = refine.pow(dim as u32);
    let raw: Vec<(Rational, bool)> = (0..spec.total_bins())
        .into_par_iter()
        .map(|bin| {
            let idx = spec.unravel(bin);
            let mut sum = Rational::zero();
            let (mut zero, mut nonzero) = (false, false);
            for sub in 0..per_bin {
                let mut rest = sub;
                let mut mu = Vec::with_capacity(dim);
                for a in (0..dim).rev() {
                    let t = rest % refine;
                    rest /= refine;
                    let frac = (idx[a] as f64 + (t as f64 + 0.5) / refine as f64) / spec.bins[a] as f64;
                    mu.push(exact(spec.lo[a] + frac * (spec.hi[a] - spec.lo[a]))?);
                }
                mu.reverse();
                let d = engine.density_at(lambda, &mu)?;
                if d.is_zero() {
                    zero = true;
                } else {
                    nonzero = true;
                }
                sum += d;
            }
            Ok((sum, zero && nonzero))
        })
        .collect::<Result<_>>()?;
    let total: Rational = raw.iter().map(|r| r.0.clone()).sum();
    if total.is_zero() {
        return Err(Error::Invalid("the bin box does not meet the support of the density".into()));
    }
    let masses = raw.iter().map(|r| num::to_f64(&(&r.0 / &total))).collect();
    let boundary = raw.iter().enumerate().filter(|(_, r)| r.1).map(|(i, _)| i).collect();
    Ok((masses, boundary))
}

pub fn compare_to_exact(
    empirical: &EmpiricalDensity,
    engine: &DhEngine,
    lambda: &Weight,
    refine: usize,
) -> Result<ComparisonReport> {
    if &empirical.lambda != lambda {
        return Err(Error::Invalid(format!("histogram was sampled for {} not {lambda}", empirical.lambda)));
    }
    if empirical.total() == 0 {
        return Err(Error::Invalid("histogram has no samples inside the box".into()));
    }
    let (masses, boundary_bins) = exact_bin_masses(engine, lambda, &empirical.spec, refine)?;
    compare_to_masses(empirical, &masses, boundary_bins)
}

/// Expected TV distance between an `n`-sample histogram and its bin masses.
pub fn noise_floor(masses: &[f64], n: u64) -> f64 {
    let nf = n as f64;
    0.5 * masses.iter().map(|p| (2.0 * p * (1.0 - p) / (std::f64::consts::PI * nf)).sqrt()).sum::<f64>()
}

/// Comparison against precomputed masses from [`exact_bin_masses`].
pub fn compare_to_masses(empirical: &EmpiricalDensity, masses: &[f64], boundary_bins: Vec<usize>) -> Result<ComparisonReport> {
    if masses.len() != empirical.counts.len() {
        return Err(Error::DimensionMismatch { expected: empirical.counts.len(), got: masses.len() });
    }
    let n = empirical.total();
    if n == 0 {
        return Err(Error::Invalid("histogram has no samples inside the box".into()));
    }
    let freqs = empirical.frequencies();
    let nf = n as f64;
    let tv_distance = 0.5 * freqs.iter().zip(masses).map(|(f, p)| (f - p).abs()).sum::<f64>();
    let noise_floor = noise_floor(masses, n);
    let z_scores: Vec<Option<f64>> = freqs
        .iter()
        .zip(masses)
        .map(|(f, &p)| (p > 0.0 && p < 1.0).then(|| (f - p) / (p * (1.0 - p) / nf).sqrt()))
        .collect();
    let max_abs_z = z_scores.iter().flatten().fold(0.0f64, |m, z| m.max(z.abs()));
    Ok(ComparisonReport {
        samples: n,
        bins: masses.len(),
        tv_distance,
        noise_floor,
        z_scores,
        max_abs_z,
        boundary_bins,
        outside: empirical.outside,
    })
}
