//! Scaled multiplicities `m(k lambda, k mu) / k^s` against the density.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{DhEngine, DhQuery, HullPosition};
use crate::error::{Error, Result};
use crate::kostant::PartitionTable;
use crate::num::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub k: u64,
    pub multiplicity: BigUint,
    /// `multiplicity / k^s`
    pub scaled: Rational,
    pub density: Rational,
    pub abs_error: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub s: usize,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(abs_error)` against `ln(k)` over rows with
    /// nonzero error; `None` with fewer than two such rows.
    pub fitted_slope: Option<f64>,
    /// `mu` lies on a wall of the chamber complex; reported, not asserted.
    pub on_wall: bool,
}

impl ConvergenceTable {
    /// `abs_error / density` of the last row.
    pub fn final_relative_error(&self) -> Option<f64> {
        let last = self.rows.last()?;
        if last.density.is_zero() {
            return None;
        }
        Some(num::to_f64(&(&last.abs_error / &last.density)))
    }

    /// Whether `abs_error` never increases from one row to the next.
    pub fn errors_nonincreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].abs_error <= w[0].abs_error)
    }
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

impl DhEngine {
    /// Tabulates `m(k lambda, k mu) / k^s` for the given dilations.
    ///
    /// Requires a root system without A1 factors (the lattice-point estimate
    /// behind the `O(1/k)` rate needs every positive root to be redundant for
    /// the rank), integral weights, and `mu` a weight of the representation
    /// strictly inside the hull of the Weyl orbit of `lambda`. Each `k mu`
    /// must be a weight of the representation with highest weight `k lambda`.
    pub fn convergence_series(&self, q: &DhQuery, k_values: &[u64]) -> Result<ConvergenceTable> {
        if self.rs.has_su2_factor() {
            return Err(Error::Hypothesis(
                "the convergence series requires a root system without A1 (su2) factors: \
                 the partition-function estimate needs rank(A - {a}) = rank(A) for every positive root a"
                    .into(),
            ));
        }
        if !q.is_integral() {
            return Err(Error::NonIntegral(format!("lambda = {}, mu = {}", q.lambda(), q.mu())));
        }
        if k_values.is_empty() || k_values[0] == 0 || k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("k values must be positive and strictly increasing".into()));
        }
        let diff = self.rs.to_root_coords(&(q.lambda() - q.mu()))?;
        if let Some(k) = k_values.iter().find(|&&k| !diff.scale(&num::q(k as i64)).is_integral()) {
            return Err(Error::Hypothesis(format!(
                "k mu = {} is not a weight of the representation with highest weight {} at k = {k}: \
                 k (lambda - mu) is not in the root lattice",
                q.mu().scale(&num::q(*k as i64)),
                q.lambda().scale(&num::q(*k as i64))
            )));
        }
        match self.hull_position(q.lambda(), q.mu())? {
            HullPosition::Exterior => {
                return Err(Error::Hypothesis(format!(
                    "mu = {} lies outside the convex hull of the Weyl orbit of {}",
                    q.mu(),
                    q.lambda()
                )))
            }
            HullPosition::Boundary => {
                return Err(Error::Hypothesis(format!(
                    "mu = {} lies on the boundary of the Weyl-orbit hull of {}; \
                     the density is discontinuous there",
                    q.mu(),
                    q.lambda()
                )))
            }
            HullPosition::Interior => {}
        }

        let s = self.rs.s();
        let density = self.dh_density(q)?;
        let on_wall = self.on_wall(q)?;
        let k_max = *k_values.last().unwrap();
        let top = self.query(q.lambda().scale(&num::q(k_max as i64)), q.mu().scale(&num::q(k_max as i64)))?;
        let table = PartitionTable::new(&self.rs, &self.multiplicity_bound(top.lambda(), top.mu())?)?;

        let rows = k_values
            .par_iter()
            .map(|&k| {
                let kq = num::q(k as i64);
                let scaled_query = self.query(q.lambda().scale(&kq), q.mu().scale(&kq))?;
                let multiplicity = self.multiplicity_with_table(&scaled_query, &table)?;
                let scaled = Rational::new(BigInt::from(multiplicity.clone()), BigInt::from(k).pow(s as u32));
                let abs_error = (&scaled - &density).abs();
                Ok(ConvergenceRow { k, multiplicity, scaled, density: density.clone(), abs_error })
            })
            .collect::<Result<Vec<_>>>()?;

        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| !r.abs_error.is_zero())
            .map(|r| ((r.k as f64).ln(), num::to_f64(&r.abs_error).ln()))
            .collect();
        Ok(ConvergenceTable { s, rows, fitted_slope: least_squares_slope(&points), on_wall })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Weight;

    fn engine(t: &str) -> DhEngine {
        DhEngine::from_type_str(t).unwrap()
    }

    #[test]
    fn a2_delta_at_zero() {
        // m(k delta, 0) = k + 1 for SU(3), so the error is exactly 1/k
        let e = engine("A2");
        let q = e.query(Weight::from_ints(&[1, 1]), Weight::zero(2)).unwrap();
        let ks: Vec<u64> = (1..=32).collect();
        let t = e.convergence_series(&q, &ks).unwrap();
        for row in &t.rows {
            assert_eq!(row.multiplicity, BigUint::from(row.k + 1));
            assert_eq!(row.abs_error, Rational::new(1.into(), (row.k as i64).into()));
            assert_eq!(row.density, num::q(1));
        }
        let slope = t.fitted_slope.unwrap();
        assert!((slope + 1.0).abs() < 1e-9);
        assert!(t.on_wall);
    }

    #[test]
    fn a2_reference_pairs() {
        let e = engine("A2");
        // the last pair is only in the root lattice for k divisible by 3
        let cases: [([i64; 2], [i64; 2], Vec<u64>, Rational); 3] = [
            ([1, 1], [0, 0], (1..=64).collect(), num::q(1)),
            ([2, 1], [1, 0], (1..=64).collect(), num::q(1)),
            ([3, 2], [1, 1], (1..=21).map(|k| 3 * k).collect(), num::q_frac(4, 3)),
        ];
        for (lambda, mu, ks, rho) in cases {
            let q = e.query(Weight::from_ints(&lambda), Weight::from_ints(&mu)).unwrap();
            let t = e.convergence_series(&q, &ks).unwrap();
            assert!(t.errors_nonincreasing());
            assert!(t.final_relative_error().unwrap() < 0.05);
            assert!((t.fitted_slope.unwrap() + 1.0).abs() < 1e-9);
            assert_eq!(t.rows[0].density, rho);
        }
    }

    #[test]
    fn single_row_table() {
        let e = engine("A2");
        let q = e.query(Weight::from_ints(&[2, 1]), Weight::from_ints(&[1, 0])).unwrap();
        let t = e.convergence_series(&q, &[1]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.fitted_slope.is_none());
    }

    #[test]
    fn rejections() {
        let a1 = engine("A1");
        let q = a1.query(Weight::from_ints(&[3]), Weight::from_ints(&[1])).unwrap();
        assert!(matches!(a1.convergence_series(&q, &[1, 2]), Err(Error::Hypothesis(m)) if m.contains("A1")));

        let e = engine("A2");
        let vertex = e.query(Weight::from_ints(&[2, 1]), Weight::from_ints(&[2, 1])).unwrap();
        assert!(matches!(e.convergence_series(&vertex, &[2, 4, 8, 16]), Err(Error::Hypothesis(m)) if m.contains("boundary")));
        let wrong_class = e.query(Weight::from_ints(&[3, 2]), Weight::from_ints(&[1, 1])).unwrap();
        assert!(matches!(e.convergence_series(&wrong_class, &[1, 2]), Err(Error::Hypothesis(_))));
        assert!(matches!(e.convergence_series(&wrong_class, &[3, 5]), Err(Error::Hypothesis(m)) if m.contains("k = 5")));
        assert!(e.convergence_series(&wrong_class, &[3, 6]).is_ok());
        let q = e.query(Weight::from_ints(&[1, 1]), Weight::zero(2)).unwrap();
        assert!(e.convergence_series(&q, &[2, 2]).is_err());
        assert!(e.convergence_series(&q, &[]).is_err());
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (1..10).map(|k| ((k as f64).ln(), -2.0 * (k as f64).ln() + 3.0)).collect();
        assert!((least_squares_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert!(least_squares_slope(&pts[..1]).is_none());
    }
}
