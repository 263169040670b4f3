//! The Kostant partition function of the positive roots.
//!
//! `p(x)` counts the ways of writing a root-lattice vector `x` as a
//! nonnegative integer combination of positive roots. Values are computed by
//! dynamic programming over a box `0 <= y <= bound`: the roots are added one
//! at a time, each pass convolving the table with the geometric series along
//! that root's direction. One table answers every query inside its box.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootVector};

#[derive(Debug, Clone)]
pub struct PartitionTable {
    bound: Vec<i64>,
    strides: Vec<usize>,
    values: Vec<BigUint>,
}

impl PartitionTable {
    /// Tabulates `p` on the box `0 <= y <= bound` (coordinate-wise).
    pub fn new(rs: &RootSystem, bound: &[i64]) -> Result<Self> {
        Self::for_vectors(rs.positive_roots(), rs.rank(), bound)
    }

    /// Same, for an arbitrary list of nonzero vectors with nonnegative coordinates.
    pub fn for_vectors(vectors: &[Vec<i64>], dim: usize, bound: &[i64]) -> Result<Self> {
        if bound.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: bound.len() });
        }
        let bound: Vec<i64> = bound.iter().map(|&b| b.max(0)).collect();
        let mut strides = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bound[i + 1] as usize + 1);
        }
        let size = if dim == 0 { 1 } else { strides[0] * (bound[0] as usize + 1) };
        let mut values = vec![BigUint::zero(); size];
        values[0] = BigUint::one();

        for v in vectors {
            if v.iter().any(|&c| c < 0) || v.iter().all(|&c| c == 0) {
                return Err(Error::Invalid(format!("vector {v:?} is not in an open half space")));
            }
            if v.iter().zip(&bound).any(|(c, b)| c > b) {
                continue;
            }
            let offset: usize = v.iter().zip(&strides).map(|(&c, &s)| c as usize * s).sum();
            // visiting indices in increasing order gives unbounded multiplicity
            let mut y = vec![0i64; dim];
            for idx in 0..size {
                if idx > 0 {
                    increment(&mut y, &bound);
                }
                if y.iter().zip(v).all(|(a, b)| a >= b) {
                    let (lo, hi) = values.split_at_mut(idx);
                    hi[0] += &lo[idx - offset];
                }
            }
        }
        Ok(Self { bound, strides, values })
    }

    pub fn bound(&self) -> &[i64] {
        &self.bound
    }

    /// Whether `x` lies in the tabulated box or has a negative coordinate.
    pub fn covers(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.bound).all(|(a, b)| a <= b) || x.iter().any(|&a| a < 0)
    }

    pub fn get(&self, x: &[i64]) -> Result<BigUint> {
        if x.len() != self.bound.len() {
            return Err(Error::DimensionMismatch { expected: self.bound.len(), got: x.len() });
        }
        if x.iter().any(|&a| a < 0) {
            return Ok(BigUint::zero());
        }
        if x.iter().zip(&self.bound).any(|(a, b)| a > b) {
            return Err(Error::Invalid(format!("{x:?} outside tabulated box {:?}", self.bound)));
        }
        let idx: usize = x.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum();
        Ok(self.values[idx].clone())
    }
}

fn increment(y: &mut [i64], bound: &[i64]) {
    for i in (0..y.len()).rev() {
        if y[i] < bound[i] {
            y[i] += 1;
            return;
        }
        y[i] = 0;
    }
}

/// Exact number of nonnegative integer solutions of `sum_alpha x_alpha alpha = x`.
pub fn partition_count(rs: &RootSystem, x: &RootVector) -> Result<BigUint> {
    rs.check_root_vector(x)?;
    let xi = x.to_ints()?;
    if xi.iter().any(|&c| c < 0) {
        return Ok(BigUint::zero());
    }
    PartitionTable::new(rs, &xi)?.get(&xi)
}
