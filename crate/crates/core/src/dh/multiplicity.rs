use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::{DhEngine, DhQuery};
use crate::error::{Error, Result};
use crate::kostant::PartitionTable;
use crate::rootsys::Weight;

impl DhEngine {
    /// Partition-function arguments `w.(lambda + delta) - (mu + delta)` in
    /// simple-root coordinates, or `None` when `lambda - mu` is not in the
    /// root lattice (every term then vanishes).
    pub(crate) fn multiplicity_arguments(&self, lambda: &Weight, mu: &Weight) -> Result<Option<Vec<(i8, Vec<i64>)>>> {
        if !lambda.is_integral() || !mu.is_integral() {
            return Err(Error::NonIntegral(format!("lambda = {lambda}, mu = {mu}")));
        }
        let delta = self.rs.delta();
        let shifted_lambda = lambda + &delta;
        let shifted_mu = mu + &delta;
        let mut args = Vec::with_capacity(self.weyl.order());
        for w in self.weyl.elements() {
            let x = self.rs.to_root_coords(&(&w.act(&shifted_lambda)? - &shifted_mu))?;
            if !x.is_integral() {
                return Ok(None);
            }
            args.push((w.sign(), x.to_ints()?));
        }
        Ok(Some(args))
    }

    /// Box bound covering every partition-function argument of the query
    /// (the identity term dominates all others coordinate-wise).
    pub(crate) fn multiplicity_bound(&self, lambda: &Weight, mu: &Weight) -> Result<Vec<i64>> {
        let x = self.rs.to_root_coords(&(lambda - mu))?;
        Ok(x.coords()
            .iter()
            .map(|c| num_traits::ToPrimitive::to_i64(&c.floor().to_integer()).unwrap_or(i64::MAX).max(0))
            .collect())
    }

    /// Weight multiplicity via the alternating sum of partition counts.
    ///
    /// Valid for every integral `mu`; weights outside the support give 0.
    pub fn multiplicity(&self, q: &DhQuery) -> Result<BigUint> {
        self.weight_multiplicity(q.lambda(), q.mu())
    }

    /// Same as [`Self::multiplicity`], reusing a table that must cover the
    /// bound of the query.
    pub fn multiplicity_with_table(&self, q: &DhQuery, table: &PartitionTable) -> Result<BigUint> {
        self.weight_multiplicity_with_table(q.lambda(), q.mu(), table)
    }

    /// Multiplicity for any dominant integral `lambda`, including weights on
    /// the chamber walls.
    pub fn weight_multiplicity(&self, lambda: &Weight, mu: &Weight) -> Result<BigUint> {
        self.check_highest_weight(lambda, mu)?;
        if self.multiplicity_arguments(lambda, mu)?.is_none() {
            return Ok(BigUint::zero());
        }
        let table = PartitionTable::new(&self.rs, &self.multiplicity_bound(lambda, mu)?)?;
        self.weight_multiplicity_with_table(lambda, mu, &table)
    }

    /// A partition table large enough for every weight of the representation
    /// with highest weight `lambda`.
    pub fn multiplicity_table(&self, lambda: &Weight) -> Result<PartitionTable> {
        self.check_highest_weight(lambda, lambda)?;
        let lowest = self.weyl.longest().act(lambda)?;
        PartitionTable::new(&self.rs, &self.multiplicity_bound(lambda, &lowest)?)
    }

    pub fn weight_multiplicity_with_table(&self, lambda: &Weight, mu: &Weight, table: &PartitionTable) -> Result<BigUint> {
        self.check_highest_weight(lambda, mu)?;
        let Some(args) = self.multiplicity_arguments(lambda, mu)? else {
            return Ok(BigUint::zero());
        };
        let mut total = BigInt::zero();
        for (sign, x) in args {
            if !table.covers(&x) {
                return Err(Error::Internal(format!("partition table does not cover {x:?}")));
            }
            let p = BigInt::from(table.get(&x)?);
            if sign > 0 {
                total += p;
            } else {
                total -= p;
            }
        }
        if total.is_negative() {
            return Err(Error::Internal(format!("negative multiplicity {total} at mu = {mu} for lambda = {lambda}")));
        }
        Ok(total.magnitude().clone())
    }

    fn check_highest_weight(&self, lambda: &Weight, mu: &Weight) -> Result<()> {
        self.rs.check_weight(lambda)?;
        self.rs.check_weight(mu)?;
        if !lambda.is_dominant() {
            return Err(Error::Hypothesis(format!("highest weight {lambda} must be dominant")));
        }
        Ok(())
    }
}
