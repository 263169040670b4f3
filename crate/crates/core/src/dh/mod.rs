//! Alternating Weyl sums over fiber volumes and partition counts.
//!
//! For a strongly dominant `lambda` the DH density of the orbit through
//! `lambda` at `mu` is
//!
//! ```text
//! rho(mu) = sum_w sign(w) * P(w.lambda - mu)
//! ```
//!
//! with `P` the asymptotic partition function, and the weight multiplicity is
//!
//! ```text
//! m(mu) = sum_w sign(w) * p(w.(lambda + delta) - (mu + delta))
//! ```
//!
//! with `p` the partition function. Both arguments are converted to
//! simple-root coordinates before evaluation.

mod convergence;
mod density;
mod freudenthal;
mod multiplicity;
mod pfaffian;

pub use convergence::{ConvergenceRow, ConvergenceTable};
pub use density::HullPosition;
pub use freudenthal::{freudenthal_multiplicity, freudenthal_table, weight_support, weyl_dimension};
pub use pfaffian::{pfaffian, pfaffian_sign};

use crate::error::{Error, Result};
use crate::polytope::FiberGeometry;
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::WeylGroup;

/// Root system, Weyl group and fiber geometry bundled for repeated queries.
#[derive(Debug)]
pub struct DhEngine {
    rs: RootSystem,
    weyl: WeylGroup,
    geometry: FiberGeometry,
}

impl DhEngine {
    pub fn new(rs: RootSystem) -> Self {
        let weyl = WeylGroup::generate(&rs);
        let geometry = FiberGeometry::new(&rs);
        Self { rs, weyl, geometry }
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::from_type_str(s)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn geometry(&self) -> &FiberGeometry {
        &self.geometry
    }

    pub fn query(&self, lambda: Weight, mu: Weight) -> Result<DhQuery> {
        DhQuery::new(&self.rs, lambda, mu)
    }
}

/// A point `mu` in the moment-map image of the orbit through `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhQuery {
    lambda: Weight,
    mu: Weight,
}

impl DhQuery {
    /// Rejects `lambda` unless every fundamental coordinate is positive: the
    /// alternating-sum formula is only valid for regular orbits through the
    /// open dominant chamber.
    pub fn new(rs: &RootSystem, lambda: Weight, mu: Weight) -> Result<Self> {
        rs.check_weight(&lambda)?;
        rs.check_weight(&mu)?;
        if !lambda.is_strongly_dominant() {
            return Err(Error::Hypothesis(format!(
                "lambda = {lambda} must be strongly dominant (all fundamental coordinates > 0)"
            )));
        }
        Ok(Self { lambda, mu })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    pub fn is_integral(&self) -> bool {
        self.lambda.is_integral() && self.mu.is_integral()
    }
}
