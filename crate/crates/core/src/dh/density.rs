use num_traits::{Signed, Zero};

use super::{DhEngine, DhQuery};
use crate::error::{Error, Result};
use crate::num::Rational;
use crate::rootsys::{RootVector, Weight};
use crate::weyl::WeylGroup;

/// Where a point sits relative to the convex hull of the Weyl orbit of lambda.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullPosition {
    Interior,
    Boundary,
    Exterior,
}

impl DhEngine {
    /// `w.lambda - mu` in simple-root coordinates, for every Weyl element.
    fn density_arguments(&self, lambda: &Weight, mu: &Weight) -> Result<Vec<(i8, RootVector)>> {
        self.weyl
            .elements()
            .iter()
            .map(|w| {
                let x = &w.act(lambda)? - mu;
                Ok((w.sign(), self.rs.to_root_coords(&x)?))
            })
            .collect()
    }

    /// The DH density at `mu` of the orbit through `lambda`, normalized by the
    /// kernel lattice of the positive-root map.
    pub fn dh_density(&self, q: &DhQuery) -> Result<Rational> {
        let mut total = Rational::zero();
        for (sign, x) in self.density_arguments(q.lambda(), q.mu())? {
            let vol = self.geometry.volume(&x)?;
            if sign > 0 {
                total += vol;
            } else {
                total -= vol;
            }
        }
        if total.is_negative() {
            return Err(Error::Internal(format!(
                "negative density {total} at mu = {} for lambda = {}",
                q.mu(),
                q.lambda()
            )));
        }
        Ok(total)
    }

    /// Whether `mu` lies on a wall of the chamber complex: some feasible
    /// argument `w.lambda - mu` is in the cone of a lower-rank set of roots,
    /// so that the corresponding fiber volume is not smooth there.
    pub fn on_wall(&self, q: &DhQuery) -> Result<bool> {
        for (_, x) in self.density_arguments(q.lambda(), q.mu())? {
            if self.geometry.is_degenerate(&x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Position of `mu` relative to the convex hull of `W.lambda`.
    ///
    /// A dominant point lies in the hull iff `lambda - mu` has nonnegative
    /// simple-root coordinates, and on its boundary iff one of them vanishes.
    pub fn hull_position(&self, lambda: &Weight, mu: &Weight) -> Result<HullPosition> {
        self.rs.check_weight(lambda)?;
        self.rs.check_weight(mu)?;
        let dominant = WeylGroup::dominant_representative_q(&self.rs, mu);
        let diff = self.rs.to_root_coords(&(lambda - &dominant))?;
        let coords = diff.coords();
        Ok(if coords.iter().any(|c| c.is_negative()) {
            HullPosition::Exterior
        } else if coords.iter().any(|c| c.is_zero()) {
            HullPosition::Boundary
        } else {
            HullPosition::Interior
        })
    }

    /// Bounding box of the Weyl orbit of `lambda`, per fundamental coordinate.
    pub fn orbit_bounding_box(&self, lambda: &Weight) -> Result<Vec<(Rational, Rational)>> {
        self.rs.check_weight(lambda)?;
        let images: Vec<Weight> =
            self.weyl.elements().iter().map(|w| w.act(lambda)).collect::<Result<_>>()?;
        Ok((0..self.rs.rank())
            .map(|i| {
                let lo = images.iter().map(|x| x.coords()[i].clone()).min().unwrap();
                let hi = images.iter().map(|x| x.coords()[i].clone()).max().unwrap();
                (lo, hi)
            })
            .collect())
    }

    /// Density with `lambda`, `mu` given as rational coordinate slices.
    pub fn density_at(&self, lambda: &Weight, mu: &[Rational]) -> Result<Rational> {
        let q = DhQuery::new(&self.rs, lambda.clone(), Weight::new(mu.to_vec()))?;
        self.dh_density(&q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{self, q, q_frac};

    fn engine(t: &str) -> DhEngine {
        DhEngine::from_type_str(t).unwrap()
    }

    fn density(e: &DhEngine, lambda: &[i64], mu: &[Rational]) -> Rational {
        e.density_at(&Weight::from_ints(lambda), mu).unwrap()
    }

    #[test]
    fn a2_examples() {
        let e = engine("A2");
        assert_eq!(density(&e, &[1, 1], &num::q_vec(&[0, 0])), q(1));
        assert_eq!(density(&e, &[1, 1], &num::q_vec(&[2, 2])), q(0));
    }

    #[test]
    fn su2_is_flat() {
        let e = engine("A1");
        assert_eq!(density(&e, &[2], &num::q_vec(&[1])), q(1));
        assert_eq!(density(&e, &[2], &num::q_vec(&[3])), q(0));
        assert_eq!(density(&e, &[2], &[q_frac(-3, 2)]), q(1));
        assert_eq!(density(&e, &[2], &num::q_vec(&[-3])), q(0));
    }

    #[test]
    fn rejects_non_dominant_lambda() {
        let e = engine("A2");
        for lambda in [[0, 1], [1, -1], [0, 0]] {
            let err = e.query(Weight::from_ints(&lambda), Weight::zero(2)).unwrap_err();
            assert!(matches!(err, Error::Hypothesis(_)));
        }
        assert!(matches!(
            e.query(Weight::from_ints(&[1, 1, 1]), Weight::zero(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn a2_density_is_continuous_piecewise_linear() {
        // For SU(3) the density is min-like and continuous; along the segment
        // from 0 to lambda it decreases linearly to 0 at the vertex.
        let e = engine("A2");
        let lambda = [3, 3];
        let vals: Vec<Rational> = (0..=6)
            .map(|t| density(&e, &lambda, &[q_frac(t, 2), q_frac(t, 2)]))
            .collect();
        assert_eq!(vals[6], q(0));
        for w in vals.windows(3) {
            assert_eq!(&w[0] - &w[1], &w[1] - &w[2]);
        }
    }

    #[test]
    fn hull_positions() {
        let e = engine("A2");
        let lambda = Weight::from_ints(&[2, 1]);
        assert_eq!(e.hull_position(&lambda, &Weight::from_ints(&[1, 0])).unwrap(), HullPosition::Interior);
        assert_eq!(e.hull_position(&lambda, &Weight::from_ints(&[2, 1])).unwrap(), HullPosition::Boundary);
        assert_eq!(e.hull_position(&lambda, &Weight::from_ints(&[-1, -2])).unwrap(), HullPosition::Boundary);
        assert_eq!(e.hull_position(&lambda, &Weight::from_ints(&[4, 2])).unwrap(), HullPosition::Exterior);
    }

    #[test]
    fn walls() {
        let e = engine("A2");
        let on = e.query(Weight::from_ints(&[1, 1]), Weight::zero(2)).unwrap();
        assert!(e.on_wall(&on).unwrap());
        let off = e.query(Weight::from_ints(&[2, 1]), Weight::new(vec![q_frac(1, 3), q_frac(1, 7)])).unwrap();
        assert!(!e.on_wall(&off).unwrap());
    }

    #[test]
    fn bounding_box_of_a2_orbit() {
        let e = engine("A2");
        let bb = e.orbit_bounding_box(&Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(bb, vec![(q(-2), q(2)), (q(-2), q(2))]);
    }
}
