//! Pfaffian of the symplectic form at the fixed point `w.lambda`, restricted
//! to the real root planes: the product over positive roots of
//! `2 <lambda, w^{-1}.H_a>`. Its sign must be `(-1)^w` whenever lambda is
//! strongly dominant.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{WeylElement, WeylGroup};

/// `w^{-1}.H` in simple-coroot coordinates. Pairings satisfy
/// `<lambda, w^{-1}.H> = <w.lambda, H>`, so the coroot action is the
/// transpose of the weight action.
fn inverse_action_on_coroot(w: &WeylElement, coroot: &[i64]) -> Vec<i64> {
    let m = w.action();
    (0..coroot.len()).map(|i| (0..coroot.len()).map(|j| m[j][i] * coroot[j]).sum()).collect()
}

/// The Pfaffian value; errors if a factor vanishes (lambda on a wall).
pub fn pfaffian(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Result<Rational> {
    rs.check_weight(lambda)?;
    let coroots: HashMap<&[i64], usize> =
        rs.positive_coroots().iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut product = Rational::one();
    for h in rs.positive_coroots() {
        let image = inverse_action_on_coroot(w, h);
        let negated: Vec<i64> = image.iter().map(|x| -x).collect();
        if !coroots.contains_key(image.as_slice()) && !coroots.contains_key(negated.as_slice()) {
            return Err(Error::Internal(format!("{image:?} is not a signed coroot")));
        }
        let factor: Rational = lambda
            .coords()
            .iter()
            .zip(&image)
            .map(|(x, &c)| x * BigInt::from(c))
            .sum::<Rational>()
            * num::q(2);
        if factor.is_zero() {
            return Err(Error::OnWall(format!(
                "lambda = {lambda} pairs to zero with a coroot; the orbit is not regular"
            )));
        }
        product *= factor;
    }
    Ok(product)
}

pub fn pfaffian_sign(rs: &RootSystem, _wg: &WeylGroup, w: &WeylElement, lambda: &Weight) -> Result<i8> {
    if !lambda.is_strongly_dominant() {
        // distinguish walls from regular but non-dominant weights
        pfaffian(rs, w, lambda)?;
        return Err(Error::Hypothesis(format!("lambda = {lambda} must be strongly dominant")));
    }
    let p = pfaffian(rs, w, lambda)?;
    Ok(if p.is_positive() { 1 } else { -1 })
}
