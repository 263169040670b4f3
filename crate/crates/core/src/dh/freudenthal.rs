//! Freudenthal's recursion, used as an oracle independent of partition
//! functions:
//!
//! ```text
//! ((lambda+delta)^2 - (mu+delta)^2) m(mu) = 2 sum_{a>0} sum_{j>=1} m(mu + j a) (mu + j a, a)
//! ```

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{self, Rational};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::WeylGroup;

fn inner_int(rs: &RootSystem, x: &[i64], y: &[i64]) -> Rational {
    let g = rs.weight_form();
    let mut acc = Rational::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                acc += &g[i][j] * BigInt::from(xi * yj);
            }
        }
    }
    acc
}

fn dominant_integral(lambda: &Weight) -> Result<Vec<i64>> {
    let l = lambda.to_ints()?;
    if l.iter().any(|&c| c < 0) {
        return Err(Error::Hypothesis(format!("lambda = {lambda} must be dominant")));
    }
    Ok(l)
}

/// Multiplicities of the dominant weights of the irreducible representation
/// with highest weight `lambda` (integral, dominant). Weights with
/// multiplicity zero are omitted.
pub fn freudenthal_table(rs: &RootSystem, lambda: &Weight) -> Result<HashMap<Vec<i64>, BigUint>> {
    rs.check_weight(lambda)?;
    let l = dominant_integral(lambda)?;
    let r = rs.rank();
    let root_coords = rs.to_root_coords(lambda)?;
    let bound: Vec<i64> = root_coords
        .coords()
        .iter()
        .map(|c| c.floor().to_integer().to_i64().expect("small weights"))
        .collect();

    // dominant mu = lambda - sum k_i alpha_i, keyed by depth sum(k)
    let mut candidates: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut k = vec![0i64; r];
    loop {
        let mu: Vec<i64> = (0..r)
            .map(|i| l[i] - (0..r).map(|j| rs.cartan_matrix()[i][j] * k[j]).sum::<i64>())
            .collect();
        if mu.iter().all(|&c| c >= 0) {
            candidates.push((k.clone(), mu));
        }
        let mut i = 0;
        while i < r {
            if k[i] < bound[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    candidates.sort_by_key(|(k, _)| k.iter().sum::<i64>());

    let delta: Vec<i64> = vec![1; r];
    let shift = |x: &[i64]| -> Vec<i64> { x.iter().zip(&delta).map(|(a, b)| a + b).collect() };
    let top = inner_int(rs, &shift(&l), &shift(&l));

    let mut mult: HashMap<Vec<i64>, BigUint> = HashMap::new();
    for (k, mu) in candidates {
        if k.iter().all(|&c| c == 0) {
            mult.insert(mu, BigUint::one());
            continue;
        }
        let mut sum = Rational::zero();
        for (alpha_w, alpha_r) in rs.positive_roots_weight().iter().zip(rs.positive_roots()) {
            let mut j = 1;
            // mu + j alpha stays below lambda only while k - j alpha_r >= 0
            while k.iter().zip(alpha_r).all(|(&ki, &ai)| ki - j * ai >= 0) {
                let nu: Vec<i64> = mu.iter().zip(alpha_w).map(|(m, a)| m + j * a).collect();
                let dom = WeylGroup::dominant_representative(rs, &nu);
                if let Some(m) = mult.get(&dom) {
                    sum += inner_int(rs, &nu, alpha_w) * BigInt::from(m.clone());
                }
                j += 1;
            }
        }
        let denom = &top - inner_int(rs, &shift(&mu), &shift(&mu));
        if !denom.is_positive() {
            return Err(Error::Internal(format!("Freudenthal denominator {denom} at {mu:?}")));
        }
        let m = sum * num::q(2) / denom;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::Internal(format!("Freudenthal produced {m} at {mu:?}")));
        }
        let m = m.to_integer().magnitude().clone();
        if !m.is_zero() {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

/// Multiplicity of `mu` in the irreducible representation of highest weight
/// `lambda`; zero for non-integral `mu` and outside the support.
pub fn freudenthal_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<BigUint> {
    rs.check_weight(mu)?;
    let table = freudenthal_table(rs, lambda)?;
    if !mu.is_integral() {
        return Ok(BigUint::zero());
    }
    let dom = WeylGroup::dominant_representative(rs, &mu.to_ints()?);
    Ok(table.get(&dom).cloned().unwrap_or_default())
}

/// Every weight with nonzero multiplicity, with its multiplicity.
pub fn weight_support(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Vec<i64>, BigUint>> {
    let table = freudenthal_table(rs, lambda)?;
    let wg = WeylGroup::generate(rs);
    let mut out = BTreeMap::new();
    for (mu, m) in table {
        for w in wg.elements() {
            out.insert(w.act_int(&mu), m.clone());
        }
    }
    Ok(out)
}

/// Weyl's dimension formula: `prod_{a>0} <lambda+delta, H_a> / <delta, H_a>`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    rs.check_weight(lambda)?;
    let shifted = lambda + &rs.delta();
    let mut value = Rational::one();
    for i in 0..rs.n() {
        value *= rs.pair(&shifted, i)? / rs.pair(&rs.delta(), i)?;
    }
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Invalid(format!("lambda = {lambda} is not an integral dominant weight")));
    }
    Ok(value.to_integer().magnitude().clone())
}
