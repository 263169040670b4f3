//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_vec(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Parses `p/q` or a plain integer, with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Err(Error::Invalid("empty coordinate list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled quotient when numerator/denominator overflow f64.
        let shift = x.denom().bits().saturating_sub(900) as usize;
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_integral(xs: &[Rational]) -> bool {
    xs.iter().all(|x| x.is_integer())
}

/// Converts integral rationals to `i64`, rejecting fractions and overflow.
pub fn to_i64_vec(xs: &[Rational]) -> Result<Vec<i64>> {
    xs.iter()
        .map(|x| {
            if !x.is_integer() {
                return Err(Error::NonIntegral(fmt_vec(xs)));
            }
            x.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Invalid(format!("coordinate {x} does not fit in 64 bits")))
        })
        .collect()
}

pub fn fmt_vec(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn int_mat_vec(m: &[Vec<i64>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, _)| **a != 0)
                .map(|(&a, b)| b * BigInt::from(a))
                .sum()
        })
        .collect()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), q(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational_list("1,-1/2").unwrap(), vec![q(1), q_frac(-1, 2)]);
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = vec![q_vec(&[2, -1]), q_vec(&[-1, 2])];
        let inv = invert(&c).unwrap();
        assert_eq!(inv[0], vec![q_frac(2, 3), q_frac(1, 3)]);
        assert_eq!(inv[1], vec![q_frac(1, 3), q_frac(2, 3)]);
        assert!(invert(&[q_vec(&[1, 2]), q_vec(&[2, 4])]).is_none());
    }

    #[test]
    fn huge_rationals_still_convert() {
        let big = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(2) << 2000usize);
        assert!((to_f64(&big) - 1.5).abs() < 1e-12);
    }
}
