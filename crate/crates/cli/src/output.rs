use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use orbitdh_core::{num, Rational, Weight};
use serde_json::{json, Value};

pub const SCHEMA: &str = "orbitdh/1";

pub fn rational(x: &Rational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn weight(w: &Weight) -> Value {
    rationals(w.coords())
}

pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn decimal(x: &Rational) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let v = num::to_f64(x);
    let magnitude = v.abs().log10().floor() as i32;
    if !(-6..15).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let places = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.places$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" || (x.is_negative() && s == "0") {
        "0".into()
    } else {
        s
    }
}

/// Exact rational in `p/q` form (plain integer when the denominator is one).
pub fn plain(x: &Rational) -> String {
    x.to_string()
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn envelope(command: &str, type_str: &str, mut fields: Vec<(&str, Value)>, result: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    map.insert("type".into(), type_str.into());
    for (k, v) in fields.drain(..) {
        map.insert(k.into(), v);
    }
    map.insert("result".into(), result);
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitdh_core::num::{q, q_frac};

    #[test]
    fn decimals() {
        assert_eq!(decimal(&q(0)), "0");
        assert_eq!(decimal(&q(1)), "1");
        assert_eq!(decimal(&q_frac(1, 3)), "0.333333333333");
        assert_eq!(decimal(&q_frac(-4, 3)), "-1.33333333333");
        assert_eq!(decimal(&q_frac(1, 8)), "0.125");
        assert_eq!(decimal(&q(123456)), "123456");
    }

    #[test]
    fn rational_json() {
        assert_eq!(rational(&q_frac(-2, 4)), json!({"num": "-1", "den": "2"}));
    }
}
