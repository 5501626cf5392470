//! `{"num": ["c0", "c1", ...], "den": [...]}` with every coefficient written
//! as `"p/q"` and the array index equal to the power of κ.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{KappaPoly, KappaRational};
use crate::error::{Error, Result};

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn poly_to_json(p: &KappaPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(rational_to_string(c))).collect())
}

fn poly_from_json(v: &Value) -> Result<KappaPoly> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected coefficient array".into()))?;
    let coeffs = arr
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(Error::Parse(format!("bad coefficient {c}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KappaPoly::from_coeffs(coeffs))
}

impl KappaRational {
    pub fn to_json(&self) -> Value {
        json!({ "num": poly_to_json(self.numer()), "den": poly_to_json(self.denom()) })
    }

    /// Accepts the object form, or a bare `"p/q"` string / integer for constants.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let num = poly_from_json(map.get("num").ok_or_else(|| Error::Parse("missing num".into()))?)?;
                let den = match map.get("den") {
                    Some(d) => poly_from_json(d)?,
                    None => KappaPoly::one(),
                };
                KappaRational::new(num, den).map_err(|_| Error::Parse("zero denominator".into()))
            }
            Value::String(s) => Ok(KappaRational::from_rational(parse_rational(s)?)),
            Value::Number(n) => Ok(KappaRational::from_rational(parse_rational(&n.to_string())?)),
            _ => Err(Error::Parse(format!("cannot read a rational function from {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_shape() {
        let f = KappaRational::new(KappaPoly::from_i64s(&[0, 1]), KappaPoly::from_i64s(&[-2, 1])).unwrap();
        let v = f.to_json();
        assert_eq!(v, json!({"num": ["0/1", "1/1"], "den": ["-2/1", "1/1"]}));
        assert_eq!(KappaRational::from_json(&v).unwrap(), f);
    }

    #[test]
    fn short_forms() {
        assert_eq!(KappaRational::from_json(&json!("3/6")).unwrap(), KappaRational::from_ratio(1, 2));
        assert_eq!(KappaRational::from_json(&json!(4)).unwrap(), KappaRational::from_int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
