use serde_json::{json, Map, Value};

use super::{Ambient, Monomial, Poly, VarId};
use crate::error::{Error, Result};
use crate::field::KappaRational;

impl Ambient {
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "kappa_cols": self.kappa_cols })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("ambient.n missing or not an integer".into()))?;
        let cols = match v.get("kappa_cols") {
            None | Some(Value::Null) => None,
            Some(c) => Some(c.as_u64().ok_or_else(|| Error::Parse("ambient.kappa_cols not an integer".into()))? as usize),
        };
        Ok(Ambient { n: n as usize, kappa_cols: cols })
    }
}

impl Monomial {
    pub fn to_json(&self) -> Value {
        Value::Object(self.iter().map(|(v, e)| (v.key(), json!(e))).collect::<Map<_, _>>())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("exps must be an object".into()))?;
        let pairs = obj
            .iter()
            .map(|(k, e)| {
                let e = e.as_u64().ok_or_else(|| Error::Parse(format!("exponent of {k} is not a nonnegative integer")))?;
                Ok((VarId::parse(k)?, e as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_pairs(pairs))
    }
}

impl Poly {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms().map(|(m, c)| json!({ "coeff": c.to_json(), "exps": m.to_json() })).collect();
        json!({ "ambient": self.ambient().to_json(), "terms": terms })
    }

    /// Parses the polynomial schema and checks every index against the ambient.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = Ambient::from_json(v.get("ambient").ok_or_else(|| Error::Parse("missing ambient".into()))?)?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing terms array".into()))?;
        let mut p = Poly::zero(ambient);
        for t in terms {
            let c = KappaRational::from_json(t.get("coeff").ok_or_else(|| Error::Parse("term without coeff".into()))?)?;
            let m = Monomial::from_json(t.get("exps").unwrap_or(&json!({})))?;
            for (var, _) in m.iter() {
                check_index(var, ambient)?;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn check_index(v: VarId, a: Ambient) -> Result<()> {
    use super::Family::*;
    let (i, j) = (v.i as usize, v.j as usize);
    let ok = match v.family {
        T | W => i <= a.n && j <= a.n,
        X | Y => i <= a.n && j <= a.kappa_cols.unwrap_or(a.n),
        S => true,
        U1 | U2 | V1 | V2 => i <= a.n && j <= a.n,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(format!("variable {} outside ambient n={}", v.key(), a.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::t;

    #[test]
    fn round_trip() {
        let p = &(&t(3, 1, 2) * &t(3, 2, 3)).scale(&KappaRational::kappa_plus(1)) - &t(3, 3, 3).scale(&KappaRational::from_ratio(1, 3));
        let v = p.to_json();
        assert_eq!(Poly::from_json(&v).unwrap(), p);
        assert_eq!(Poly::from_json_str(&v.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_out_of_range_index() {
        let v = json!({"ambient": {"n": 2, "kappa_cols": null}, "terms": [{"coeff": "1", "exps": {"t_3_1": 1}}]});
        assert!(matches!(Poly::from_json(&v), Err(Error::AmbientMismatch(_))));
    }
}
