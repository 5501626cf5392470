use std::fmt;

use smallvec::SmallVec;

use super::{Family, VarId};

/// Sorted list of `(variable, exponent)` with every exponent positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(VarId, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds from arbitrary pairs; repeated variables are merged, zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut v: SmallVec<[(VarId, u32); 6]> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: SmallVec<[(VarId, u32); 6]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Weighted degree in S with `deg s_a = a`; other families weigh 0.
    pub fn s_weight(&self) -> u32 {
        self.0.iter().filter(|(v, _)| v.family == Family::S).map(|&(v, e)| v.i as u32 * e).sum()
    }

    pub fn family_degree(&self, fam: Family) -> u32 {
        self.0.iter().filter(|(v, _)| v.family == fam).map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.binary_search_by_key(&v, |&(x, _)| x).map(|k| self.0[k].1).unwrap_or(0)
    }

    pub fn only_family(&self, fam: Family) -> bool {
        self.0.iter().all(|(v, _)| v.family == fam)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(v, e) in other.0.iter() {
            let k = out.binary_search_by_key(&v, |&(x, _)| x).ok()?;
            if out[k].1 < e {
                return None;
            }
            out[k].1 -= e;
        }
        out.retain(|(_, e)| *e > 0);
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// Lowers the exponent of `v` by one, returning the old exponent.
    pub fn lower(&self, v: VarId) -> Option<(u32, Monomial)> {
        let k = self.0.binary_search_by_key(&v, |&(x, _)| x).ok()?;
        let e = self.0[k].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Splits into the part in `fam` and the rest.
    pub fn split_family(&self, fam: Family) -> (Monomial, Monomial) {
        let (a, b): (SmallVec<_>, SmallVec<_>) = self.0.iter().copied().partition(|(v, _)| v.family == fam);
        (Monomial(a), Monomial(b))
    }

    /// `∏ e!` over the exponents.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0.iter().map(|&(_, e)| crate::field::factorial(e)).product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_merges_and_div_inverts() {
        let a = Monomial::from_pairs([(VarId::t(1, 2), 2), (VarId::t(2, 1), 1)]);
        let b = Monomial::from_pairs([(VarId::t(2, 1), 1), (VarId::s(1), 3)]);
        let ab = a.mul(&b);
        assert_eq!(ab.exponent(VarId::t(2, 1)), 2);
        assert_eq!(ab.degree(), 7);
        assert_eq!(ab.div(&b).unwrap(), a);
        assert!(a.div(&b).is_none());
        assert!(b.divides(&ab));
    }

    #[test]
    fn from_pairs_normalizes() {
        let m = Monomial::from_pairs([(VarId::t(2, 1), 1), (VarId::t(1, 1), 0), (VarId::t(2, 1), 2)]);
        assert_eq!(m, Monomial::var_pow(VarId::t(2, 1), 3));
        assert_eq!(Monomial::from_pairs([(VarId::s(2), 2), (VarId::s(3), 1)]).s_weight(), 7);
    }
}
