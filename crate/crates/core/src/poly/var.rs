use std::fmt;

use crate::error::{Error, Result};

/// Variable families. The derived order is the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T,
    S,
    X,
    Y,
    U1,
    U2,
    V1,
    V2,
    W,
}

impl Family {
    pub const ALL: [Family; 9] =
        [Family::T, Family::S, Family::X, Family::Y, Family::U1, Family::U2, Family::V1, Family::V2, Family::W];

    pub fn prefix(self) -> &'static str {
        match self {
            Family::T => "t",
            Family::S => "s",
            Family::X => "x",
            Family::Y => "y",
            Family::U1 => "u1",
            Family::U2 => "u2",
            Family::V1 => "v1",
            Family::V2 => "v2",
            Family::W => "w",
        }
    }

    fn from_prefix(p: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.prefix() == p)
    }
}

/// A single variable. Matrix families use 1-based `(i, j)`; the S family
/// uses `i = a` and `j = 0`. The vector families U1..V2 are stored as
/// matrices with one row per copy (`u1_1_k` for a single vector).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub i: u16,
    pub j: u16,
}

impl VarId {
    pub const fn new(family: Family, i: u16, j: u16) -> Self {
        VarId { family, i, j }
    }

    pub const fn t(i: usize, j: usize) -> Self {
        VarId::new(Family::T, i as u16, j as u16)
    }

    pub const fn s(a: usize) -> Self {
        VarId::new(Family::S, a as u16, 0)
    }

    pub const fn x(i: usize, j: usize) -> Self {
        VarId::new(Family::X, i as u16, j as u16)
    }

    pub const fn y(i: usize, j: usize) -> Self {
        VarId::new(Family::Y, i as u16, j as u16)
    }

    pub const fn w(i: usize, j: usize) -> Self {
        VarId::new(Family::W, i as u16, j as u16)
    }

    /// Entry `k` of one of the vector families.
    pub const fn vec(family: Family, k: usize) -> Self {
        VarId::new(family, 1, k as u16)
    }

    pub fn is_t(&self) -> bool {
        self.family == Family::T
    }

    /// Same index pair, transposed; the identity on S.
    pub fn transposed(self) -> Self {
        if self.family == Family::S {
            self
        } else {
            VarId { i: self.j, j: self.i, ..self }
        }
    }

    pub fn key(&self) -> String {
        match self.family {
            Family::S => format!("s_{}", self.i),
            f => format!("{}_{}_{}", f.prefix(), self.i, self.j),
        }
    }

    pub fn parse(key: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable key {key:?}"));
        let mut parts = key.split('_');
        let fam = Family::from_prefix(parts.next().ok_or_else(bad)?).ok_or_else(bad)?;
        let mut idx = || -> Result<u16> {
            let v: u16 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            Ok(v)
        };
        let v = match fam {
            Family::S => VarId::new(fam, idx()?, 0),
            _ => {
                let i = idx()?;
                VarId::new(fam, i, idx()?)
            }
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(v)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::S => write!(f, "s{}", self.i),
            fam => write!(f, "{}{}{}", fam.prefix(), self.i, self.j),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        for v in [VarId::t(1, 2), VarId::s(3), VarId::vec(Family::V2, 4), VarId::w(2, 1)] {
            assert_eq!(VarId::parse(&v.key()).unwrap(), v);
        }
        assert_eq!(VarId::t(1, 2).key(), "t_1_2");
        assert_eq!(VarId::vec(Family::U1, 3).key(), "u1_1_3");
        assert!(VarId::parse("t_1").is_err());
        assert!(VarId::parse("q_1_1").is_err());
        assert!(VarId::parse("s_0").is_err());
    }

    #[test]
    fn order_is_family_then_indices() {
        assert!(VarId::t(3, 3) < VarId::s(1));
        assert!(VarId::t(1, 2) < VarId::t(2, 1));
        assert!(VarId::x(1, 1) < VarId::w(1, 1));
    }
}
