use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial in κ with rational coefficients.
/// `coeffs[d]` is the coefficient of κ^d; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KappaPoly {
    coeffs: Vec<BigRational>,
}

impl KappaPoly {
    pub fn zero() -> Self {
        KappaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate κ.
    pub fn kappa() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KappaPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        KappaPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &KappaPoly) -> (KappaPoly, KappaPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        if d.is_constant() {
            let inv = d.coeffs[0].recip();
            return (self.scale(&inv), KappaPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (KappaPoly::zero(), KappaPoly::zero());
        };
        if nd < dd {
            return (KappaPoly::zero(), self.clone());
        }
        let lc_inv = d.leading().recip();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (KappaPoly::from_coeffs(quot), KappaPoly::from_coeffs(rem))
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &KappaPoly) -> KappaPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &KappaPoly, b: &KappaPoly) -> KappaPoly {
        if a.is_constant() && !a.is_zero() || b.is_constant() && !b.is_zero() {
            return KappaPoly::one();
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn pow(&self, e: u32) -> KappaPoly {
        let mut acc = KappaPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// lcm of the coefficient denominators; multiplying by it gives integer coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl Add for &KappaPoly {
    type Output = KappaPoly;
    fn add(self, rhs: &KappaPoly) -> KappaPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(short.coeffs.iter()) {
            *o += s;
        }
        KappaPoly::from_coeffs(out)
    }
}

impl Sub for &KappaPoly {
    type Output = KappaPoly;
    fn sub(self, rhs: &KappaPoly) -> KappaPoly {
        self + &(-rhs)
    }
}

impl Neg for &KappaPoly {
    type Output = KappaPoly;
    fn neg(self) -> KappaPoly {
        KappaPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: &KappaPoly) -> KappaPoly {
        if self.is_zero() || rhs.is_zero() {
            return KappaPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KappaPoly::from_coeffs(out)
    }
}

impl KappaPoly {
    /// Renders with `var` as the name of the indeterminate.
    pub fn fmt_var(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (d, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match d {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "k")
    }
}

impl fmt::Debug for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KappaPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> KappaPoly {
        KappaPoly::from_i64s(cs)
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (k-1)(k+2) and (k-1)(k-3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(KappaPoly::gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(KappaPoly::gcd(&a, &KappaPoly::zero()), a.monic());
        assert!(KappaPoly::gcd(&p(&[2]), &a).is_one());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, -1, 1]).to_string(), "k^2 - k");
        assert_eq!(p(&[-2]).to_string(), "-2");
    }
}
