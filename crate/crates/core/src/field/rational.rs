use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::KappaPoly;
use crate::error::{Error, Result};

/// An element of ℚ(κ) stored as a reduced fraction `num / den`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` is monic, zero is `0 / 1`.
/// Two equal values therefore have identical representations, so derived
/// `Eq` and `Hash` are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KappaRational {
    num: KappaPoly,
    den: KappaPoly,
}

impl KappaRational {
    pub fn zero() -> Self {
        KappaRational { num: KappaPoly::zero(), den: KappaPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(KappaPoly::one())
    }

    pub fn kappa() -> Self {
        Self::from_poly(KappaPoly::kappa())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(KappaPoly::constant(q))
    }

    pub fn from_poly(p: KappaPoly) -> Self {
        KappaRational { num: p, den: KappaPoly::one() }
    }

    /// κ + c
    pub fn kappa_plus(c: i64) -> Self {
        Self::from_poly(KappaPoly::from_i64s(&[c, 1]))
    }

    /// Builds `num / den` in canonical form. Fails on a zero denominator.
    pub fn new(num: KappaPoly, den: KappaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::PoleAtKappa("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: KappaPoly, den: KappaPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.leading().recip();
            return KappaRational { num: num.scale(&inv), den: KappaPoly::one() };
        }
        let g = KappaPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc_inv = den.leading().recip();
        KappaRational { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn numer(&self) -> &KappaPoly {
        &self.num
    }

    pub fn denom(&self) -> &KappaPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on κ.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::PoleAtKappa("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        KappaRational { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        KappaRational { num: self.num.scale(q), den: self.den.clone() }
    }

    /// Exact value at κ = q.
    pub fn eval_at(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::PoleAtKappa(format!("({self}) has a pole at {q}")));
        }
        Ok(self.num.eval(q) / d)
    }
}

impl Default for KappaRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &KappaRational {
    type Output = KappaRational;
    fn add(self, rhs: &KappaRational) -> KappaRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return KappaRational { num, den: KappaPoly::one() };
            }
            return KappaRational::normalized(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        KappaRational::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &KappaRational {
    type Output = KappaRational;
    fn sub(self, rhs: &KappaRational) -> KappaRational {
        self + &(-rhs)
    }
}

impl Neg for &KappaRational {
    type Output = KappaRational;
    fn neg(self) -> KappaRational {
        KappaRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &KappaRational {
    type Output = KappaRational;
    fn mul(self, rhs: &KappaRational) -> KappaRational {
        if self.is_zero() || rhs.is_zero() {
            return KappaRational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return KappaRational { num: &self.num * &rhs.num, den: KappaPoly::one() };
        }
        if self.is_constant() {
            return rhs.scale(&self.num.constant_term());
        }
        if rhs.is_constant() {
            return self.scale(&rhs.num.constant_term());
        }
        // cross-cancel before multiplying to keep intermediate degrees low
        let g1 = KappaPoly::gcd(&self.num, &rhs.den);
        let g2 = KappaPoly::gcd(&rhs.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g1) };
        let n2 = if g2.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2) };
        KappaRational::normalized(&n1 * &n2, &d1 * &d2)
    }
}

/// Panics on division by zero; use [`KappaRational::checked_div`] where the
/// divisor may vanish.
impl Div for &KappaRational {
    type Output = KappaRational;
    fn div(self, rhs: &KappaRational) -> KappaRational {
        self.checked_div(rhs).expect("division by zero in Q(kappa)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for KappaRational {
            type Output = KappaRational;
            fn $f(self, rhs: KappaRational) -> KappaRational { (&self).$f(&rhs) }
        }
        impl $tr<&KappaRational> for KappaRational {
            type Output = KappaRational;
            fn $f(self, rhs: &KappaRational) -> KappaRational { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for KappaRational {
    type Output = KappaRational;
    fn neg(self) -> KappaRational {
        -&self
    }
}

impl AddAssign<&KappaRational> for KappaRational {
    fn add_assign(&mut self, rhs: &KappaRational) {
        *self = &*self + rhs;
    }
}

impl From<i64> for KappaRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for KappaRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl KappaRational {
    /// As `Display`, naming the indeterminate `var` instead of `k`.
    pub fn to_string_in(&self, var: &str) -> String {
        let render = |p: &KappaPoly| {
            let mut s = String::new();
            p.fmt_var(&mut s, var).expect("writing to a String");
            s
        };
        if self.den.is_one() {
            return render(&self.num);
        }
        let wrap = |p: &KappaPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", render(p))
            } else {
                render(p)
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for KappaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("k"))
    }
}

impl fmt::Debug for KappaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KappaRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn eval_at_examples() {
        let f = KappaRational::one() / KappaRational::kappa_plus(-2);
        assert_eq!(f.eval_at(&q(3)).unwrap(), q(1));
        assert!(matches!(f.eval_at(&q(2)), Err(Error::PoleAtKappa(_))));

        // (κ² − κ)/(κ − 1) reduces to κ
        let g = KappaRational::new(KappaPoly::from_i64s(&[0, -1, 1]), KappaPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(g, KappaRational::kappa());
        assert_eq!(g.eval_at(&q(5)).unwrap(), q(5));
    }

    #[test]
    fn canonical_under_common_factor() {
        let a = KappaPoly::from_i64s(&[1, 2, 3]);
        let b = KappaPoly::from_i64s(&[-5, 0, 7]);
        let c = KappaPoly::from_i64s(&[4, -3]);
        let x = KappaRational::new(a.clone(), b.clone()).unwrap();
        let y = KappaRational::new(&a * &c, &b * &c).unwrap();
        assert_eq!(x, y);
        assert_eq!(y.denom().leading(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn zero_denominator_is_refused() {
        assert!(KappaRational::new(KappaPoly::one(), KappaPoly::zero()).is_err());
        assert!(KappaRational::zero().inv().is_err());
    }
}
