//! Sparse multivariate polynomials over ℚ(κ) in typed variable families.

mod json;
mod monomial;
mod var;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use monomial::Monomial;
pub use var::{Family, VarId};

use crate::error::{Error, Result};
use crate::field::{BigRational, KappaRational};

/// Declared dimensions: `n` is the size of the T (and X, W) matrices and
/// `kappa_cols` the column count of X and Y in the tilde picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub n: usize,
    pub kappa_cols: Option<usize>,
}

impl Ambient {
    pub const fn new(n: usize) -> Self {
        Ambient { n, kappa_cols: None }
    }

    pub const fn with_cols(n: usize, cols: usize) -> Self {
        Ambient { n, kappa_cols: Some(cols) }
    }
}

/// Row and column sums of a T-monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl Bidegree {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Self {
        Bidegree { a, b }
    }

    pub fn of(m: &Monomial, n: usize) -> Self {
        let mut a = vec![0; n];
        let mut b = vec![0; n];
        for (v, e) in m.iter() {
            a[v.i as usize - 1] += e;
            b[v.j as usize - 1] += e;
        }
        Bidegree { a, b }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ambient: Ambient,
    terms: BTreeMap<Monomial, KappaRational>,
}

impl Poly {
    pub fn zero(ambient: Ambient) -> Self {
        Poly { ambient, terms: BTreeMap::new() }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::constant(ambient, KappaRational::one())
    }

    pub fn constant(ambient: Ambient, c: KappaRational) -> Self {
        Self::term(ambient, Monomial::one(), c)
    }

    pub fn var(ambient: Ambient, v: VarId) -> Self {
        Self::term(ambient, Monomial::var(v), KappaRational::one())
    }

    pub fn term(ambient: Ambient, m: Monomial, c: KappaRational) -> Self {
        let mut p = Poly::zero(ambient);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ambient: Ambient, terms: impl IntoIterator<Item = (Monomial, KappaRational)>) -> Self {
        let mut p = Poly::zero(ambient);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Same terms, relabelled ambient.
    pub fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = ambient;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &KappaRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, KappaRational)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> KappaRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> KappaRational {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: KappaRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ambient(&self, other: &Poly) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{:?} vs {:?}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        self.check_ambient(other).expect("ambient mismatch");
        for (m, c) in other.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &Poly, c: &KappaRational) {
        self.check_ambient(other).expect("ambient mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in other.terms.iter() {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        Ok(self + &(-other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only the monomials accepted by `keep`; used for
    /// truncated series multiplication.
    pub fn mul_filtered(&self, other: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
        self.check_ambient(other).expect("ambient mismatch");
        let mut out = Poly::zero(self.ambient);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                let m = m1.mul(m2);
                if keep(&m) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &KappaRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ambient);
        }
        Poly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &KappaRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ambient);
        }
        Poly { ambient: self.ambient, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.ambient), |acc, _| &acc * self)
    }

    pub fn retain(&mut self, keep: impl Fn(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    pub fn filtered(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let mut p = self.clone();
        p.retain(keep);
        p
    }

    /// Drops S-monomials of weighted degree above `w`.
    pub fn truncate_s_weight(&self, w: u32) -> Poly {
        self.filtered(|m| m.s_weight() <= w)
    }

    pub fn map_coeffs(&self, f: impl Fn(&KappaRational) -> Result<KappaRational>) -> Result<Poly> {
        let mut out = Poly::zero(self.ambient);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Every coefficient evaluated at κ = q.
    pub fn specialize(&self, q: &BigRational) -> Result<Poly> {
        self.map_coeffs(|c| c.eval_at(q).map(KappaRational::from_rational))
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        Poly::from_terms(self.ambient, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// θ over ℚ(κ): coefficients are real, so only the T-indices are transposed.
    pub fn transpose_t(&self) -> Poly {
        self.map_monomials(|m| m.map_vars(|v| if v.is_t() { v.transposed() } else { v }))
    }

    pub fn partial(&self, v: VarId) -> Poly {
        let mut out = Poly::zero(self.ambient);
        for (m, c) in self.terms.iter() {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c.scale(&BigRational::from_integer(e.into())));
            }
        }
        out
    }

    pub fn partial_pow(&self, v: VarId, k: u32) -> Poly {
        (0..k).fold(self.clone(), |acc, _| acc.partial(v))
    }

    /// `P(∂)` applied to `self` where `P` is the monomial `m`, i.e. ∏ ∂_v^{e_v}.
    pub fn partial_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero(self.ambient);
        for (t, c) in self.terms.iter() {
            if let Some(rest) = t.div(m) {
                let mut k = num_bigint::BigInt::from(1);
                for (v, e) in m.iter() {
                    let have = t.exponent(v);
                    k *= crate::field::desc_poch_int(have as i64, e);
                }
                out.add_term(rest, c.scale(&BigRational::from_integer(k)));
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree if every term has the same total degree (zero counts as degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let Some(d) = degs.next() else { return Some(0) };
        degs.all(|e| e == d).then_some(d)
    }

    pub fn only_family(&self, fam: Family) -> bool {
        self.terms.keys().all(|m| m.only_family(fam))
    }

    pub fn require_t(&self) -> Result<()> {
        match self.terms.keys().find(|m| !m.only_family(Family::T)) {
            Some(m) => Err(Error::NonTVariable(m.to_string())),
            None => Ok(()),
        }
    }

    /// Ring homomorphism sending each mapped variable to its image;
    /// unmapped variables are left in place.
    pub fn substitute(&self, assignment: &HashMap<VarId, Poly>, target: Ambient) -> Poly {
        self.substitute_filtered(assignment, target, |_| true)
    }

    /// As [`Poly::substitute`], discarding monomials rejected by `keep` after
    /// every multiplication. `keep` must be closed under division, so that
    /// a rejected monomial cannot become an accepted one later.
    pub fn substitute_filtered(
        &self,
        assignment: &HashMap<VarId, Poly>,
        target: Ambient,
        keep: impl Fn(&Monomial) -> bool,
    ) -> Poly {
        let mut powers: HashMap<(VarId, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(target);
        for (m, c) in self.terms.iter() {
            let mut acc = Poly::one(target);
            let mut fixed = Monomial::one();
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    Some(img) => {
                        let pw = power_cached(&mut powers, v, e, img, target, &keep);
                        acc = acc.mul_filtered(&pw, &keep);
                    }
                    None => fixed = fixed.mul(&Monomial::var_pow(v, e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            for (am, ac) in acc.terms {
                let mm = am.mul(&fixed);
                if keep(&mm) {
                    out.add_term(mm, ac * c);
                }
            }
        }
        out
    }

    /// Components `ℂ[T]_{𝐚,𝐛}` keyed by bidegree; they sum to `self`.
    pub fn bidegree_split(&self) -> Result<BTreeMap<Bidegree, Poly>> {
        self.require_t()?;
        let mut out: BTreeMap<Bidegree, Poly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            out.entry(Bidegree::of(m, self.ambient.n))
                .or_insert_with(|| Poly::zero(self.ambient))
                .add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Coefficient of the `fam`-monomial `pattern`, as a polynomial in the other families.
    pub fn extract_coefficient(&self, fam: Family, pattern: &Monomial) -> Poly {
        let mut out = Poly::zero(self.ambient);
        for (m, c) in self.terms.iter() {
            let (f, rest) = m.split_family(fam);
            if &f == pattern {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// All coefficients with respect to `fam` at once.
    pub fn collect_by_family(&self, fam: Family) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let (f, rest) = m.split_family(fam);
            out.entry(f).or_insert_with(|| Poly::zero(self.ambient)).add_term(rest, c.clone());
        }
        out
    }
}

fn power_cached(
    cache: &mut HashMap<(VarId, u32), Poly>,
    v: VarId,
    e: u32,
    img: &Poly,
    target: Ambient,
    keep: &impl Fn(&Monomial) -> bool,
) -> Poly {
    if let Some(p) = cache.get(&(v, e)) {
        return p.clone();
    }
    let img = img.clone().with_ambient(target);
    let p = if e == 1 {
        img.filtered(keep)
    } else {
        power_cached(cache, v, e - 1, &img, target, keep).mul_filtered(&img, keep)
    };
    cache.insert((v, e), p.clone());
    p
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ambient: self.ambient, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_filtered(rhs, |_| true)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (c.is_one(), m.is_one()) {
                (_, true) => write!(f, "({c})")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({self})", self.ambient.n)
    }
}

/// `t_ij`
pub fn t(n: usize, i: usize, j: usize) -> Poly {
    Poly::var(Ambient::new(n), VarId::t(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> KappaRational {
        KappaRational::kappa()
    }

    #[test]
    fn mul_examples() {
        let a = Ambient::new(2);
        assert_eq!(&t(2, 1, 2) * &t(2, 2, 1), Poly::term(a, Monomial::from_pairs([(VarId::t(1, 2), 1), (VarId::t(2, 1), 1)]), KappaRational::one()));
        let one = Poly::one(a);
        let lhs = &(&one + &t(2, 1, 1)) * &(&one - &t(2, 1, 1));
        assert_eq!(lhs, &one - &t(2, 1, 1).pow(2));
        let x = t(2, 1, 2).scale(&k());
        let y = t(2, 1, 2).scale(&k().inv().unwrap());
        assert_eq!(&x * &y, t(2, 1, 2).pow(2));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        assert!(matches!(t(2, 1, 1).checked_mul(&t(3, 1, 1)), Err(Error::AmbientMismatch(_))));
        assert!(t(2, 1, 1).checked_add(&t(2, 1, 2)).is_ok());
    }

    #[test]
    fn partial_examples() {
        let p = &t(2, 1, 2).pow(2) * &t(2, 2, 1);
        assert_eq!(p.partial(VarId::t(1, 2)), (&t(2, 1, 2) * &t(2, 2, 1)).scale(&2.into()));
        assert!(t(2, 1, 2).partial(VarId::t(1, 1)).is_zero());
        let a = Ambient::new(2);
        let s = |i| Poly::var(a, VarId::s(i));
        let q = &s(1) * &s(2).pow(2);
        assert_eq!(q.partial(VarId::s(2)), (&s(1) * &s(2)).scale(&2.into()));
    }

    #[test]
    fn partial_monomial_matches_iterated() {
        let p = &(&t(2, 1, 2).pow(3) * &t(2, 2, 1).pow(2)) + &t(2, 1, 1);
        let m = Monomial::from_pairs([(VarId::t(1, 2), 2), (VarId::t(2, 1), 1)]);
        let it = p.partial(VarId::t(1, 2)).partial(VarId::t(1, 2)).partial(VarId::t(2, 1));
        assert_eq!(p.partial_monomial(&m), it);
    }

    #[test]
    fn bidegree_split_examples() {
        let p = &t(2, 1, 2) * &t(2, 2, 1);
        let sp = p.bidegree_split().unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[&Bidegree::new(vec![1, 1], vec![1, 1])], p);
        let q = &t(2, 1, 2) + &t(2, 1, 1);
        let sq = q.bidegree_split().unwrap();
        assert_eq!(sq.len(), 2);
        assert!(sq.contains_key(&Bidegree::new(vec![1, 0], vec![0, 1])));
        assert!(sq.contains_key(&Bidegree::new(vec![1, 0], vec![1, 0])));
        let c = Poly::one(Ambient::new(2)).bidegree_split().unwrap();
        assert_eq!(c[&Bidegree::new(vec![0, 0], vec![0, 0])], Poly::one(Ambient::new(2)));
        let bad = Poly::var(Ambient::new(2), VarId::s(1));
        assert!(matches!(bad.bidegree_split(), Err(Error::NonTVariable(_))));
    }

    #[test]
    fn substitute_examples() {
        let a = Ambient::with_cols(1, 1);
        let p = Poly::var(a, VarId::t(1, 1));
        let img = Poly::term(a, Monomial::from_pairs([(VarId::x(1, 1), 1), (VarId::y(1, 1), 1)]), KappaRational::one());
        let map = HashMap::from([(VarId::t(1, 1), img.clone())]);
        assert_eq!(p.substitute(&map, a), img);

        let q = &t(2, 1, 2) * &t(2, 2, 1);
        let zero: HashMap<_, _> =
            [(1, 2), (2, 1)].into_iter().map(|(i, j)| (VarId::t(i, j), Poly::zero(Ambient::new(2)))).collect();
        assert!(q.substitute(&zero, Ambient::new(2)).is_zero());
    }

    #[test]
    fn extract_examples() {
        let a = Ambient::new(2);
        let tx = |i, j| Poly::term(a, Monomial::from_pairs([(VarId::t(i, j), 1), (VarId::x(i, j), 1)]), KappaRational::one());
        let p = &tx(1, 2) + &tx(2, 1);
        assert_eq!(p.extract_coefficient(Family::X, &Monomial::var(VarId::x(1, 2))), t(2, 1, 2));
        assert!(Poly::one(a).extract_coefficient(Family::X, &Monomial::var(VarId::x(1, 2))).is_zero());
        let by = p.collect_by_family(Family::X);
        assert_eq!(by.len(), 2);
    }
}
