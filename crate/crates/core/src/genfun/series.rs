use crate::error::Result;
use crate::field::{asc_poch, factorial, BigRational, KappaRational};
use crate::poly::{Ambient, Monomial, Poly, VarId};

use super::epsilon::eps_plus;

/// Power series in `s_1, s_2, …` truncated at weighted degree `max_weight`
/// (`deg s_a = a`).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    poly: Poly,
    max_weight: u32,
}

impl TruncatedSeries {
    pub fn new(poly: Poly, max_weight: u32) -> Self {
        TruncatedSeries { poly: poly.truncate_s_weight(max_weight), max_weight }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn ambient(&self) -> Ambient {
        self.poly.ambient()
    }

    /// Coefficient of `s_1^{e_1} s_2^{e_2} ⋯`.
    pub fn coeff(&self, exps: &[u32]) -> KappaRational {
        let m = Monomial::from_pairs(exps.iter().enumerate().map(|(k, &e)| (VarId::s(k + 1), e)));
        self.poly.coeff(&m)
    }

    /// Keeps only monomials of weight ≤ `w` (and lowers the bound accordingly).
    pub fn truncated(&self, w: u32) -> TruncatedSeries {
        TruncatedSeries::new(self.poly.clone(), w.min(self.max_weight))
    }

    /// Sets `s_a = 0` for `a > n`.
    pub fn restrict_vars(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries { poly: self.poly.filtered(|m| m.iter().all(|(v, _)| v.i as usize <= n)), max_weight: self.max_weight }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

fn s(amb: Ambient, a: i64) -> Option<Poly> {
    match a {
        0 => Some(Poly::one(amb)),
        a if a < 0 => None,
        a => Some(Poly::var(amb, VarId::s(a as usize))),
    }
}

fn max_s_index(p: &Poly) -> usize {
    p.terms().flat_map(|(m, _)| m.iter().map(|(v, _)| v.i as usize)).max().unwrap_or(0)
}

/// `ℒ_p f = (κ+1−p)∂_p f + Σ_{a,b≥1} ε⁺_{a,b}(p) s_{a+b−p} ∂_a∂_b f` with `s_0 = 1`,
/// `s_{<0} = 0`. Homogeneous of weight `−p`, so no truncation is needed.
pub fn apply_lp_poly(kappa: &KappaRational, p: usize, f: &Poly) -> Poly {
    apply_lp_with(kappa, p, f, eps_plus)
}

/// [`apply_lp_poly`] with a substitutable sign table (mutation testing).
pub fn apply_lp_with(kappa: &KappaRational, p: usize, f: &Poly, eps: impl Fn(i64, i64, i64) -> i64) -> Poly {
    lp_inner(kappa, p, f, eps, None)
}

/// `ℒ_p` on the slice `s_{>n} = 0`: the form it takes on `G^{(n)}`, where
/// every `s_{a+b−p}` with `a+b−p > n` is dropped.
pub fn apply_lp_restricted(kappa: &KappaRational, p: usize, n: usize, f: &Poly) -> Poly {
    lp_inner(kappa, p, f, eps_plus, Some(n))
}

/// [`apply_lp_restricted`] with a substitutable sign table.
pub fn apply_lp_restricted_with(
    kappa: &KappaRational,
    p: usize,
    n: usize,
    f: &Poly,
    eps: impl Fn(i64, i64, i64) -> i64,
) -> Poly {
    lp_inner(kappa, p, f, eps, Some(n))
}

fn lp_inner(kappa: &KappaRational, p: usize, f: &Poly, eps: impl Fn(i64, i64, i64) -> i64, bound: Option<usize>) -> Poly {
    let amb = f.ambient();
    let top = max_s_index(f);
    let mut out = f.partial(VarId::s(p)).scale(&(kappa + &KappaRational::from_int(1 - p as i64)));
    for a in 1..=top {
        let fa = f.partial(VarId::s(a));
        if fa.is_zero() {
            continue;
        }
        for b in 1..=top {
            let sign = eps(a as i64, b as i64, p as i64);
            if sign == 0 {
                continue;
            }
            let idx = (a + b) as i64 - p as i64;
            if bound.is_some_and(|n| idx > n as i64) {
                continue;
            }
            let Some(mult) = s(amb, idx) else { continue };
            let fab = fa.partial(VarId::s(b));
            if fab.is_zero() {
                continue;
            }
            out.add_scaled(&(&mult * &fab), &KappaRational::from_int(sign));
        }
    }
    out
}

pub fn apply_lp(kappa: &KappaRational, p: usize, f: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::new(apply_lp_poly(kappa, p, &f.poly), f.max_weight)
}

/// `ℳ_n f = Σ_{0<a,b<n, a+b≥n} s_{a+b−n} ∂_a∂_b f`
pub fn apply_mn_poly(n: usize, f: &Poly) -> Poly {
    let amb = f.ambient();
    let mut out = Poly::zero(amb);
    for a in 1..n {
        let fa = f.partial(VarId::s(a));
        if fa.is_zero() {
            continue;
        }
        for b in (1..n).filter(|&b| a + b >= n) {
            let fab = fa.partial(VarId::s(b));
            if fab.is_zero() {
                continue;
            }
            let mult = s(amb, (a + b - n) as i64).expect("nonnegative index");
            out.add_assign_ref(&(&mult * &fab));
        }
    }
    out
}

pub fn apply_mn(n: usize, f: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::new(apply_mn_poly(n, &f.poly), f.max_weight)
}

/// `𝕁_ν(s_m · inner)(f) = Σ_r (s_m · inner)^r f / (r! (ν+1)^{(r)})`, truncated.
/// Terminates because each term gains weight `m`.
pub fn apply_j(
    nu: &KappaRational,
    m: usize,
    inner: impl Fn(&Poly) -> Poly,
    f: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let w = f.max_weight;
    let amb = f.ambient();
    let sm = Poly::var(amb, VarId::s(m));
    let mut acc = f.poly.clone();
    let mut term = f.poly.clone();
    let mut r: i64 = 1;
    while !term.is_zero() && (r as u32) * (m as u32) <= w {
        let denom = &KappaRational::from_int(r) * &(nu + &KappaRational::from_int(r));
        let next = (&sm * &inner(&term)).truncate_s_weight(w);
        term = next.scale(&KappaRational::one().checked_div(&denom)?);
        acc.add_assign_ref(&term);
        r += 1;
    }
    Ok(TruncatedSeries::new(acc, w))
}

/// `G^{(n)} = 𝕁_{κ−n}(s_nℳ_n) ⋯ 𝕁_{κ−2}(s_2ℳ_2)(G^{(1)})`
pub fn build_g(kappa: &KappaRational, n: usize, g1: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut g = g1.clone();
    for m in 2..=n {
        let nu = kappa - &KappaRational::from_int(m as i64);
        g = apply_j(&nu, m, |p| apply_mn_poly(m, p), &g)?;
    }
    Ok(g)
}

/// Preset seed series `G^{(1)}(s_1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// `Σ_a (κ−1)^{(a)} s_1^a / a!`
    A,
    /// `(1 − s_1/2)^{3−2κ} = Σ_a (2κ−3)^{(a)} s_1^a / (a! 2^a)`
    B,
}

impl std::str::FromStr for Seed {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Seed::A),
            "B" | "b" => Ok(Seed::B),
            _ => Err(crate::error::Error::InvalidInput(format!("unknown seed {s:?}"))),
        }
    }
}

impl Seed {
    /// Coefficient of `s_1^a`.
    pub fn coeff(self, kappa: &KappaRational, a: u32) -> KappaRational {
        let fact = KappaRational::from_bigint(factorial(a));
        match self {
            Seed::A => asc_poch(&(kappa - &KappaRational::one()), a) / fact,
            Seed::B => {
                let x = &kappa.scale(&BigRational::from_integer(2.into())) - &KappaRational::from_int(3);
                let two_a = KappaRational::from_bigint(num_bigint::BigInt::from(2).pow(a));
                asc_poch(&x, a) / (fact * two_a)
            }
        }
    }

    pub fn series(self, kappa: &KappaRational, amb: Ambient, max_weight: u32) -> TruncatedSeries {
        let p = Poly::from_terms(amb, (0..=max_weight).map(|a| (Monomial::var_pow(VarId::s(1), a), self.coeff(kappa, a))));
        TruncatedSeries::new(p, max_weight)
    }

    /// `c_d` with `P_ν = c_{|ν|} P^D_ν`: `d! (κ)^{(d)} [s_1^d] G^{(1)}`.
    pub fn normalization(self, kappa: &KappaRational, d: u32) -> KappaRational {
        &(&KappaRational::from_bigint(factorial(d)) * &asc_poch(kappa, d)) * &self.coeff(kappa, d)
    }
}

/// Weight-≤`w` expansion of `((1−s₁/2)² − s₂)^{−(κ−3/2)}`.
pub fn g2_closed_form(kappa: &KappaRational, amb: Ambient, w: u32) -> TruncatedSeries {
    let alpha = kappa - &KappaRational::from_ratio(3, 2);
    // 1 + h = (1 − s1/2)² − s2
    let s1 = Poly::var(amb, VarId::s(1));
    let s2 = Poly::var(amb, VarId::s(2));
    let h = &(&s1.pow(2).scale(&KappaRational::from_ratio(1, 4)) - &s1) - &s2;
    binomial_series(&alpha, &h, |m| m.s_weight() <= w, w)
        .map(|p| TruncatedSeries::new(p, w))
        .expect("binomial coefficients never divide by zero")
}

/// `(1 + h)^{−α} = Σ_r (−1)^r α^{(r)}/r! h^r`, terms filtered by `keep`;
/// `h` must have no constant term, so `r ≤ max_r` suffices.
pub fn binomial_series(alpha: &KappaRational, h: &Poly, keep: impl Fn(&Monomial) -> bool, max_r: u32) -> Result<Poly> {
    let amb = h.ambient();
    let mut out = Poly::one(amb);
    let mut hp = Poly::one(amb);
    for r in 1..=max_r {
        hp = hp.mul_filtered(h, &keep);
        if hp.is_zero() {
            break;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = &(&asc_poch(alpha, r) * &KappaRational::from_int(sign)) / &KappaRational::from_bigint(factorial(r));
        out.add_scaled(&hp, &c);
    }
    Ok(out)
}

/// `A_{a,b,c} = (a+2b+3c+2κ−3)^{(c)} / (κ−2)^{(c)} · (b+2c+κ−1)^{(a+b+c)}`
pub fn g3_coefficient(kappa: &KappaRational, a: u32, b: u32, c: u32) -> Result<KappaRational> {
    let x = &kappa.scale(&BigRational::from_integer(2.into())) + &KappaRational::from_int((a + 2 * b + 3 * c) as i64 - 3);
    let y = kappa - &KappaRational::from_int(2);
    let z = kappa + &KappaRational::from_int((b + 2 * c) as i64 - 1);
    let num = &asc_poch(&x, c) * &asc_poch(&z, a + b + c);
    num.checked_div(&asc_poch(&y, c))
}
