use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{desc_poch, desc_poch_int, factorial, BigRational, KappaRational};

/// A pair of dominant integral weights `(𝐤, 𝐥)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPair {
    k: Vec<u32>,
    l: Vec<u32>,
}

fn check_dominant(w: &[u32], name: &str) -> Result<()> {
    if w.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::InvalidInput(format!("weight {name} = {w:?} is not non-increasing")));
    }
    Ok(())
}

fn trim(mut w: Vec<u32>) -> Vec<u32> {
    while w.last() == Some(&0) {
        w.pop();
    }
    w
}

impl WeightPair {
    pub fn new(k: Vec<u32>, l: Vec<u32>) -> Result<Self> {
        check_dominant(&k, "k")?;
        check_dominant(&l, "l")?;
        Ok(WeightPair { k: trim(k), l: trim(l) })
    }

    pub fn zero() -> Self {
        WeightPair { k: Vec::new(), l: Vec::new() }
    }

    /// `k_i`, 1-based, zero past the length.
    pub fn k(&self, i: usize) -> u32 {
        self.k.get(i - 1).copied().unwrap_or(0)
    }

    pub fn l(&self, i: usize) -> u32 {
        self.l.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len_k(&self) -> usize {
        self.k.len()
    }

    pub fn len_l(&self) -> usize {
        self.l.len()
    }

    pub fn k_parts(&self) -> &[u32] {
        &self.k
    }

    pub fn l_parts(&self) -> &[u32] {
        &self.l
    }

    pub fn abs_k(&self) -> u32 {
        self.k.iter().sum()
    }

    pub fn abs_l(&self) -> u32 {
        self.l.iter().sum()
    }

    pub fn swapped(&self) -> WeightPair {
        WeightPair { k: self.l.clone(), l: self.k.clone() }
    }
}

/// `rational × π^{pi_power}`; the rational part may depend on a formal `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiSymbolic {
    pub rational: KappaRational,
    pub pi_power: i64,
}

impl PiSymbolic {
    pub fn mul(&self, other: &PiSymbolic) -> PiSymbolic {
        PiSymbolic { rational: &self.rational * &other.rational, pi_power: self.pi_power + other.pi_power }
    }

    /// Numeric value; `None` while `s` is still formal.
    pub fn to_f64(&self) -> Option<f64> {
        let q = self.rational.as_constant()?;
        Some(q.to_f64()? * std::f64::consts::PI.powi(self.pi_power as i32))
    }

    pub fn eval_at(&self, s: &BigRational) -> Result<PiSymbolic> {
        let r = self.rational.eval_at(s).map_err(|_| Error::PoleAtS(format!("{} at s = {s}", self.rational.to_string_in("s"))))?;
        Ok(PiSymbolic { rational: KappaRational::from_rational(r), pi_power: self.pi_power })
    }
}

impl fmt::Display for PiSymbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*pi^{}", self.rational.to_string_in("s"), self.pi_power)
    }
}

/// `c_{m,n}(s, 𝐤, 𝐥) = π^{nm} ∏_{i=1}^n 1/(s + k_i + l_i + n + m − i)_{(m)}`.
/// `s` is any element of `ℚ(s)`; pass `KappaRational::kappa()` for the formal variable.
pub fn c_mn(m: usize, n: usize, s: &KappaRational, w: &WeightPair) -> Result<PiSymbolic> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    if w.len_k() > n || w.len_l() > n {
        return Err(Error::InvalidInput(format!("weights longer than n = {n}")));
    }
    let mut rational = KappaRational::one();
    for i in 1..=n {
        let shift = (w.k(i) + w.l(i) + (n + m) as u32) as i64 - i as i64;
        let x = s + &KappaRational::from_int(shift);
        let p = desc_poch(&x, m as u32);
        rational = rational
            .checked_div(&p)
            .map_err(|_| Error::PoleAtS(format!("({})_({m}) vanishes", x.to_string_in("s"))))?;
    }
    Ok(PiSymbolic { rational, pi_power: (n * m) as i64 })
}

fn weight_norm(w: &[u32]) -> BigRational {
    let len = w.len();
    let mut num = num_bigint::BigInt::from(1);
    for (i, &k) in w.iter().enumerate() {
        num *= factorial(k + (len - i - 1) as u32);
    }
    let mut den = num_bigint::BigInt::from(1);
    for i in 0..len {
        for j in i + 1..len {
            den *= num_bigint::BigInt::from((w[i] - w[j]) as i64 + (j - i) as i64);
        }
    }
    BigRational::new(num, den)
}

/// `⟨v₀, v₀⟩` for the highest weight vector of weight `(𝐤, 𝐥)`.
pub fn highest_weight_norm(w: &WeightPair) -> BigRational {
    weight_norm(w.k_parts()) * weight_norm(w.l_parts())
}

/// `2^{two_exp} π^{pi_exp} × rational`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackConstant {
    pub two_exp: i64,
    pub pi_exp: i64,
    pub rational: BigRational,
}

impl PullbackConstant {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "two_exp": self.two_exp,
            "pi_exp": self.pi_exp,
            "rational": crate::field::rational_to_string(&self.rational),
        })
    }

    pub fn to_f64(&self) -> Option<f64> {
        Some(
            self.rational.to_f64()?
                * 2f64.powi(self.two_exp as i32)
                * std::f64::consts::PI.powi(self.pi_exp as i32),
        )
    }
}

/// `c(μ/2, ρ_{n₂})` for `m` archimedean places with weights `weights[v]`.
pub fn c_pullback(mu: u32, m: usize, n2: usize, weights: &[WeightPair]) -> Result<PullbackConstant> {
    if weights.len() != m {
        return Err(Error::InvalidInput(format!("expected {m} weight pairs, got {}", weights.len())));
    }
    if (mu as usize) < n2 {
        return Err(Error::InvalidInput(format!("mu = {mu} is smaller than n2 = {n2}")));
    }
    let (m_i, n2_i, mu_i) = (m as i64, n2 as i64, mu as i64);
    let mut abs = 0i64;
    let mut rational = BigRational::from_integer(1.into());
    for w in weights {
        if w.len_k() > n2 || w.len_l() > n2 {
            return Err(Error::InvalidInput(format!("weights {w:?} longer than n2 = {n2}")));
        }
        if w.len_k() + w.len_l() > mu as usize {
            return Err(Error::InvalidInput(format!("l(k) + l(l) exceeds mu for {w:?}")));
        }
        abs += (w.abs_k() + w.abs_l()) as i64;
        rational *= highest_weight_norm(w);
        for i in 1..=n2 {
            let x = (w.k(i) + w.l(i)) as i64 + mu_i - i as i64;
            let p = desc_poch_int(x, n2 as u32);
            if p.is_zero() {
                return Err(Error::ZeroPochhammer(format!("({x})_({n2}) = 0")));
            }
            rational /= BigRational::from_integer(p);
        }
    }
    Ok(PullbackConstant { two_exp: -2 * m_i * n2_i * n2_i - m_i * (n2_i - 2) * mu_i + abs, pi_exp: m_i * n2_i * n2_i, rational })
}

/// Quadrature estimate with the difference between the two finest levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleEstimate {
    pub value: f64,
    pub error: f64,
}

/// `∫_{𝔖_{m,1}} (1 − S*S)^{s+k+l} dS` over the complex unit ball in `ℂ^m`.
///
/// Writing `r_i = |z_i|²` turns `dS` into `π^m dr` on the simplex
/// `Σ r_i < 1`; slicing the simplex by `ρ = Σ r_i` leaves
/// `π^m/(m−1)! ∫_0^1 (1−ρ)^α ρ^{m−1} dρ`, evaluated by composite midpoint
/// sums with Richardson extrapolation.
pub fn disk_integral_oracle(m: usize, n: usize, s: f64, w: &WeightPair, mesh: usize) -> Result<OracleEstimate> {
    if n != 1 {
        return Err(Error::InvalidInput("the quadrature oracle covers n = 1 only".into()));
    }
    if m == 0 || mesh == 0 {
        return Err(Error::InvalidInput("m and mesh must be positive".into()));
    }
    if s <= -1.0 {
        return Err(Error::InvalidInput("s must exceed -1".into()));
    }
    let alpha = s + (w.k(1) + w.l(1)) as f64;
    let f = |rho: f64| (1.0 - rho).powf(alpha) * rho.powi(m as i32 - 1);
    let midpoint = |cells: usize| {
        let h = 1.0 / cells as f64;
        (0..cells).map(|c| f((c as f64 + 0.5) * h)).sum::<f64>() * h
    };
    let coarse = midpoint(mesh);
    let fine = midpoint(2 * mesh);
    let richardson = (4.0 * fine - coarse) / 3.0;
    let mfact: f64 = (1..m).map(|x| x as f64).product();
    let scale = std::f64::consts::PI.powi(m as i32) / mfact;
    Ok(OracleEstimate { value: scale * richardson, error: scale * (richardson - fine).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn c_mn_examples() {
        let s = KappaRational::kappa();
        let w = WeightPair::new(vec![2], vec![1]).unwrap();
        let c = c_mn(1, 1, &s, &w).unwrap();
        assert_eq!(c.pi_power, 1);
        assert_eq!(c.rational, KappaRational::kappa_plus(4).inv().unwrap());
        let c = c_mn(1, 1, &KappaRational::from_int(0), &WeightPair::zero()).unwrap();
        assert_eq!(c.to_f64().unwrap(), std::f64::consts::PI);
        assert!(matches!(
            c_mn(1, 1, &KappaRational::from_int(-1), &WeightPair::zero()),
            Err(Error::PoleAtS(_))
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(highest_weight_norm(&WeightPair::zero()), q(1, 1));
        assert_eq!(highest_weight_norm(&WeightPair::new(vec![4], vec![]).unwrap()), q(24, 1));
        assert_eq!(highest_weight_norm(&WeightPair::new(vec![2, 1], vec![]).unwrap()), q(3, 1));
    }

    #[test]
    fn pullback_scalar_case() {
        for mu in 2..=8u32 {
            let c = c_pullback(mu, 1, 1, &[WeightPair::zero()]).unwrap();
            assert_eq!(c.two_exp, mu as i64 - 2);
            assert_eq!(c.pi_exp, 1);
            assert_eq!(c.rational, q(1, mu as i64 - 1));
        }
        assert!(matches!(c_pullback(1, 1, 1, &[WeightPair::zero()]), Err(Error::ZeroPochhammer(_))));
    }

    #[test]
    fn oracle_disk_values() {
        let w = WeightPair::zero();
        let e = disk_integral_oracle(1, 1, 2.0, &w, 256).unwrap();
        assert!((e.value - std::f64::consts::PI / 3.0).abs() < 1e-9);
        let e = disk_integral_oracle(1, 1, 0.0, &w, 256).unwrap();
        assert!((e.value - std::f64::consts::PI).abs() < 1e-9);
    }
}
