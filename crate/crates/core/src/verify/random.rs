//! Seeded generators for randomized checks.

use rand::Rng;

use crate::field::{BigRational, KappaRational};
use crate::poly::{Ambient, Monomial, Poly, VarId};

pub fn random_monomial(rng: &mut impl Rng, n: usize, degree: u32) -> Monomial {
    let mut pairs = Vec::new();
    for _ in 0..degree {
        pairs.push((VarId::t(rng.gen_range(1..=n), rng.gen_range(1..=n)), 1));
    }
    Monomial::from_pairs(pairs)
}

fn small_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(num.into(), den.into())
}

/// Up to `terms` monomials of degree ≤ `max_degree` (exactly `degree` when
/// `homogeneous` is set) with small rational coefficients, occasionally
/// multiplied by `κ`.
pub fn random_t_poly(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize, homogeneous: bool) -> Poly {
    let amb = Ambient::new(n);
    let degree = rng.gen_range(0..=max_degree);
    let mut p = Poly::zero(amb);
    for _ in 0..terms.max(1) {
        let d = if homogeneous { degree } else { rng.gen_range(0..=max_degree) };
        let mut c = KappaRational::from_rational(small_rational(rng));
        if rng.gen_bool(0.25) {
            c = &c * &KappaRational::kappa();
        }
        p.add_term(random_monomial(rng, n, d), c);
    }
    p
}

/// Random rational away from the integers (keeps clear of every pole set used here).
pub fn random_kappa(rng: &mut impl Rng) -> BigRational {
    let den: i64 = rng.gen_range(2..=7);
    let mut num: i64 = rng.gen_range(-20..=40);
    if num % den == 0 {
        num += 1;
    }
    BigRational::new(num.into(), den.into())
}
