//! Proptest strategies shared by the integration tests.
#![allow(dead_code)]

use plurikit::field::{BigRational, KappaPoly, KappaRational};
use plurikit::poly::{Ambient, Monomial, Poly, VarId};
use proptest::prelude::*;

pub fn small_q() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn kappa_poly(max_deg: usize) -> impl Strategy<Value = KappaPoly> {
    prop::collection::vec(small_q(), 0..=max_deg + 1).prop_map(KappaPoly::from_coeffs)
}

pub fn kappa_rational() -> impl Strategy<Value = KappaRational> {
    (kappa_poly(2), kappa_poly(2).prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| KappaRational::new(n, d).expect("nonzero denominator"))
}

/// Small coefficients, sometimes depending on κ.
pub fn coeff() -> impl Strategy<Value = KappaRational> {
    prop_oneof![
        3 => small_q().prop_map(KappaRational::from_rational),
        1 => (small_q(), small_q()).prop_map(|(a, b)| KappaRational::from_poly(KappaPoly::from_coeffs(vec![a, b]))),
    ]
}

pub fn t_monomial(n: usize, degree: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1..=n, 1..=n), degree)
        .prop_map(|ij| Monomial::from_pairs(ij.into_iter().map(|(i, j)| (VarId::t(i, j), 1))))
}

pub fn t_poly(n: usize, max_degree: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((t_monomial(n, 0..=max_degree), coeff()), 1..=max_terms)
        .prop_map(move |terms| Poly::from_terms(Ambient::new(n), terms))
}

/// Homogeneous of a degree drawn from `degrees`.
pub fn t_poly_homogeneous(n: usize, degrees: std::ops::RangeInclusive<usize>, max_terms: usize) -> impl Strategy<Value = Poly> {
    degrees.prop_flat_map(move |d| {
        prop::collection::vec((t_monomial(n, d..=d), coeff()), 1..=max_terms)
            .prop_map(move |terms| Poly::from_terms(Ambient::new(n), terms))
    })
}

/// Rationals with denominator ≥ 2 in lowest terms, so never an integer.
pub fn non_integer_q() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 2i64..=7)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
        .prop_filter("non-integer", |q| !q.is_integer())
}

pub fn kappa() -> KappaRational {
    KappaRational::kappa()
}
