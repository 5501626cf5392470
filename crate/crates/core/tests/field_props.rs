mod common;

use common::{kappa_rational, small_q};
use plurikit::field::{asc_poch, desc_poch, KappaPoly, KappaRational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(x in kappa_rational(), y in kappa_rational(), z in kappa_rational()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x - &x, KappaRational::zero());
    }

    #[test]
    fn inverses(x in kappa_rational()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.inv().unwrap().inv().unwrap(), x);
    }

    #[test]
    fn zero_has_no_inverse(x in kappa_rational()) {
        let z = &x - &x;
        prop_assert!(z.inv().is_err());
        prop_assert!(x.checked_div(&z).is_err());
    }

    #[test]
    fn pochhammer_shift(x in kappa_rational(), r in 0u32..=8) {
        let shifted = &x + &KappaRational::from_int(r as i64 - 1);
        prop_assert_eq!(asc_poch(&x, r), desc_poch(&shifted, r));
    }

    #[test]
    fn canonical_form(n in common::kappa_poly(2), d in common::kappa_poly(2), c in common::kappa_poly(1)) {
        prop_assume!(!d.is_zero() && !c.is_zero());
        let a = KappaRational::new(n.clone(), d.clone()).unwrap();
        let b = KappaRational::new(mul(&c, &n), mul(&c, &d)).unwrap();
        prop_assert_eq!(a.numer(), b.numer());
        prop_assert_eq!(a.denom(), b.denom());
        prop_assert!(a.denom().leading() == plurikit::field::BigRational::from_integer(1.into()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in kappa_rational(), y in kappa_rational(), q in small_q()) {
        if let (Ok(a), Ok(b)) = (x.eval_at(&q), y.eval_at(&q)) {
            prop_assert_eq!((&x * &y).eval_at(&q).unwrap(), &a * &b);
            prop_assert_eq!((&x + &y).eval_at(&q).unwrap(), a + b);
        }
    }

    #[test]
    fn json_round_trip(x in kappa_rational()) {
        prop_assert_eq!(KappaRational::from_json(&x.to_json()).unwrap(), x);
    }
}

fn mul(a: &KappaPoly, b: &KappaPoly) -> KappaPoly {
    (KappaRational::from_poly(a.clone()) * KappaRational::from_poly(b.clone())).numer().clone()
}
