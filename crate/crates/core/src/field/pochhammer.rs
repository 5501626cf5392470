//! Rising and falling factorials. Both conventions are used side by side,
//! so they are kept as separately named functions.

use super::KappaRational;

/// Rising factorial `x (x+1) ⋯ (x+r−1)`; `r = 0` gives 1.
pub fn asc_poch(x: &KappaRational, r: u32) -> KappaRational {
    (0..r).fold(KappaRational::one(), |acc, i| acc * (x + &KappaRational::from_int(i as i64)))
}

/// Falling factorial `x (x−1) ⋯ (x−r+1)`; `r = 0` gives 1.
pub fn desc_poch(x: &KappaRational, r: u32) -> KappaRational {
    (0..r).fold(KappaRational::one(), |acc, i| acc * (x - &KappaRational::from_int(i as i64)))
}

/// Integer rising factorial, used by the pullback constants.
pub fn asc_poch_int(x: i64, r: u32) -> num_bigint::BigInt {
    (0..r as i64).map(|i| num_bigint::BigInt::from(x + i)).product()
}

/// Integer falling factorial.
pub fn desc_poch_int(x: i64, r: u32) -> num_bigint::BigInt {
    (0..r as i64).map(|i| num_bigint::BigInt::from(x - i)).product()
}

pub fn factorial(n: u32) -> num_bigint::BigInt {
    (1..=n as i64).map(num_bigint::BigInt::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::KappaPoly;

    #[test]
    fn ascending_examples() {
        let km1 = KappaRational::kappa_plus(-1);
        assert_eq!(asc_poch(&km1, 0), KappaRational::one());
        assert_eq!(asc_poch(&km1, 2), KappaRational::from_poly(KappaPoly::from_i64s(&[0, -1, 1])));
        assert_eq!(asc_poch(&KappaRational::from_int(3), 3), KappaRational::from_int(60));
    }

    #[test]
    fn descending_examples() {
        let x = KappaRational::from_ratio(7, 3);
        assert_eq!(desc_poch(&x, 1), x);
        assert_eq!(desc_poch(&KappaRational::from_int(5), 3), KappaRational::from_int(60));
        assert_eq!(desc_poch(&KappaRational::kappa(), 2), KappaRational::from_poly(KappaPoly::from_i64s(&[0, -1, 1])));
    }

    #[test]
    fn integer_variants_agree() {
        for x in -4..6 {
            for r in 0..5 {
                assert_eq!(
                    KappaRational::from_bigint(asc_poch_int(x, r)),
                    asc_poch(&KappaRational::from_int(x), r)
                );
                assert_eq!(
                    KappaRational::from_bigint(desc_poch_int(x, r)),
                    desc_poch(&KappaRational::from_int(x), r)
                );
            }
        }
        assert_eq!(factorial(5), 120.into());
    }
}
