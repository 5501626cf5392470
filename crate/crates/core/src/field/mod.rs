//! Exact coefficient arithmetic: ℚ, the polynomial ring ℚ[κ] and the
//! rational function field ℚ(κ).

mod json;
mod kappa_poly;
mod pochhammer;
mod rational;

pub use json::{parse_rational, rational_to_string};
pub use kappa_poly::KappaPoly;
pub use pochhammer::{asc_poch, asc_poch_int, desc_poch, desc_poch_int, factorial};
pub use rational::KappaRational;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// How κ is treated by a computation.
///
/// `Symbolic` keeps κ as the indeterminate of ℚ(κ). `Specialized(q)` fixes
/// κ = q up front; every coefficient is then a constant and divisions by a
/// factor vanishing at q surface as `PoleAtKappa`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum KappaMode {
    #[default]
    Symbolic,
    Specialized(BigRational),
}

impl KappaMode {
    pub fn kappa(&self) -> KappaRational {
        match self {
            KappaMode::Symbolic => KappaRational::kappa(),
            KappaMode::Specialized(q) => KappaRational::from_rational(q.clone()),
        }
    }

    pub fn specialized(&self) -> Option<&BigRational> {
        match self {
            KappaMode::Symbolic => None,
            KappaMode::Specialized(q) => Some(q),
        }
    }

    /// Integer value of κ when specialized at an integer.
    pub fn integer_value(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.specialized().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
    }
}
