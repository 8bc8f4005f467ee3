//! Coefficient types.
//!
//! Every polynomial in the crate is generic over a [`Scalar`]. The checker
//! relies on exact arithmetic, so the default instantiation is
//! [`BigRational`]; `f64` is supported for quick numeric experiments where
//! exactness does not matter.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A field element usable as a polynomial coefficient.
pub trait Scalar: Clone + PartialEq + Debug + Signed + FromPrimitive + Send + Sync + 'static {
    /// Builds `numer / denom`. `denom` is never zero.
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self;

    /// Exact rational value, used for printing. `None` for non-finite values.
    fn to_fraction(&self) -> Option<BigRational>;

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every scalar type represents small integers")
    }
}

impl Scalar for BigRational {
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom)
    }

    fn to_fraction(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl Scalar for f64 {
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom).to_f64().unwrap_or(f64::NAN)
    }

    fn to_fraction(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Scalar for f32 {
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom).to_f32().unwrap_or(f32::NAN)
    }

    fn to_fraction(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}
