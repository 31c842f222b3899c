//! Exact rational arithmetic. All weights, scores, and indicator values stay
//! rational internally; conversion to floating point happens only at report
//! emission.

use num::{BigInt, BigRational, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: u64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Sum an iterator of rationals exactly.
pub fn rat_sum<'a>(values: impl Iterator<Item = &'a Rat>) -> Rat {
    values.fold(Rat::zero(), |acc, v| acc + v)
}
