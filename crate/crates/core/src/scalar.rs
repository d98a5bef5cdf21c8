//! Coefficient fields shared by the exact and floating-point evaluators.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `n^{-k}`; `n` must be nonzero.
    fn inv_pow(n: i64, k: u32) -> Self;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn inv_pow(n: i64, k: u32) -> Self {
        debug_assert!(n != 0);
        let d = num_traits::pow(BigInt::from(n), k as usize);
        BigRational::new(BigInt::one(), d)
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn inv_pow(n: i64, k: u32) -> Self {
        debug_assert!(n != 0);
        (n as f64).powi(-(k as i32))
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| crate::Error::Parse(format!("`{s}` is not a fraction: {e}")))
}
