//! Truncated power series in `t`, kept modulo `t^N`.

use std::fmt;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::index::shifted_binomial;
use crate::scalar::{parse_rational, Scalar};
use crate::{Error, Result};

/// Coefficients of `t^0 .. t^{N-1}`; the order `N` is at least 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

pub type TruncatedSeries = Series<BigRational>;

impl<S: Scalar> Series<S> {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Series { coeffs: vec![S::zero(); order] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(S::one(), order)
    }

    /// `c t^power`, or zero when `power >= order`.
    pub fn monomial(c: S, power: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series order must be at least 1".into()));
        }
        Ok(Series { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        out -= other;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product modulo `t^N`; orders must agree.
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        debug_assert_eq!(n, other.order());
        let mut out = vec![S::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &S) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    /// Multiplication by `t^m` modulo `t^N`.
    pub fn shift(&self, m: usize) -> Self {
        let n = self.order();
        let mut out = vec![S::zero(); n];
        for i in 0..n.saturating_sub(m) {
            out[i + m] = self.coeffs[i].clone();
        }
        Series { coeffs: out }
    }

    /// Reduction to a smaller order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order == 0 || order > self.order() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate order {} series to order {order}",
                self.order()
            )));
        }
        Ok(Series { coeffs: self.coeffs[..order].to_vec() })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Series<T> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<S: Scalar> AddAssign<&Series<S>> for Series<S> {
    /// Panics on order mismatch; use [`Series::checked_add`] for untrusted input.
    fn add_assign(&mut self, other: &Series<S>) {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone();
        }
    }
}

impl<S: Scalar> SubAssign<&Series<S>> for Series<S> {
    fn sub_assign(&mut self, other: &Series<S>) {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() - b.clone();
        }
    }
}

/// Expansion of `1/(n + t)^k` modulo `t^N`; `n` must be nonzero.
pub fn expand_inverse_power<S: Scalar>(n: i64, k: u32, order: usize) -> Result<Series<S>> {
    if n == 0 {
        return Err(Error::Singular(format!("1/(0 + t)^{k} has no power series expansion")));
    }
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let coeffs = (0..order as u32)
        .map(|l| {
            let b = shifted_binomial(k, l);
            let b = if l % 2 == 1 { -b } else { b };
            S::from_bigint(&b) * S::inv_pow(n, k + l)
        })
        .collect();
    Ok(Series { coeffs })
}

impl Series<BigRational> {
    pub fn to_f64(&self) -> Series<f64> {
        self.map(crate::scalar::rational_to_f64)
    }

    pub fn from_integers(v: &[i64]) -> Result<Self> {
        Series::from_coeffs(v.iter().map(|&n| BigRational::from_integer(BigInt::from(n))).collect())
    }
}

impl fmt::Display for Series<BigRational> {
    /// `c0 + c1*t + c2*t^2`, dropping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(t^{})", parts.join(" + "), self.order())
    }
}

/// Wire form: `{"order": N, "coeffs": ["p/q", ...]}` with fractions in lowest terms.
#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series<BigRational> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series<BigRational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(d)?;
        if raw.order != raw.coeffs.len() {
            return Err(D::Error::custom(format!(
                "order {} does not match {} coefficients",
                raw.order,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Series::from_coeffs(coeffs).map_err(D::Error::custom)
    }
}
