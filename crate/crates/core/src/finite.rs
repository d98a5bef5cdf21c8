//! Truncated sums `Z_p` reduced modulo prime powers, and the double shuffle
//! congruences they satisfy prime by prime.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::index::{b_binom, compositions_below};
use crate::verdict::{DsrVerdict, Verdict};
use crate::{Error, Index, LinComb, Result};

/// Invariant: `p` prime, `n >= 1`, `0 <= residue < p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModPrimePower {
    pub p: u64,
    pub n: u32,
    pub residue: u64,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn modulus(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("exponent n must be at least 1".into()));
    }
    p.checked_pow(n)
        .filter(|q| *q < 1 << 31)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{n} is too large")))
}

impl ModPrimePower {
    pub fn new(value: i128, p: u64, n: u32) -> Result<Self> {
        let q = modulus(p, n)? as i128;
        Ok(ModPrimePower { p, n, residue: value.rem_euclid(q) as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    fn with(self, residue: u64) -> Self {
        ModPrimePower { residue: residue % self.modulus(), ..self }
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

impl Add for ModPrimePower {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        debug_assert_eq!((self.p, self.n), (other.p, other.n));
        self.with(self.residue + other.residue)
    }
}

impl Mul for ModPrimePower {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        debug_assert_eq!((self.p, self.n), (other.p, other.n));
        self.with(self.residue * other.residue)
    }
}

impl Neg for ModPrimePower {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.modulus() - self.residue)
    }
}

impl fmt::Display for ModPrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.n)
    }
}

/// Inverse of a unit modulo `q`.
fn inverse(a: i128, q: i128) -> Option<i128> {
    let g = a.rem_euclid(q).extended_gcd(&q);
    (g.gcd == 1).then(|| g.x.rem_euclid(q))
}

/// Reduces a fraction whose denominator is prime to `p`.
pub fn reduce_rational(x: &BigRational, p: u64, n: u32) -> Result<ModPrimePower> {
    let q = modulus(p, n)?;
    let big_q = BigInt::from(q);
    let num = x.numer().mod_floor(&big_q).to_i128().expect("below modulus");
    let den = x.denom().mod_floor(&big_q).to_i128().expect("below modulus");
    let inv = inverse(den, q as i128).ok_or(Error::NonUnit { value: x.to_string(), p, n })?;
    ModPrimePower::new(num * inv, p, n)
}

/// `Z_p(k)` computed in `Z/p^n`: increasing chains below `p` with modular inverse powers.
pub fn z_trunc_mod(k: &Index, p: u64, n: u32) -> Result<ModPrimePower> {
    let q = modulus(p, n)? as i128;
    let p_us = p as usize;
    // chain[a]: chains ending at a, with the empty chain at 0
    let mut chain = vec![0i128; p_us];
    chain[0] = 1;
    let inv: Vec<i128> = (0..p_us).map(|a| if a == 0 { 0 } else { inverse(a as i128, q).expect("a < p is a unit") }).collect();
    for &e in k.entries() {
        let mut next = vec![0i128; p_us];
        let mut below = 0i128;
        for a in 1..p_us {
            below = (below + chain[a - 1]) % q;
            let mut f = 1i128;
            for _ in 0..e {
                f = f * inv[a] % q;
            }
            next[a] = below * f % q;
        }
        chain = next;
    }
    let total = chain.iter().fold(0i128, |s, v| (s + v) % q);
    ModPrimePower::new(total, p, n)
}

fn linear_mod(w: &LinComb, p: u64, n: u32) -> Result<ModPrimePower> {
    let mut acc = ModPrimePower::new(0, p, n)?;
    for (k, c) in w.index_terms()? {
        acc = acc + reduce_rational(&c, p, n)? * z_trunc_mod(&k, p, n)?;
    }
    Ok(acc)
}

fn compare(what: &str, lhs: ModPrimePower, rhs: ModPrimePower) -> Verdict {
    if lhs == rhs {
        Verdict::Holds
    } else {
        Verdict::fails(what, None, lhs, rhs)
    }
}

/// `Z_p(k * l) = Z_p(k) Z_p(l)` and
/// `Z_p(k sh l) = (-1)^{wt l} sum_{wt l' < n} b(l; l') Z_p(k, rev(l + l')) p^{wt l'}`, modulo `p^n`.
pub fn check_hat_a_dsr(k: &Index, l: &Index, p: u64, n: u32) -> Result<DsrVerdict> {
    let (zk, zl) = (LinComb::from_index(k), LinComb::from_index(l));
    let lhs = linear_mod(&zk.harmonic(&zl)?, p, n)?;
    let rhs = z_trunc_mod(k, p, n)? * z_trunc_mod(l, p, n)?;
    let harmonic = compare("harmonic congruence", lhs, rhs);

    let lhs = linear_mod(&zk.shuffle(&zl), p, n)?;
    let mut rhs = ModPrimePower::new(0, p, n)?;
    for lp in compositions_below(l.depth(), n) {
        let c = b_binom(l.entries(), &lp)?;
        if c.is_zero() {
            continue;
        }
        let w: u32 = lp.iter().sum();
        let scale = BigInt::from(p).pow(w) * c;
        let idx = k.concat(&l.add_composition(&lp)?.reversed());
        rhs = rhs + reduce_rational(&BigRational::from_integer(scale), p, n)? * z_trunc_mod(&idx, p, n)?;
    }
    if l.weight() % 2 == 1 {
        rhs = -rhs;
    }
    let shuffle = compare("shuffle congruence", lhs, rhs);
    Ok(DsrVerdict { harmonic, shuffle })
}

/// Exact `Z_p(k)` as a fraction, for cross-checks against the modular path.
pub fn z_trunc_exact(k: &Index, p: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    crate::truncated::z_trunc(k, p)
}
