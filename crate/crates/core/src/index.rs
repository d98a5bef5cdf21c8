//! Indices (tuples of positive integers), nonnegative compositions and the
//! shifted binomial weights attached to them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite tuple of positive integers. The empty tuple is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::NonPositiveEntry(0));
        }
        Ok(Index(entries))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// Caller guarantees every entry is positive.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.contains(&0));
        Index(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    /// Number of trailing entries equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&k| k == 1).count()
    }

    pub fn reversed(&self) -> Self {
        Index(self.0.iter().rev().copied().collect())
    }

    /// `(k_1, ..., k_i)`.
    pub fn prefix(&self, i: usize) -> Result<Self> {
        self.check_pos(i)?;
        Ok(Index(self.0[..i].to_vec()))
    }

    /// `(k_{i+1}, ..., k_r)`.
    pub fn suffix(&self, i: usize) -> Result<Self> {
        self.check_pos(i)?;
        Ok(Index(self.0[i..].to_vec()))
    }

    /// Prefix, reversed suffix and suffix at split position `i`.
    pub fn slices(&self, i: usize) -> Result<(Self, Self, Self)> {
        let suffix = self.suffix(i)?;
        Ok((self.prefix(i)?, suffix.reversed(), suffix))
    }

    pub fn concat(&self, other: &Index) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// Entrywise sum with a nonnegative composition of the same depth.
    pub fn add_composition(&self, l: &[u32]) -> Result<Self> {
        if l.len() != self.depth() {
            return Err(Error::LengthMismatch { left: self.depth(), right: l.len() });
        }
        Ok(Index(self.0.iter().zip(l).map(|(a, b)| a + b).collect()))
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i > self.depth() {
            return Err(Error::OutOfRange { pos: i, depth: self.depth() });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(k: Index) -> Self {
        k.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Comma-separated positive integers; an empty or `()` string is the empty index.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "∅" {
            return Ok(Index::empty());
        }
        let mut v = Vec::new();
        for part in t.split(',') {
            let n: i64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{part}` is not an integer in index `{s}`")))?;
            if n <= 0 {
                return Err(Error::Parse(format!("index `{s}` has non-positive entry {n}")));
            }
            v.push(u32::try_from(n).map_err(|_| Error::Parse(format!("entry {n} too large")))?);
        }
        Ok(Index(v))
    }
}

/// `binom(k + l - 1, l)`, equal to 1 when `k = l = 0` and 0 when `k = 0 < l`.
pub fn shifted_binomial(k: u32, l: u32) -> BigInt {
    if k == 0 {
        return if l == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let mut acc = BigInt::one();
    for j in 0..l {
        acc *= BigInt::from(k + j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// `prod_j binom(k_j + l_j - 1, l_j)` for tuples of equal length.
pub fn b_binom(k: &[u32], l: &[u32]) -> Result<BigInt> {
    if k.len() != l.len() {
        return Err(Error::LengthMismatch { left: k.len(), right: l.len() });
    }
    Ok(k.iter().zip(l).map(|(&a, &b)| shifted_binomial(a, b)).product())
}

/// All nonnegative tuples of length `len` with weight exactly `w`, in lexicographic order.
pub fn compositions_of_weight(len: usize, w: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; len];
    fill_compositions(&mut cur, 0, w, &mut out);
    out
}

fn fill_compositions(cur: &mut Vec<u32>, pos: usize, rest: u32, out: &mut Vec<Vec<u32>>) {
    if pos == cur.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for a in 0..=rest {
        cur[pos] = a;
        fill_compositions(cur, pos + 1, rest - a, out);
    }
}

/// All nonnegative tuples of length `len` with weight below `bound`.
pub fn compositions_below(len: usize, bound: u32) -> Vec<Vec<u32>> {
    (0..bound).flat_map(|w| compositions_of_weight(len, w)).collect()
}

/// All indices of weight exactly `w` (compositions into positive parts).
pub fn indices_of_weight(w: u32) -> Vec<Index> {
    if w == 0 {
        return vec![Index::empty()];
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for rest in indices_of_weight(w - first) {
            let mut v = vec![first];
            v.extend_from_slice(rest.entries());
            out.push(Index(v));
        }
    }
    out
}

/// All indices of weight at most `w`, including the empty index.
pub fn indices_up_to_weight(w: u32) -> Vec<Index> {
    (0..=w).flat_map(indices_of_weight).collect()
}
