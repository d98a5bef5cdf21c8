//! Truncated Mordell-Tornheim sums and their t-adic symmetric shuffle versions,
//! read both from words and from star-shaped colored trees.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::index::{compositions_below, shifted_binomial};
use crate::scalar::Scalar;
use crate::trees::{tree_value, tree_value_general, ColoredTree, EdgeIndex};
use crate::verdict::{compare_series, Verdict};
use crate::{Error, Index, LinComb, Result, Series, TruncatedSeries, TruncatedValues, TruncationParams, Word};

/// `(k_1, ..., k_r; k_{r+1})` with `r >= 1` and at most one zero entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MtIndex {
    heads: Vec<u32>,
    tail: u32,
}

impl MtIndex {
    pub fn new(heads: Vec<u32>, tail: u32) -> Result<Self> {
        if heads.is_empty() {
            return Err(Error::InvalidArgument("a Mordell-Tornheim index needs r >= 1".into()));
        }
        let zeros = heads.iter().filter(|&&k| k == 0).count() + usize::from(tail == 0);
        if zeros > 1 {
            return Err(Error::InvalidArgument(format!(
                "at most one entry of a Mordell-Tornheim index may be zero, got {zeros}"
            )));
        }
        Ok(MtIndex { heads, tail })
    }

    pub fn heads(&self) -> &[u32] {
        &self.heads
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn depth(&self) -> usize {
        self.heads.len()
    }

    pub fn weight(&self) -> u32 {
        self.heads.iter().sum::<u32>() + self.tail
    }

    /// Every index with `1 <= r <= max_depth` and weight at most `max_weight`.
    pub fn all_up_to(max_weight: u32, max_depth: usize) -> Vec<MtIndex> {
        let mut out = Vec::new();
        for r in 1..=max_depth {
            for entries in compositions_below(r + 1, max_weight + 1) {
                if let Ok(idx) = MtIndex::new(entries[..r].to_vec(), entries[r]) {
                    out.push(idx);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for MtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let heads: Vec<String> = self.heads.iter().map(u32::to_string).collect();
        write!(f, "{};{}", heads.join(","), self.tail)
    }
}

impl FromStr for MtIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (heads, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("`{s}` is not of the form k1,...,kr;k")))?;
        let num = |t: &str| {
            t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("`{t}` is not a non-negative integer")))
        };
        let heads = if heads.trim().is_empty() {
            Vec::new()
        } else {
            heads.split(',').map(num).collect::<Result<Vec<_>>>()?
        };
        MtIndex::new(heads, num(tail)?)
    }
}

impl TryFrom<String> for MtIndex {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MtIndex> for String {
    fn from(k: MtIndex) -> String {
        k.to_string()
    }
}

/// `sum_{m_i > 0, m_1 + ... + m_r < M} prod m_i^{-k_i} (m_1 + ... + m_r)^{-k_{r+1}}`.
pub fn mt_trunc(idx: &MtIndex, m: u64) -> BigRational {
    mt_trunc_raw(&idx.heads, idx.tail, m)
}

/// Convolves the head factors over the running sum, then weights by the sum.
fn mt_trunc_raw(heads: &[u32], tail: u32, m: u64) -> BigRational {
    let m = m as usize;
    if m <= 1 {
        return BigRational::zero();
    }
    // by_sum[s] sums the head factors over tuples with total s
    let mut by_sum = vec![BigRational::zero(); m];
    by_sum[0] = BigRational::one();
    for &k in heads {
        let powers: Vec<BigRational> = (0..m).map(|a| if a == 0 { BigRational::zero() } else { BigRational::inv_pow(a as i64, k) }).collect();
        let mut next = vec![BigRational::zero(); m];
        for (s, slot) in next.iter_mut().enumerate().skip(1) {
            for a in 1..=s {
                if !by_sum[s - a].is_zero() {
                    *slot += &by_sum[s - a] * &powers[a];
                }
            }
        }
        by_sum = next;
    }
    by_sum
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| v * BigRational::inv_pow(s as i64, tail))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn shuffle_of(entries: impl IntoIterator<Item = u32>) -> LinComb {
    entries
        .into_iter()
        .fold(LinComb::one(), |acc, k| acc.shuffle(&LinComb::from_index(&Index::from_vec_unchecked(vec![k]))))
}

/// `(z_{k_1} sh ... sh z_{k_r}) x^{k_{r+1}}`, or with a zero head `k_i` dropped,
/// `(sh of the other z_{k_j}) z_{k_{r+1}}`.
pub fn mt_word(idx: &MtIndex) -> LinComb {
    match idx.heads.iter().position(|&k| k == 0) {
        None => shuffle_of(idx.heads.iter().copied()).append_word(&Word::x_power(idx.tail)),
        Some(i) => {
            let others = idx.heads.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| k);
            shuffle_of(others).append_word(&Word::from_index(&Index::from_vec_unchecked(vec![idx.tail])))
        }
    }
}

/// The t-adic symmetric shuffle value of [`mt_word`].
pub fn mt_sh_series(idx: &MtIndex, values: &TruncatedValues) -> Result<TruncatedSeries> {
    values.sh_linear(&mt_word(idx))
}

/// Leaves `v1..vr` joined to a white center `w`, which joins the root `v{r+1}`;
/// edge `i` carries `k_i`, the last edge carries `k_{r+1}`.
pub fn star_tree(idx: &MtIndex) -> (ColoredTree, EdgeIndex) {
    let r = idx.depth();
    let leaf = |i: usize| format!("v{i}");
    let mut vertices: Vec<String> = (1..=r + 1).map(leaf).collect();
    vertices.push("w".into());
    let mut edges: Vec<(String, String)> = (1..=r).map(|i| (leaf(i), "w".to_string())).collect();
    edges.push(("w".into(), leaf(r + 1)));
    let black: Vec<String> = (1..=r + 1).map(leaf).collect();
    let tree = ColoredTree::new(&vertices, &edges, &leaf(r + 1), &black).expect("star trees are valid");
    let mut labels = idx.heads.clone();
    labels.push(idx.tail);
    (tree, EdgeIndex::new(labels))
}

/// Word value against the star-tree value, computed directly and through harvest.
pub fn check_mt_tree(idx: &MtIndex, params: TruncationParams) -> Result<Verdict> {
    let values = TruncatedValues::new(params);
    let word = mt_sh_series(idx, &values)?;
    let (x, k) = star_tree(idx);
    let direct = tree_value(&x, &k, params)?;
    let via_harvest = tree_value_general(&x, &k, params)?;
    Ok(compare_series("word value equals star-tree value", &word, &direct)
        .and(|| compare_series("harvested star tree equals direct value", &via_harvest, &direct)))
}

fn sign(exponent: u32) -> BigRational {
    if exponent % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// `sum_{l + l' < N} binom(a+l-1, l) binom(b+l'-1, l') f(l, l') t^{l+l'}`, skipping zero binomials.
fn double_binomial_sum(
    a: u32,
    b: u32,
    order: usize,
    mut f: impl FnMut(u32, u32) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let mut acc = Series::zero(order);
    for ll in compositions_below(2, order as u32) {
        let (l, lp) = (ll[0], ll[1]);
        let c: BigInt = shifted_binomial(a, l) * shifted_binomial(b, lp);
        if c.is_zero() {
            continue;
        }
        acc += &f(l, lp)?.scale(&BigRational::from_integer(c)).shift((l + lp) as usize);
    }
    Ok(acc)
}

/// The t-expansion with truncated Mordell-Tornheim sums as coefficients.
pub fn check_mt_t_expansion(idx: &MtIndex, params: TruncationParams) -> Result<Verdict> {
    let values = TruncatedValues::new(params);
    let order = params.order();
    let lhs = mt_sh_series(idx, &values)?;
    let mut rhs = Series::constant(mt_trunc(idx, params.m()), order);
    for i in 0..idx.depth() {
        let ki = idx.heads[i];
        let part = double_binomial_sum(ki, idx.tail, order, |l, lp| {
            let mut heads: Vec<u32> = idx.heads.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &k)| k).collect();
            heads.push(idx.tail + lp);
            Ok(Series::constant(mt_trunc_raw(&heads, ki + l, params.m()), order))
        })?;
        rhs += &part.scale(&sign(ki + idx.tail));
    }
    Ok(compare_series("t-expansion by truncated Mordell-Tornheim sums", &lhs, &rhs))
}

/// Exchanging the roles of `k_1` and `k_{r+1}` by moving the root to the first leaf.
pub fn check_mt_root_relation(idx: &MtIndex, params: TruncationParams) -> Result<Verdict> {
    let values = TruncatedValues::new(params);
    let lhs = mt_sh_series(idx, &values)?;
    let (k1, tail) = (idx.heads[0], idx.tail);
    let rhs = double_binomial_sum(k1, tail, params.order(), |l, lp| {
        let mut heads = idx.heads.clone();
        heads[0] = tail + lp;
        mt_sh_series(&MtIndex::new(heads, k1 + l)?, &values)
    })?
    .scale(&sign(k1 + tail));
    Ok(compare_series("root exchange relation", &lhs, &rhs))
}

/// Constant terms of `Z^sh(z_{k_1} sh ... sh z_{k_r}) = (-1)^{k_1} Z^sh((z_{k_2} sh ... sh z_{k_r}) z_{k_1})`,
/// and with `l` given, of `Z^sh((z_{k_1} sh ... sh z_{k_r}) x^l) = (-1)^{k_1+l} Z^sh((z_{k_2} sh ... sh z_{k_r} sh z_l) x^{k_1})`.
pub fn check_mt_corollary_t0(k: &[u32], l: Option<u32>, m: u64) -> Result<Verdict> {
    if k.is_empty() || k.contains(&0) {
        return Err(Error::InvalidArgument("the entries k_1, ..., k_r must be positive".into()));
    }
    if l == Some(0) {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    let values = TruncatedValues::new(TruncationParams::new(m, 1)?);
    let rest = k[1..].iter().copied();
    let (lhs, rhs, s) = match l {
        None => (
            shuffle_of(k.iter().copied()),
            shuffle_of(rest).append_word(&Word::from_index(&Index::from_vec_unchecked(vec![k[0]]))),
            k[0],
        ),
        Some(l) => (
            shuffle_of(k.iter().copied()).append_word(&Word::x_power(l)),
            shuffle_of(rest.chain([l])).append_word(&Word::x_power(k[0])),
            k[0] + l,
        ),
    };
    let lhs = values.sh_linear(&lhs)?;
    let rhs = values.sh_linear(&rhs)?.scale(&sign(s));
    Ok(compare_series("constant-term root exchange", &lhs, &rhs))
}
