//! Truncated multiple harmonic sums and their t-adic symmetric versions.
//!
//! Both t-adic evaluators split the index at every position `i`: the prefix
//! runs over an increasing positive chain, the suffix over a negative chain
//! whose factors `1/(n + t)^k` are expanded as series. The star version bounds
//! each chain by `M`; the shuffle version bounds the gap `n_i - n_{i+1}` across
//! the split, which is a convolution of the two chain tables.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::index::{b_binom, compositions_below, compositions_of_weight, shifted_binomial};
use crate::scalar::Scalar;
use crate::series::Series;
use crate::verdict::{compare_rational, compare_series, DsrVerdict, Verdict};
use crate::{Bullet, Error, Index, LinComb, Result, TruncatedSeries};

/// Summation bound `M >= 1` and series order `N >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationParams {
    m: u64,
    order: usize,
}

impl TruncationParams {
    pub fn new(m: u64, order: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("truncation bound M must be at least 1".into()));
        }
        if order == 0 {
            return Err(Error::InvalidArgument("series order N must be at least 1".into()));
        }
        Ok(TruncationParams { m, order })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `table[a]` sums `prod 1/n_j^{k_j}` over `0 < n_1 < ... < n_r = a < m`;
/// the empty chain sits at `a = 0`.
pub(crate) fn increasing_chains<S: Scalar>(k: &[u32], m: u64) -> Vec<S> {
    let m = m as usize;
    let mut table = vec![S::zero(); m];
    table[0] = S::one();
    for &e in k {
        let mut next = vec![S::zero(); m];
        let mut below = S::zero();
        for a in 1..m {
            below = below + table[a - 1].clone();
            if !below.is_zero() {
                next[a] = below.clone() * S::inv_pow(a as i64, e);
            }
        }
        table = next;
    }
    table
}

/// `(-1)^l binom(k + l - 1, l)` for `l < order`, as scalars.
fn signed_binomials<S: Scalar>(k: u32, order: usize) -> Vec<S> {
    (0..order as u32)
        .map(|l| {
            let b = shifted_binomial(k, l);
            S::from_bigint(&if l % 2 == 1 { -b } else { b })
        })
        .collect()
}

/// Expansion of `1/(t - b)^k` from precomputed signed binomials.
fn inverse_shifted<S: Scalar>(b: u64, k: u32, signed: &[S]) -> Series<S> {
    let n = -(b as i64);
    let coeffs = signed.iter().enumerate().map(|(l, c)| c.clone() * S::inv_pow(n, k + l as u32)).collect();
    Series::from_coeffs(coeffs).expect("order is positive")
}

/// Chain tables for every split position, combined by `bullet`.
pub(crate) fn split_sum<S: Scalar>(k: &[u32], params: TruncationParams, bullet: Bullet) -> Series<S> {
    let (m, order) = (params.m as usize, params.order);
    let r = k.len();
    let prefixes: Vec<Vec<S>> = (0..=r).map(|i| increasing_chains(&k[..i], params.m)).collect();

    // neg[b]: suffix chains m_{i+1} = b > ... > m_r > 0 with factors 1/(t - m_j)^{k_j}.
    let mut neg: Vec<Series<S>> = vec![Series::zero(order); m];
    neg[0] = Series::one(order);
    let mut total = Series::zero(order);
    for i in (0..=r).rev() {
        if i < r {
            let signed = signed_binomials::<S>(k[i], order);
            let mut next = vec![Series::zero(order); m];
            let mut below: Series<S> = Series::zero(order);
            for b in 1..m {
                below += &neg[b - 1];
                if !below.is_zero() {
                    next[b] = below.mul_unchecked(&inverse_shifted(b as u64, k[i], &signed));
                }
            }
            neg = next;
        }
        let pre = &prefixes[i];
        match bullet {
            Bullet::Star => {
                let p: S = pre.iter().cloned().fold(S::zero(), |a, b| a + b);
                if p.is_zero() {
                    continue;
                }
                let mut q = Series::zero(order);
                for s in &neg {
                    q += s;
                }
                total += &q.scale(&p);
            }
            Bullet::Shuffle => {
                let mut cumulative = Vec::with_capacity(m);
                let mut acc: Series<S> = Series::zero(order);
                for s in &neg {
                    acc += s;
                    cumulative.push(acc.clone());
                }
                for (a, p) in pre.iter().enumerate() {
                    if !p.is_zero() {
                        total += &cumulative[m - 1 - a].scale(p);
                    }
                }
            }
        }
    }
    total
}

/// `Z_M(k) = sum_{0 < n_1 < ... < n_r < M} prod 1/n_j^{k_j}`; `Z_M(()) = 1`.
pub fn z_trunc(k: &Index, m: u64) -> Result<BigRational> {
    z_trunc_in::<BigRational>(k, m)
}

pub fn z_trunc_in<S: Scalar>(k: &Index, m: u64) -> Result<S> {
    if m == 0 {
        return Err(Error::InvalidArgument("truncation bound M must be at least 1".into()));
    }
    Ok(increasing_chains::<S>(k.entries(), m).into_iter().fold(S::zero(), |a, b| a + b))
}

/// Linear extension of `Z_M` to `H^1`.
pub fn z_trunc_linear(w: &LinComb, m: u64) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (k, c) in w.index_terms()? {
        acc += c * z_trunc(&k, m)?;
    }
    Ok(acc)
}

pub fn star_series(k: &Index, params: TruncationParams) -> TruncatedSeries {
    split_sum(k.entries(), params, Bullet::Star)
}

pub fn sh_series(k: &Index, params: TruncationParams) -> TruncatedSeries {
    split_sum(k.entries(), params, Bullet::Shuffle)
}

pub fn hat_series(k: &Index, bullet: Bullet, params: TruncationParams) -> TruncatedSeries {
    split_sum(k.entries(), params, bullet)
}

/// Floating-point version of [`hat_series`] for large `M`.
pub fn hat_series_f64(k: &Index, bullet: Bullet, params: TruncationParams) -> Series<f64> {
    split_sum(k.entries(), params, bullet)
}

/// `n` for `n > 0` and `n + t` for `n < 0`, modulo `t^N`.
pub fn kontsevich_factor(n: i64, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("Kontsevich factor is undefined at 0".into()));
    }
    let mut s = Series::constant(BigRational::from_integer(BigInt::from(n)), order);
    if n < 0 && order > 1 {
        s = s.checked_add(&Series::monomial(BigRational::one(), 1, order))?;
    }
    Ok(s)
}

/// The word whose `Z_M` value is the `t^n` coefficient of the t-adic symmetric value.
pub fn w_hat(k: &Index, bullet: Bullet, n: u32) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for i in 0..=k.depth() {
        let (prefix, _, suffix) = k.slices(i)?;
        let mut tail = LinComb::zero();
        for l in compositions_of_weight(suffix.depth(), n) {
            let c = b_binom(suffix.entries(), &l)?;
            tail.add_index_term(&suffix.add_composition(&l)?.reversed(), BigRational::from_integer(c));
        }
        if tail.is_zero() {
            continue;
        }
        let term = bullet.product(&LinComb::from_index(&prefix), &tail)?;
        let sign = if suffix.weight() % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        out.add_assign(&term.scale(&sign));
    }
    Ok(out)
}

/// Memoizing evaluator for one `(M, N)`; not shared across threads.
pub struct TruncatedValues {
    params: TruncationParams,
    star: RefCell<HashMap<Index, TruncatedSeries>>,
    sh: RefCell<HashMap<Index, TruncatedSeries>>,
    z: RefCell<HashMap<Index, BigRational>>,
}

impl TruncatedValues {
    pub fn new(params: TruncationParams) -> Self {
        TruncatedValues {
            params,
            star: RefCell::default(),
            sh: RefCell::default(),
            z: RefCell::default(),
        }
    }

    pub fn params(&self) -> TruncationParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.params.order
    }

    pub fn hat(&self, k: &Index, bullet: Bullet) -> TruncatedSeries {
        let cache = match bullet {
            Bullet::Star => &self.star,
            Bullet::Shuffle => &self.sh,
        };
        if let Some(s) = cache.borrow().get(k) {
            return s.clone();
        }
        let s = hat_series(k, bullet, self.params);
        cache.borrow_mut().insert(k.clone(), s.clone());
        s
    }

    pub fn star(&self, k: &Index) -> TruncatedSeries {
        self.hat(k, Bullet::Star)
    }

    pub fn sh(&self, k: &Index) -> TruncatedSeries {
        self.hat(k, Bullet::Shuffle)
    }

    pub fn z(&self, k: &Index) -> BigRational {
        if let Some(v) = self.z.borrow().get(k) {
            return v.clone();
        }
        let v = z_trunc(k, self.params.m).expect("M is positive");
        self.z.borrow_mut().insert(k.clone(), v.clone());
        v
    }

    pub fn z_linear(&self, w: &LinComb) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (k, c) in w.index_terms()? {
            acc += c * self.z(&k);
        }
        Ok(acc)
    }

    /// Linear extension of the bullet-valued t-adic value to `H^1`.
    pub fn hat_linear(&self, w: &LinComb, bullet: Bullet) -> Result<TruncatedSeries> {
        let mut acc = Series::zero(self.order());
        for (k, c) in w.index_terms()? {
            acc += &self.hat(&k, bullet).scale(&c);
        }
        Ok(acc)
    }

    pub fn sh_linear(&self, w: &LinComb) -> Result<TruncatedSeries> {
        self.hat_linear(w, Bullet::Shuffle)
    }

    /// Harmonic and shuffle relations for one pair of indices.
    pub fn check_dsr(&self, k: &Index, l: &Index) -> Result<DsrVerdict> {
        let (zk, zl) = (LinComb::from_index(k), LinComb::from_index(l));
        let lhs = self.hat_linear(&zk.harmonic(&zl)?, Bullet::Star)?;
        let rhs = self.star(k).mul_unchecked(&self.star(l));
        let harmonic = compare_series("harmonic relation", &lhs, &rhs);

        let lhs = self.sh_linear(&zk.shuffle(&zl))?;
        let mut rhs = Series::zero(self.order());
        for lp in compositions_below(l.depth(), self.order() as u32) {
            let c = BigRational::from_integer(b_binom(l.entries(), &lp)?);
            let idx = k.concat(&l.add_composition(&lp)?.reversed());
            let w: u32 = lp.iter().sum();
            rhs += &self.sh(&idx).scale(&c).shift(w as usize);
        }
        if l.weight() % 2 == 1 {
            rhs = rhs.neg();
        }
        let shuffle = compare_series("shuffle relation", &lhs, &rhs);
        Ok(DsrVerdict { harmonic, shuffle })
    }

    /// Each coefficient equals `Z_M` of an `H^0` word.
    pub fn check_taylor_identity(&self, k: &Index, bullet: Bullet) -> Result<Verdict> {
        let series = self.hat(k, bullet);
        for n in 0..self.order() {
            let w = w_hat(k, bullet, n as u32)?;
            if !w.in_h0() {
                return Ok(Verdict::fails("coefficient word lies in H^0", Some(n), &w, "H^0 element"));
            }
            let v = self.z_linear(&w)?;
            if &v != series.coeff(n) {
                return Ok(Verdict::fails("coefficient equals Z_M of its word", Some(n), series.coeff(n), v));
            }
        }
        Ok(Verdict::Holds)
    }
}

/// Paired chains with `m_r + n_s < M` summed against `Z_M(z_k sh z_l)`.
pub fn check_partial_fraction_lemma(k: &Index, l: &Index, m: u64) -> Result<Verdict> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::InvalidArgument("both indices must be non-empty".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("truncation bound M must be at least 1".into()));
    }
    let p = increasing_chains::<BigRational>(k.entries(), m);
    let q = increasing_chains::<BigRational>(l.entries(), m);
    let mut lhs = BigRational::zero();
    for (a, pa) in p.iter().enumerate() {
        for qb in &q[..m as usize - a] {
            lhs += pa * qb;
        }
    }
    let rhs = z_trunc_linear(&LinComb::from_index(k).shuffle(&LinComb::from_index(l)), m)?;
    Ok(compare_rational("paired chain sum equals Z_M of the shuffle", &lhs, &rhs))
}
