//! Brute-force oracles. They enumerate the defining sums directly and share no code with the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Truncated power series in `t` as a plain coefficient vector.
pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len();
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut [Q], x: &[Q]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b;
    }
}

fn one(order: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); order];
    v[0] = Q::one();
    v
}

/// `(c + d t)^{-k}` by geometric expansion and repeated multiplication; `c != 0`.
pub fn inv_linear_pow(c: &Q, d: &Q, k: u32, order: usize) -> Vec<Q> {
    assert!(!c.is_zero(), "singular factor");
    let r = -d / c;
    let mut g = vec![Q::zero(); order];
    let mut p = c.recip();
    for x in g.iter_mut() {
        *x = p.clone();
        p *= &r;
    }
    (0..k).fold(one(order), |acc, _| mul(&acc, &g))
}

/// Strictly increasing tuples of length `r` drawn from `pool` in its given order.
fn chains<T: Clone>(pool: &[T], r: usize, out: &mut Vec<Vec<T>>, cur: &mut Vec<T>, from: usize) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i].clone());
        chains(pool, r, out, cur, i + 1);
        cur.pop();
    }
}

fn all_chains<T: Clone>(pool: &[T], r: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    chains(pool, r, &mut out, &mut Vec::new(), 0);
    out
}

/// `1/n(t)^k` with `n(t) = n` for `n > 0` and `n + t` for `n < 0`.
fn kontsevich_term(n: i64, k: u32, order: usize) -> Vec<Q> {
    let d = if n < 0 { Q::one() } else { Q::zero() };
    inv_linear_pow(&Q::from_integer(n.into()), &d, k, order)
}

/// Star value as a single chain sum in the order `1, 2, ..., M-1, -(M-1), ..., -1`.
pub fn star_oracle(k: &[u32], m: u64, order: usize) -> Vec<Q> {
    let m = m as i64;
    let pool: Vec<i64> = (1..m).chain(-(m - 1)..0).collect();
    let mut acc = vec![Q::zero(); order];
    for c in all_chains(&pool, k.len()) {
        let term = c.iter().zip(k).fold(one(order), |s, (&n, &e)| mul(&s, &kontsevich_term(n, e, order)));
        add_into(&mut acc, &term);
    }
    acc
}

/// Shuffle value: for each split `i`, positives `n_1 < ... < n_i`, negatives `n_{i+1} < ... < n_r < 0`,
/// with `n_i - n_{i+1} < M` and missing neighbours read as 0.
pub fn sh_oracle(k: &[u32], m: u64, order: usize) -> Vec<Q> {
    let m = m as i64;
    let r = k.len();
    let pos: Vec<i64> = (1..m).collect();
    let neg: Vec<i64> = (-(m - 1)..0).collect();
    let mut acc = vec![Q::zero(); order];
    for i in 0..=r {
        for a in all_chains(&pos, i) {
            for b in all_chains(&neg, r - i) {
                let top = a.last().copied().unwrap_or(0);
                let bottom = b.first().copied().unwrap_or(0);
                if top - bottom >= m {
                    continue;
                }
                let ns = a.iter().chain(&b);
                let term = ns.zip(k).fold(one(order), |s, (&n, &e)| mul(&s, &kontsevich_term(n, e, order)));
                add_into(&mut acc, &term);
            }
        }
    }
    acc
}

fn inv_pow(n: i64, k: u32) -> Q {
    Q::from_integer(BigInt::from(n).pow(k)).recip()
}

/// `sum_{0 < n_1 < ... < n_r < M} prod n_j^{-k_j}`.
pub fn z_oracle(k: &[u32], m: u64) -> Q {
    let pool: Vec<i64> = (1..m as i64).collect();
    all_chains(&pool, k.len())
        .into_iter()
        .map(|c| c.iter().zip(k).map(|(&n, &e)| inv_pow(n, e)).product::<Q>())
        .sum()
}

/// `sum_{m_i >= 1, sum m_i < M} prod m_i^{-k_i} (sum m_i)^{-tail}`.
pub fn mt_oracle(heads: &[u32], tail: u32, m: u64) -> Q {
    fn go(heads: &[u32], tail: u32, m: i64, used: i64, acc: Q, out: &mut Q) {
        match heads.split_first() {
            None => *out += acc * inv_pow(used, tail),
            Some((&h, rest)) => {
                for x in 1..m - used - rest.len() as i64 {
                    go(rest, tail, m, used + x, acc.clone() * inv_pow(x, h), out);
                }
            }
        }
    }
    let mut out = Q::zero();
    go(heads, tail, m as i64, 0, Q::one(), &mut out);
    out
}

/// Exact `Z_p(k)` reduced modulo `p^n` through Euler's theorem for the denominator.
pub fn z_mod_oracle(k: &[u32], p: u64, n: u32) -> u64 {
    let x = z_oracle(k, p);
    let modulus = BigInt::from(p).pow(n);
    let phi = BigInt::from(p).pow(n - 1) * (p - 1);
    let inv = x.denom().modpow(&(phi - 1u32), &modulus);
    let r = (x.numer() * inv).mod_floor(&modulus);
    u64::try_from(r).unwrap()
}

/// Paired chains `0 < m_1 < ... < m_r`, `0 < n_1 < ... < n_s` with `m_r + n_s < M`.
pub fn paired_chains_oracle(k: &[u32], l: &[u32], m: u64) -> Q {
    let pool: Vec<i64> = (1..m as i64).collect();
    let mut acc = Q::zero();
    for a in all_chains(&pool, k.len()) {
        for b in all_chains(&pool, l.len()) {
            if a.last().unwrap() + b.last().unwrap() >= m as i64 {
                continue;
            }
            let x: Q = a.iter().zip(k).map(|(&n, &e)| inv_pow(n, e)).product();
            let y: Q = b.iter().zip(l).map(|(&n, &e)| inv_pow(n, e)).product();
            acc += x * y;
        }
    }
    acc
}

/// A tree given by raw data: vertex names, labelled edges, root and black set.
pub struct RawTree {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u32)>,
    pub root: String,
    pub black: Vec<String>,
}

impl RawTree {
    /// Vertices on the path from the root to `v`, found by depth-first search.
    fn root_path_edges(&self, v: &str) -> Vec<usize> {
        fn dfs(t: &RawTree, at: &str, goal: &str, from: Option<usize>, path: &mut Vec<usize>) -> bool {
            if at == goal {
                return true;
            }
            for (i, (a, b, _)) in t.edges.iter().enumerate() {
                if Some(i) == from {
                    continue;
                }
                let next = if a == at { b } else if b == at { a } else { continue };
                path.push(i);
                if dfs(t, next, goal, Some(i), path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut path = Vec::new();
        assert!(dfs(self, &self.root, v, None, &mut path));
        path
    }
}

/// Sum over black `u` of: positive `m_v` for the other black vertices with `sum < M`, `m_u = -sum`,
/// and each edge contributing `(sum of m_v + [v = u] t over black v below it)^{-k_e}`.
pub fn tree_oracle(t: &RawTree, m: u64, order: usize) -> Vec<Q> {
    let below: Vec<Vec<usize>> = {
        let mut b = vec![Vec::new(); t.edges.len()];
        for (vi, v) in t.black.iter().enumerate() {
            for e in t.root_path_edges(v) {
                b[e].push(vi);
            }
        }
        b
    };
    let mut acc = vec![Q::zero(); order];
    let nb = t.black.len();
    for u in 0..nb {
        let mut assign = vec![0i64; nb];
        fn rec(i: usize, u: usize, nb: usize, m: i64, used: i64, assign: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
            if i == nb {
                assign[u] = -used;
                f(assign);
                return;
            }
            if i == u {
                return rec(i + 1, u, nb, m, used, assign, f);
            }
            for x in 1..m - used {
                assign[i] = x;
                rec(i + 1, u, nb, m, used + x, assign, f);
            }
        }
        rec(0, u, nb, m as i64, 0, &mut assign, &mut |a: &[i64]| {
            let mut term = one(order);
            for (e, (_, _, k)) in t.edges.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let c: i64 = below[e].iter().map(|&v| a[v]).sum();
                let d = if below[e].contains(&u) { Q::one() } else { Q::zero() };
                term = mul(&term, &inv_linear_pow(&Q::from_integer(c.into()), &d, *k, order));
            }
            add_into(&mut acc, &term);
        });
    }
    acc
}
