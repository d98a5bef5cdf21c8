//! Floating-point evaluation of multiple zeta symbols with rigorous tail
//! bounds, and numerical comparisons of truncated values with their limits.

use std::f64::consts::PI;

use serde::Serialize;

use crate::regularization::{zeta_hat_symbolic, MzvCombo};
use crate::scalar::rational_to_f64;
use crate::truncated::{hat_series_f64, increasing_chains, TruncationParams};
use crate::{Bullet, Error, Index, Result};

/// Invariant: the true value lies in `value ± abs_error_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericValue {
    pub value: f64,
    pub abs_error_bound: f64,
}

const FIRST_M: u64 = 1 << 10;
const MAX_M: u64 = 1 << 22;

/// Partial sum over `n_r < m` plus the tail enclosed between two integral comparisons.
pub fn mzv_numeric_at(k: &Index, m: u64) -> Result<NumericValue> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    if k.is_empty() {
        return Ok(NumericValue { value: 1.0, abs_error_bound: 0.0 });
    }
    if m < 16 {
        return Err(Error::InvalidArgument("numeric truncation needs M >= 16".into()));
    }
    let entries = k.entries();
    let r = entries.len();
    // prefix_sums[j] = Z_m(k_1, ..., k_j), summed in ascending n
    let mut prefix_sums = Vec::with_capacity(r + 1);
    let mut table: Vec<f64> = increasing_chains(&[], m);
    prefix_sums.push(1.0);
    for j in 0..r {
        table = increasing_chains_step(&table, entries[j]);
        prefix_sums.push(table.iter().sum());
    }
    let (lo, hi) = tail_bounds(entries, &prefix_sums, r - 1, entries[r - 1] as f64, m as f64);
    let partial = prefix_sums[r];
    let slack = 4.0 * f64::EPSILON * (m as f64) * (r as f64 + 1.0) * (partial + hi);
    Ok(NumericValue { value: partial + lo, abs_error_bound: (hi - lo) + slack })
}

fn increasing_chains_step(table: &[f64], e: u32) -> Vec<f64> {
    let mut next = vec![0.0; table.len()];
    let mut below = 0.0;
    for a in 1..table.len() {
        below += table[a - 1];
        next[a] = below * (a as f64).powi(-(e as i32));
    }
    next
}

/// Bounds on `sum_{n >= m} n^{-s} I_j(n)`, where `I_j(n)` sums the chains of
/// `(k_1, ..., k_j)` below `n`. `I_j(n) = I_j(m) + sum_{m <= l < n} l^{-k_j} I_{j-1}(l)`
/// and the inner tail has the same shape with exponent `k_j + s - 1`.
fn tail_bounds(k: &[u32], prefix_sums: &[f64], j: usize, s: f64, m: f64) -> (f64, f64) {
    let c = s - 1.0;
    let mut lo = prefix_sums[j] * m.powf(-c) / c;
    let mut hi = prefix_sums[j] * (m - 1.0).powf(-c) / c;
    if j > 0 {
        let (ilo, ihi) = tail_bounds(k, prefix_sums, j - 1, k[j - 1] as f64 + c, m);
        lo += (m / (m + 1.0)).powf(c) / c * ilo;
        hi += ihi / c;
    }
    (lo, hi)
}

/// Doubles `M` from 1024 until the bound meets `target_eps`.
pub fn mzv_numeric(k: &Index, target_eps: f64) -> Result<NumericValue> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    if k.is_empty() {
        return Ok(NumericValue { value: 1.0, abs_error_bound: 0.0 });
    }
    let mut m = FIRST_M;
    loop {
        let v = mzv_numeric_at(k, m)?;
        if v.abs_error_bound <= target_eps {
            return Ok(v);
        }
        if m >= MAX_M {
            return Err(Error::PrecisionNotReached { eps: target_eps, bound: v.abs_error_bound, m });
        }
        m *= 2;
    }
}

/// Sum of coefficient times symbol value, with the errors added in absolute value.
pub fn evaluate_combo(combo: &MzvCombo, target_eps: f64) -> Result<NumericValue> {
    let weight: f64 = combo.iter().map(|(_, c)| rational_to_f64(c).abs()).sum();
    let per_symbol = target_eps / weight.max(1.0) / (combo.iter().count().max(1) as f64);
    let mut value = 0.0;
    let mut bound = 0.0;
    for (k, c) in combo.iter() {
        let c = rational_to_f64(c);
        let v = mzv_numeric(k, per_symbol)?;
        value += c * v.value;
        bound += c.abs() * v.abs_error_bound;
    }
    Ok(NumericValue { value, abs_error_bound: bound })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    #[serde(rename = "M")]
    pub m: u64,
    pub coefficient_index: usize,
    pub truncated: f64,
    pub limit: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    /// Every coefficient at the largest `M` lies within the tolerance.
    pub passed: bool,
}

/// Float-evaluated truncated series against the numerically evaluated limit.
pub fn check_limit_theorem(k: &Index, bullet: Bullet, order: usize, m_list: &[u64], tol: f64) -> Result<LimitReport> {
    if m_list.is_empty() || m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("M list must be non-empty and increasing".into()));
    }
    let symbolic = zeta_hat_symbolic(k, bullet, order)?;
    let limits = symbolic
        .coeffs
        .iter()
        .map(|c| evaluate_combo(c, (tol / 100.0).clamp(1e-7, 1e-6)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for &m in m_list {
        let series = hat_series_f64(k, bullet, TruncationParams::new(m, order)?);
        for (i, lim) in limits.iter().enumerate() {
            let truncated = *series.coeff(i);
            rows.push(LimitRow {
                m,
                coefficient_index: i,
                truncated,
                limit: lim.value,
                abs_diff: (truncated - lim.value).abs(),
            });
        }
    }
    let last = *m_list.last().expect("non-empty");
    let passed = rows.iter().filter(|r| r.m == last).all(|r| r.abs_diff < tol);
    Ok(LimitReport { rows, passed })
}

/// Best continued-fraction convergent of `x` with denominator at most `max_den`.
pub fn recover_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 == 0 {
        return (x.round() as i64, 1);
    }
    (h1, k1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BulletRow {
    pub coefficient_index: usize,
    pub difference: f64,
    pub over_pi2: f64,
    pub candidate: String,
    pub distance: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BulletReport {
    pub rows: Vec<BulletRow>,
    pub passed: bool,
}

/// Each coefficient of the star minus shuffle limit, divided by `pi^2`, sits near a small rational.
pub fn check_indep_bullet_numeric(k: &Index, order: usize, tol: f64) -> Result<BulletReport> {
    let star = zeta_hat_symbolic(k, Bullet::Star, order)?;
    let sh = zeta_hat_symbolic(k, Bullet::Shuffle, order)?;
    let diff = star.sub(&sh);
    let mut rows = Vec::new();
    for (i, c) in diff.coeffs.iter().enumerate() {
        let v = evaluate_combo(c, tol / 100.0)?;
        let over = v.value / (PI * PI);
        let (p, q) = recover_rational(over, 64);
        let distance = (over - p as f64 / q as f64).abs();
        let candidate = if q == 1 { p.to_string() } else { format!("{p}/{q}") };
        rows.push(BulletRow { coefficient_index: i, difference: v.value, over_pi2: over, candidate, distance, ok: distance < tol });
    }
    let passed = rows.iter().all(|r| r.ok);
    Ok(BulletReport { rows, passed })
}

/// Exact symbolic difference of the two limits, for reports.
pub fn bullet_difference(k: &Index, order: usize) -> Result<Vec<MzvCombo>> {
    let star = zeta_hat_symbolic(k, Bullet::Star, order)?;
    let sh = zeta_hat_symbolic(k, Bullet::Shuffle, order)?;
    Ok(star.sub(&sh).coeffs)
}
