use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::{ColoredTree, EdgeIndex};
use crate::scalar::Scalar;
use crate::series::expand_inverse_power;
use crate::{Error, Result, Series, TruncatedSeries, TruncationParams};

/// Sum over positive `m_v` (`v` black, `v != u`) with `S = sum m_v < M` and `m_u = -S`
/// of `prod_e L_e^{-k_e}`, where `L_e` adds `m_v` over black `v` beyond `e` and
/// carries `t` when `u` is beyond `e`.
pub fn tree_value_at(x: &ColoredTree, k: &EdgeIndex, u: usize, params: TruncationParams) -> Result<TruncatedSeries> {
    k.check(x)?;
    if u >= x.vertex_count() || !x.is_black(u) {
        return Err(Error::InvalidArgument("evaluation vertex must be black".into()));
    }
    let order = params.order();
    let below = x.black_below();
    let others: Vec<usize> = x.black_vertices().into_iter().filter(|&v| v != u).collect();
    let slot: HashMap<usize, usize> = others.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // per edge: label, positions of other black vertices beyond it, whether u is beyond it
    let factors: Vec<(u32, Vec<usize>, bool)> = below
        .iter()
        .enumerate()
        .filter(|(e, _)| k.get(*e) > 0)
        .map(|(e, vs)| {
            let pos = vs.iter().filter_map(|v| slot.get(v).copied()).collect();
            (k.get(e), pos, vs.contains(&u))
        })
        .collect();

    let mut cache: HashMap<(i64, u32), TruncatedSeries> = HashMap::new();
    let mut total: TruncatedSeries = Series::zero(order);
    let mut m = vec![0i64; others.len()];
    let bound = params.m() as i64;
    let mut failure = None;
    enumerate(&mut m, 0, 0, bound, &mut |m, s| {
        if failure.is_some() {
            return;
        }
        let mut constant = BigRational::one();
        let mut series: Option<TruncatedSeries> = None;
        for (label, pos, has_u) in &factors {
            let mut c: i64 = pos.iter().map(|&i| m[i]).sum();
            if *has_u {
                c -= s;
                if c == 0 {
                    failure = Some(Error::Singular(format!(
                        "an edge factor has zero constant term at m = {m:?}"
                    )));
                    return;
                }
                let f = cache
                    .entry((c, *label))
                    .or_insert_with(|| expand_inverse_power(c, *label, order).expect("c is nonzero"));
                series = Some(match series.take() {
                    None => f.clone(),
                    Some(acc) => acc.mul_unchecked(f),
                });
            } else {
                debug_assert!(c > 0);
                constant *= BigRational::inv_pow(c, *label);
            }
        }
        match series {
            Some(sr) => total += &sr.scale(&constant),
            None => total += &Series::constant(constant, order),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(total)
}

/// Visits every positive tuple with total below `bound`, passing the tuple and its total.
fn enumerate(m: &mut Vec<i64>, pos: usize, sum: i64, bound: i64, visit: &mut impl FnMut(&[i64], i64)) {
    if pos == m.len() {
        if sum < bound {
            visit(m, sum);
        }
        return;
    }
    let remaining = (m.len() - pos - 1) as i64;
    let mut v = 1;
    while sum + v + remaining < bound {
        m[pos] = v;
        enumerate(m, pos + 1, sum + v, bound, visit);
        v += 1;
    }
}

/// Sum of [`tree_value_at`] over all black vertices.
pub fn tree_value(x: &ColoredTree, k: &EdgeIndex, params: TruncationParams) -> Result<TruncatedSeries> {
    let mut total = Series::zero(params.order());
    for u in x.black_vertices() {
        total += &tree_value_at(x, k, u, params)?;
    }
    Ok(total)
}
