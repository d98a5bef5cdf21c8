use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ColoredTree, EdgeIndex};
use crate::index::{compositions_below, shifted_binomial};
use crate::{Error, Result};

/// Contracts the first zero-labeled edge `{a, b}` with `b` white and not the root,
/// scanning `b` in id order; `b` is merged into `a`, which keeps its color.
pub fn contract_zero_edge(x: &ColoredTree, k: &EdgeIndex) -> Result<Option<(ColoredTree, EdgeIndex)>> {
    k.check(x)?;
    let adj = x.adjacency();
    for b in 0..x.vertex_count() {
        if x.is_black(b) || b == x.root() {
            continue;
        }
        let Some(&(a, e)) = adj[b].iter().find(|&&(_, e)| k.get(e) == 0) else {
            continue;
        };
        let (a_id, b_id) = (x.id(a).to_string(), x.id(b).to_string());
        let vertices: Vec<String> = x.ids().iter().filter(|s| **s != b_id).cloned().collect();
        let edges: Vec<(String, String, u32)> = x
            .labeled_edges(k)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != e)
            .map(|(_, (u, v, l))| {
                let u = if u == b_id { a_id.clone() } else { u };
                let v = if v == b_id { a_id.clone() } else { v };
                (u, v, l)
            })
            .collect();
        return ColoredTree::rebuild(vertices, edges, x.root_id(), x.black_ids()).map(Some);
    }
    Ok(None)
}

/// Replaces the two edges at the first white non-root vertex of degree 2 by one
/// edge carrying the sum of their labels.
pub fn joint_degree2_white(x: &ColoredTree, k: &EdgeIndex) -> Result<Option<(ColoredTree, EdgeIndex)>> {
    k.check(x)?;
    let adj = x.adjacency();
    for b in 0..x.vertex_count() {
        if x.is_black(b) || b == x.root() || adj[b].len() != 2 {
            continue;
        }
        let [(a, e1), (c, e2)] = [adj[b][0], adj[b][1]];
        let b_id = x.id(b).to_string();
        let vertices: Vec<String> = x.ids().iter().filter(|s| **s != b_id).cloned().collect();
        let mut edges: Vec<(String, String, u32)> = x
            .labeled_edges(k)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != e1 && *i != e2)
            .map(|(_, t)| t)
            .collect();
        edges.push((x.id(a).to_string(), x.id(c).to_string(), k.get(e1) + k.get(e2)));
        return ColoredTree::rebuild(vertices, edges, x.root_id(), x.black_ids()).map(Some);
    }
    Ok(None)
}

/// One term of a root change: `coefficient * t^t_power * value(tree, index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootChangeTerm {
    pub coefficient: BigRational,
    pub t_power: usize,
    pub tree: ColoredTree,
    pub index: EdgeIndex,
}

/// Moves the root to `new_root`. Every label on the path gains `l_e >= 0` with
/// `sum l_e < order`; the coefficient is `(-1)^{sum k_e} prod binom(k_e + l_e - 1, l_e)`
/// over the path. Zero coefficients are dropped.
pub fn change_root(x: &ColoredTree, k: &EdgeIndex, new_root: usize, order: usize) -> Result<Vec<RootChangeTerm>> {
    k.check(x)?;
    if new_root >= x.vertex_count() {
        return Err(Error::InvalidArgument(format!("vertex position {new_root} out of range")));
    }
    if order == 0 {
        return Err(Error::InvalidArgument("series order N must be at least 1".into()));
    }
    let path = x.path(x.root(), new_root);
    let tree = x.with_root(new_root);
    let label_sum: u32 = path.iter().map(|&e| k.get(e)).sum();
    let sign = if label_sum % 2 == 1 { -1 } else { 1 };
    let mut out = Vec::new();
    for l in compositions_below(path.len(), order as u32) {
        let mut c = BigInt::from(sign);
        let mut index = k.clone();
        for (&e, &le) in path.iter().zip(&l) {
            c *= shifted_binomial(k.get(e), le);
            index.labels_mut()[e] += le;
        }
        if c.is_zero() {
            continue;
        }
        out.push(RootChangeTerm {
            coefficient: BigRational::from_integer(c),
            t_power: l.iter().sum::<u32>() as usize,
            tree: tree.clone(),
            index,
        });
    }
    Ok(out)
}

/// At a white non-root vertex whose child edges all carry positive labels `l_i`
/// and whose root-side edge carries `k'`, returns the indices `h_i` with
/// `l_i - 1` on child `i` and `k' + 1` on the root-side edge.
pub fn one_step_decompose(x: &ColoredTree, k: &EdgeIndex, branch_vertex: usize) -> Result<Option<Vec<EdgeIndex>>> {
    k.check(x)?;
    if branch_vertex >= x.vertex_count() {
        return Err(Error::InvalidArgument(format!("vertex position {branch_vertex} out of range")));
    }
    if x.is_black(branch_vertex) || branch_vertex == x.root() {
        return Ok(None);
    }
    let rooted = x.rooted();
    let (_, up) = rooted.parent[branch_vertex].expect("non-root vertex has a parent");
    let children = &rooted.children[branch_vertex];
    if children.is_empty() || children.iter().any(|&(_, e)| k.get(e) == 0) {
        return Ok(None);
    }
    let terms = children
        .iter()
        .map(|&(_, e)| {
            let mut h = k.clone();
            h.labels_mut()[e] -= 1;
            h.labels_mut()[up] += 1;
            h
        })
        .collect();
    Ok(Some(terms))
}
