use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{index_pairs, run_jobs};
use crate::index::{b_binom, compositions_below};
use crate::registry::{InstanceResult, SuiteBounds, SuiteReport, VerificationSuite};
use crate::trees::{
    change_root, contract_zero_edge, harvest, is_harvestable, joint_degree2_white, one_step_decompose, random_tree,
    shuffle_tree, tree_value, tree_value_general, tree_value_via_word, ColoredTree, EdgeIndex, TreeJson,
};
use crate::verdict::{compare_series, Verdict};
use crate::{Index, LinComb, Result, Series, TruncatedSeries, TruncatedValues, TruncationParams};

/// Named configurations drawn by hand: the four-step harvest example, the contraction,
/// joint and one-step shapes, a white-rooted star and a chain of zero edges.
const FIGURES: &[(&str, &str)] = &[
    (
        "four-step harvest",
        r#"{"vertices":["A","B","C","D","E","F","G"],
            "edges":[{"u":"A","v":"E","k":1},{"u":"B","v":"E","k":2},{"u":"C","v":"E","k":0},
                     {"u":"E","v":"G","k":3},{"u":"D","v":"F","k":1},{"u":"F","v":"G","k":2}],
            "root":"G","black":["A","B","C","D","G"]}"#,
    ),
    (
        "zero white edge",
        r#"{"vertices":["a","b","c","w"],
            "edges":[{"u":"a","v":"w","k":0},{"u":"w","v":"b","k":1},{"u":"w","v":"c","k":2}],
            "root":"b","black":["a","b","c"]}"#,
    ),
    (
        "white degree two",
        r#"{"vertices":["a","b","w"],"edges":[{"u":"a","v":"w","k":1},{"u":"w","v":"b","k":2}],
            "root":"b","black":["a","b"]}"#,
    ),
    (
        "one-step branch",
        r#"{"vertices":["a","b","c","r","w"],
            "edges":[{"u":"a","v":"w","k":1},{"u":"b","v":"w","k":2},{"u":"c","v":"w","k":1},{"u":"w","v":"r","k":1}],
            "root":"r","black":["a","b","c","r"]}"#,
    ),
    (
        "white-rooted star",
        r#"{"vertices":["a","b","c","w"],
            "edges":[{"u":"a","v":"w","k":1},{"u":"b","v":"w","k":2},{"u":"c","v":"w","k":1}],
            "root":"w","black":["a","b","c"]}"#,
    ),
    (
        "chained zero edges",
        r#"{"vertices":["a","b","c","w1","w2"],
            "edges":[{"u":"a","v":"w1","k":0},{"u":"w1","v":"w2","k":0},{"u":"w2","v":"b","k":1},{"u":"w1","v":"c","k":1}],
            "root":"b","black":["a","b","c"]}"#,
    ),
];

fn sum_terms(terms: impl IntoIterator<Item = Result<(BigRational, usize, TruncatedSeries)>>, order: usize) -> Result<TruncatedSeries> {
    let mut acc = Series::zero(order);
    for t in terms {
        let (c, power, v) = t?;
        acc += &v.scale(&c).shift(power);
    }
    Ok(acc)
}

/// Every value-preserving rewrite applicable to `(x, k)`, checked against the direct value.
pub(crate) fn check_tree(x: &ColoredTree, k: &EdgeIndex, params: TruncationParams) -> Result<Verdict> {
    let direct = tree_value(x, k, params)?;
    let order = params.order();
    let mut verdicts = Vec::new();
    if let Some((y, h)) = contract_zero_edge(x, k)? {
        verdicts.push(compare_series("contraction of a zero white edge", &tree_value(&y, &h, params)?, &direct));
    }
    if let Some((y, h)) = joint_degree2_white(x, k)? {
        verdicts.push(compare_series("joint at a white degree-2 vertex", &tree_value(&y, &h, params)?, &direct));
    }
    for b in 0..x.vertex_count() {
        if let Some(hs) = one_step_decompose(x, k, b)? {
            let mut sum = Series::zero(order);
            for h in &hs {
                sum += &tree_value(x, h, params)?;
            }
            verdicts.push(compare_series(&format!("one-step decomposition at `{}`", x.id(b)), &sum, &direct));
        }
    }
    for v in 0..x.vertex_count() {
        let terms = change_root(x, k, v, order)?;
        let moved = sum_terms(
            terms.iter().map(|t| Ok((t.coefficient.clone(), t.t_power, tree_value(&t.tree, &t.index, params)?))),
            order,
        )?;
        verdicts.push(compare_series(&format!("root change to `{}`", x.id(v)), &moved, &direct));
    }
    let values = TruncatedValues::new(params);
    if is_harvestable(x, k)?.is_empty() {
        verdicts.push(compare_series("word value of a harvestable pair", &tree_value_via_word(x, k, &values)?, &direct));
    }
    if x.is_black(x.root()) {
        let (h, kh) = harvest(x, k)?;
        let positive = h.is_essentially_positive(&kh)?;
        verdicts.push(if positive {
            Verdict::Holds
        } else {
            Verdict::fails("harvest keeps essential positivity", None, "violated", "positive")
        });
        let harvested = tree_value(&h, &kh, params)?;
        verdicts.push(compare_series("harvest preserves the value", &harvested, &direct));
        verdicts.push(compare_series("word value of the harvested pair", &tree_value_via_word(&h, &kh, &values)?, &harvested));
    }
    verdicts.push(compare_series("root change, harvest and word pipeline", &tree_value_general(x, k, params)?, &direct));
    Ok(Verdict::all(verdicts))
}

/// The two-chain tree evaluates to `Z^sh(z_k sh z_l)`, and moving its root to the top of the
/// `l` chain reproduces the shuffle relation.
pub(crate) fn check_shuffle_tree(k: &Index, l: &Index, params: TruncationParams) -> Result<Verdict> {
    let (x, idx) = shuffle_tree(k.entries(), l.entries());
    let values = TruncatedValues::new(params);
    let order = params.order();
    let direct = tree_value(&x, &idx, params)?;
    let word = LinComb::from_index(k).shuffle(&LinComb::from_index(l));
    let first = compare_series("two-chain tree equals the shuffle product value", &direct, &values.sh_linear(&word)?);
    let top = if l.is_empty() { x.root() } else { x.position("b1")? };
    let moved = sum_terms(
        change_root(&x, &idx, top, order)?
            .iter()
            .map(|t| Ok((t.coefficient.clone(), t.t_power, tree_value(&t.tree, &t.index, params)?))),
        order,
    )?;
    let mut dsr = sum_terms(
        compositions_below(l.depth(), order as u32).into_iter().map(|lp| {
            let c = BigRational::from_integer(b_binom(l.entries(), &lp)?);
            let idx = k.concat(&l.add_composition(&lp)?.reversed());
            Ok((c, lp.iter().sum::<u32>() as usize, values.sh(&idx)))
        }),
        order,
    )?;
    if l.weight() % 2 == 1 {
        dsr = dsr.neg();
    }
    Ok(first.and(|| compare_series("re-rooted two-chain tree equals the shuffle relation", &moved, &dsr)))
}

pub struct TreeSuite;

impl VerificationSuite for TreeSuite {
    fn name(&self) -> &'static str {
        "trees"
    }

    fn statement(&self) -> &'static str {
        "tree rewrites, root change, harvest and word evaluation preserve truncated tree values"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { m_list: vec![2, 4, 7], order: 3, wt_max: 4, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let max_m = bounds.m_list.iter().copied().max().unwrap_or(1);
        let per_tree = max_m.saturating_pow(bounds.max_vertices.saturating_sub(1) as u32);
        bounds.check_work((bounds.tree_count + FIGURES.len()) as u64 * bounds.m_list.len() as u64 * per_tree)?;
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        let mut trees: Vec<(String, ColoredTree, EdgeIndex)> = FIGURES
            .iter()
            .map(|(name, json)| {
                let (x, k) = TreeJson::parse(json)?;
                Ok((format!("figure `{name}`"), x, k))
            })
            .collect::<Result<_>>()?;
        for i in 0..bounds.tree_count {
            let (x, k) = random_tree(&mut rng, bounds.max_vertices, bounds.max_label);
            trees.push((format!("random #{i}"), x, k));
        }
        let jobs: Vec<(u64, &(String, ColoredTree, EdgeIndex))> =
            bounds.m_list.iter().flat_map(|&m| trees.iter().map(move |t| (m, t))).collect();
        let mut instances = run_jobs(&jobs, |&(m, (name, x, k))| {
            let verdict = check_tree(x, k, TruncationParams::new(m, bounds.order)?)?;
            Ok(vec![InstanceResult { key: format!("{name} M={m}"), verdict }])
        })?;
        let pairs = index_pairs(bounds.wt_max, false);
        let jobs: Vec<(u64, &(Index, Index))> =
            bounds.m_list.iter().flat_map(|&m| pairs.iter().map(move |p| (m, p))).collect();
        instances.extend(run_jobs(&jobs, |&(m, (k, l))| {
            let verdict = check_shuffle_tree(k, l, TruncationParams::new(m, bounds.order)?)?;
            Ok(vec![InstanceResult { key: format!("two-chain tree k=({k}) l=({l}) M={m}"), verdict }])
        })?);
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures_and_a_few_random_trees() {
        let b = SuiteBounds { m_list: vec![3], order: 2, tree_count: 10, max_vertices: 5, wt_max: 3, ..SuiteBounds::default() };
        let rep = TreeSuite.run(&b).unwrap();
        assert!(rep.holds(), "{rep}");
        assert_eq!(rep.instances.len(), FIGURES.len() + 10 + index_pairs(3, false).len());
    }
}
