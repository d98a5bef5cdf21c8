use std::fmt;

use super::rewrite::{change_root, contract_zero_edge, joint_degree2_white};
use super::{ColoredTree, EdgeIndex};
use crate::{Error, Index, LinComb, Result, Series, TruncatedSeries, TruncatedValues, TruncationParams, Word};

/// A violated harvestability condition, naming the offending vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarvestCondition {
    /// H1: the root is a terminal.
    RootNotTerminal(String),
    /// H2: every white vertex is branched.
    WhiteNotBranched(String),
    /// H3: no black vertex is branched.
    BlackBranched(String),
    /// H4: edges from a white parent carry positive labels.
    ZeroBelowWhite { parent: String, child: String },
    /// H5: edges between black vertices carry positive labels.
    ZeroBlackEdge(String, String),
}

impl HarvestCondition {
    pub fn code(&self) -> &'static str {
        match self {
            HarvestCondition::RootNotTerminal(_) => "H1",
            HarvestCondition::WhiteNotBranched(_) => "H2",
            HarvestCondition::BlackBranched(_) => "H3",
            HarvestCondition::ZeroBelowWhite { .. } => "H4",
            HarvestCondition::ZeroBlackEdge(..) => "H5",
        }
    }
}

impl fmt::Display for HarvestCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarvestCondition::RootNotTerminal(r) => write!(f, "H1: root `{r}` is not a terminal"),
            HarvestCondition::WhiteNotBranched(v) => write!(f, "H2: white vertex `{v}` is not branched"),
            HarvestCondition::BlackBranched(v) => write!(f, "H3: black vertex `{v}` is branched"),
            HarvestCondition::ZeroBelowWhite { parent, child } => {
                write!(f, "H4: edge from white `{parent}` to `{child}` has label 0")
            }
            HarvestCondition::ZeroBlackEdge(a, b) => write!(f, "H5: black edge {{{a}, {b}}} has label 0"),
        }
    }
}

/// Violated conditions; empty means harvestable. The single vertex counts as harvestable.
pub fn is_harvestable(x: &ColoredTree, k: &EdgeIndex) -> Result<Vec<HarvestCondition>> {
    k.check(x)?;
    let mut out = Vec::new();
    if x.edge_count() == 0 {
        return Ok(out);
    }
    let adj = x.adjacency();
    let id = |v: usize| x.id(v).to_string();
    if adj[x.root()].len() != 1 || !x.is_black(x.root()) {
        out.push(HarvestCondition::RootNotTerminal(id(x.root())));
    }
    for v in 0..x.vertex_count() {
        let branched = adj[v].len() >= 3;
        if !x.is_black(v) && !branched {
            out.push(HarvestCondition::WhiteNotBranched(id(v)));
        }
        if x.is_black(v) && branched {
            out.push(HarvestCondition::BlackBranched(id(v)));
        }
    }
    let rooted = x.rooted();
    for v in 0..x.vertex_count() {
        for &(c, e) in &rooted.children[v] {
            if k.get(e) > 0 {
                continue;
            }
            if !x.is_black(v) {
                out.push(HarvestCondition::ZeroBelowWhite { parent: id(v), child: id(c) });
            }
            if x.is_black(v) && x.is_black(c) {
                out.push(HarvestCondition::ZeroBlackEdge(id(v), id(c)));
            }
        }
    }
    Ok(out)
}

fn require_harvestable(x: &ColoredTree, k: &EdgeIndex) -> Result<()> {
    let violations = is_harvestable(x, k)?;
    if violations.is_empty() {
        return Ok(());
    }
    let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Err(Error::NotHarvestable(text.join("; ")))
}

fn fresh_name(x: &ColoredTree, base: &str) -> String {
    let name = format!("w#{base}");
    if x.position(&name).is_err() {
        return name;
    }
    (2..).map(|i| format!("{name}.{i}")).find(|n| x.position(n).is_err()).expect("unbounded")
}

/// Inserts a white vertex between `v` and its children; the new edge has label 0.
fn split_off_children(x: &ColoredTree, k: &EdgeIndex, v: usize) -> Result<(ColoredTree, EdgeIndex)> {
    let rooted = x.rooted();
    let w = fresh_name(x, x.id(v));
    let moved: Vec<usize> = rooted.children[v].iter().map(|&(_, e)| e).collect();
    let v_id = x.id(v).to_string();
    let mut edges = x.labeled_edges(k);
    for &e in &moved {
        let (a, b, _) = &mut edges[e];
        if *a == v_id {
            *a = w.clone();
        } else {
            *b = w.clone();
        }
    }
    edges.push((v_id, w.clone(), 0));
    let mut vertices = x.ids().to_vec();
    vertices.push(w);
    ColoredTree::rebuild(vertices, edges, x.root_id(), x.black_ids())
}

/// Rewrites a black-rooted, essentially positive pair into a harvestable pair of equal value:
/// contract zero white edges, joint degree-2 white vertices, then split black branched vertices
/// and finally a non-terminal root. Each step runs to a fixpoint scanning vertices in id order.
pub fn harvest(x: &ColoredTree, k: &EdgeIndex) -> Result<(ColoredTree, EdgeIndex)> {
    k.check(x)?;
    if !x.is_black(x.root()) {
        return Err(Error::InvalidArgument(format!("harvest needs a black root, `{}` is white", x.root_id())));
    }
    x.require_essentially_positive(k)?;
    let mut cur = (x.clone(), k.clone());
    while let Some(next) = contract_zero_edge(&cur.0, &cur.1)? {
        cur = next;
    }
    while let Some(next) = joint_degree2_white(&cur.0, &cur.1)? {
        cur = next;
    }
    loop {
        let (t, _) = &cur;
        let Some(v) = (0..t.vertex_count()).find(|&v| v != t.root() && t.is_black(v) && t.degree(v) >= 3) else {
            break;
        };
        cur = split_off_children(&cur.0, &cur.1, v)?;
    }
    if cur.0.degree(cur.0.root()) >= 2 {
        let root = cur.0.root();
        cur = split_off_children(&cur.0, &cur.1, root)?;
    }
    require_harvestable(&cur.0, &cur.1)?;
    Ok(cur)
}

/// The word of a harvestable pair: black chains read from the top down become
/// `z_{k_1} ... z_{k_r}`, and a white vertex with subtrees `T_j` contributes
/// `(w_1 sh ... sh w_s) x^{k'}` in front of the chain below it.
pub fn word_of_harvestable(x: &ColoredTree, k: &EdgeIndex) -> Result<LinComb> {
    require_harvestable(x, k)?;
    let rooted = x.rooted();
    match rooted.children[x.root()].as_slice() {
        [] => Ok(LinComb::one()),
        [(c, e)] => Ok(chain_word(x, k, &rooted.children, *c, k.get(*e))),
        _ => unreachable!("the root of a harvestable tree is a terminal"),
    }
}

/// Word of the subtree above `c` joined to a fresh black root by an edge labeled `label`.
fn chain_word(x: &ColoredTree, k: &EdgeIndex, children: &[Vec<(usize, usize)>], c: usize, label: u32) -> LinComb {
    let mut labels = vec![label];
    let mut cur = c;
    while x.is_black(cur) {
        match children[cur].as_slice() {
            [] => {
                labels.reverse();
                return LinComb::from_index(&Index::from_vec_unchecked(labels));
            }
            [(n, e)] => {
                labels.push(k.get(*e));
                cur = *n;
            }
            _ => unreachable!("black vertices of a harvestable tree are not branched"),
        }
    }
    let top = labels.pop().expect("at least one label");
    labels.reverse();
    let mut branches = LinComb::one();
    for &(ch, e) in &children[cur] {
        branches = branches.shuffle(&chain_word(x, k, children, ch, k.get(e)));
    }
    let tail = Word::x_power(top).concat(&Word::from_index(&Index::from_vec_unchecked(labels)));
    branches.append_word(&tail)
}

/// Value of a harvestable pair computed from its word.
pub fn tree_value_via_word(x: &ColoredTree, k: &EdgeIndex, values: &TruncatedValues) -> Result<TruncatedSeries> {
    values.sh_linear(&word_of_harvestable(x, k)?)
}

/// Words `w_n` with value `sum_n Z^sh(w_n) t^n`. A black root gives `[w(X_h, k_h)]`;
/// a white root is first moved to the first black terminal.
pub fn tree_word_expansion(x: &ColoredTree, k: &EdgeIndex, order: usize) -> Result<Vec<LinComb>> {
    k.check(x)?;
    x.require_essentially_positive(k)?;
    if x.is_black(x.root()) {
        let (h, kh) = harvest(x, k)?;
        return Ok(vec![word_of_harvestable(&h, &kh)?]);
    }
    let target = (0..x.vertex_count())
        .find(|&v| x.is_black(v) && x.is_terminal(v))
        .expect("every valid tree with a white vertex has a black terminal");
    let mut out = vec![LinComb::zero(); order];
    for term in change_root(x, k, target, order)? {
        let (h, kh) = harvest(&term.tree, &term.index)?;
        let w = word_of_harvestable(&h, &kh)?.scale(&term.coefficient);
        out[term.t_power].add_assign(&w);
    }
    Ok(out)
}

/// Tree value through root change, harvest and word evaluation.
pub fn tree_value_general(x: &ColoredTree, k: &EdgeIndex, params: TruncationParams) -> Result<TruncatedSeries> {
    let values = TruncatedValues::new(params);
    let mut acc = Series::zero(params.order());
    for (n, w) in tree_word_expansion(x, k, params.order())?.iter().enumerate() {
        if !w.is_zero() {
            acc += &values.sh_linear(w)?.shift(n);
        }
    }
    Ok(acc)
}
