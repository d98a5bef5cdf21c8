//! Two-colored rooted trees carrying nonnegative edge labels, their truncated
//! t-adic values, value-preserving rewrites, and reduction to words.

mod harvest;
mod random;
mod rewrite;
mod value;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use harvest::{
    harvest, is_harvestable, tree_value_general, tree_value_via_word, tree_word_expansion, word_of_harvestable,
    HarvestCondition,
};
pub use random::random_tree;
pub use rewrite::{change_root, contract_zero_edge, joint_degree2_white, one_step_decompose, RootChangeTerm};
pub use value::{tree_value, tree_value_at};

/// Invariants: connected, acyclic, every terminal black, ids unique and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTree {
    ids: Vec<String>,
    edges: Vec<[usize; 2]>,
    root: usize,
    black: Vec<bool>,
}

/// Edge labels aligned with [`ColoredTree::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeIndex(Vec<u32>);

impl EdgeIndex {
    pub fn new(labels: Vec<u32>) -> Self {
        EdgeIndex(labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, e: usize) -> u32 {
        self.0[e]
    }

    pub(crate) fn labels_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }

    pub(crate) fn check(&self, tree: &ColoredTree) -> Result<()> {
        if self.0.len() != tree.edge_count() {
            return Err(Error::LengthMismatch { left: tree.edge_count(), right: self.0.len() });
        }
        Ok(())
    }
}

/// Parent links and children lists with respect to the root.
pub(crate) struct Rooted {
    /// `(parent, edge)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    /// `(child, edge)` sorted by child position.
    pub children: Vec<Vec<(usize, usize)>>,
    /// Breadth-first order from the root.
    pub order: Vec<usize>,
}

impl ColoredTree {
    /// Builds and validates a tree; the edge order is kept as given.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)], root: &str, black: &[S]) -> Result<Self> {
        let mut ids: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree(format!("duplicate vertex id `{}`", w[0])));
        }
        if ids.is_empty() {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        let pos: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |s: &str| {
            pos.get(s).copied().ok_or_else(|| Error::InvalidTree(format!("edge endpoint `{s}` is not a vertex")))
        };
        let mut es = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at `{}`", ids[a])));
            }
            es.push([a, b]);
        }
        let root = pos
            .get(root)
            .copied()
            .ok_or_else(|| Error::InvalidTree(format!("root `{root}` is not a vertex")))?;
        let mut is_black = vec![false; ids.len()];
        for b in black {
            let b = b.as_ref();
            let i = pos.get(b).copied().ok_or_else(|| Error::InvalidTree(format!("black vertex `{b}` is not a vertex")))?;
            is_black[i] = true;
        }
        let tree = ColoredTree { ids, edges: es, root, black: is_black };
        tree.validate()?;
        Ok(tree)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ids.len();
        if self.edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "#V = {n} but #E = {}; a tree needs #V = #E + 1",
                self.edges.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &[a, b] in &self.edges {
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidTree(format!("duplicate edge {{{}, {}}}", self.ids[a], self.ids[b])));
            }
        }
        let mut reached = vec![false; n];
        let mut queue = VecDeque::from([self.root]);
        reached[self.root] = true;
        let adj = self.adjacency();
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !reached[w] {
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = reached.iter().position(|r| !r) {
            return Err(Error::InvalidTree(format!("vertex `{}` is not connected to the root", self.ids[v])));
        }
        for v in 0..n {
            if adj[v].len() == 1 && !self.black[v] {
                return Err(Error::InvalidTree(format!("terminal vertex `{}` must be black", self.ids[v])));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|s| s.as_str().cmp(id))
            .map_err(|_| Error::InvalidArgument(format!("unknown vertex `{id}`")))
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_id(&self) -> &str {
        &self.ids[self.root]
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black[v]
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.ids.len()).filter(|&v| self.black[v]).collect()
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.ids.len()];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for list in &mut adj {
            list.sort();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e[0] == v || e[1] == v).count()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub(crate) fn rooted(&self) -> Rooted {
        let n = self.ids.len();
        let adj = self.adjacency();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    children[v].push((w, e));
                    queue.push_back(w);
                }
            }
        }
        Rooted { parent, children, order }
    }

    /// Edges of the unique simple path from `a` to `b`, in walking order.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.ids.len();
        let adj = self.adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = b;
        while let Some((p, e)) = prev[v] {
            out.push(e);
            v = p;
        }
        out.reverse();
        out
    }

    pub fn path_by_id(&self, a: &str, b: &str) -> Result<Vec<(String, String)>> {
        let (a, b) = (self.position(a)?, self.position(b)?);
        Ok(self
            .path(a, b)
            .into_iter()
            .map(|e| (self.ids[self.edges[e][0]].clone(), self.ids[self.edges[e][1]].clone()))
            .collect())
    }

    /// Black vertices on the far side of each edge from the root.
    pub(crate) fn black_below(&self) -> Vec<Vec<usize>> {
        let rooted = self.rooted();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); self.ids.len()];
        for &v in rooted.order.iter().rev() {
            let mut acc: Vec<usize> = if self.black[v] { vec![v] } else { Vec::new() };
            for &(c, _) in &rooted.children[v] {
                acc.extend(below[c].iter().copied());
            }
            acc.sort();
            below[v] = acc;
        }
        let mut per_edge = vec![Vec::new(); self.edges.len()];
        for (v, p) in rooted.parent.iter().enumerate() {
            if let Some((_, e)) = p {
                per_edge[*e] = below[v].clone();
            }
        }
        per_edge
    }

    /// Same tree with another root.
    pub fn with_root(&self, root: usize) -> ColoredTree {
        ColoredTree { root, ..self.clone() }
    }

    /// First pair of distinct black vertices joined by a zero-weight path, if any.
    pub fn essential_positivity_violation(&self, k: &EdgeIndex) -> Result<Option<(usize, usize)>> {
        k.check(self)?;
        let blacks = self.black_vertices();
        for (i, &a) in blacks.iter().enumerate() {
            for &b in &blacks[i + 1..] {
                if self.path(a, b).iter().map(|&e| k.get(e)).sum::<u32>() == 0 {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_essentially_positive(&self, k: &EdgeIndex) -> Result<bool> {
        Ok(self.essential_positivity_violation(k)?.is_none())
    }

    pub(crate) fn require_essentially_positive(&self, k: &EdgeIndex) -> Result<()> {
        if let Some((a, b)) = self.essential_positivity_violation(k)? {
            return Err(Error::NotEssentiallyPositive(self.ids[a].clone(), self.ids[b].clone()));
        }
        Ok(())
    }

    /// Rebuilds from id-level parts; used by rewrites.
    pub(crate) fn rebuild(
        vertices: Vec<String>,
        labeled_edges: Vec<(String, String, u32)>,
        root: &str,
        black: Vec<String>,
    ) -> Result<(ColoredTree, EdgeIndex)> {
        let edges: Vec<(String, String)> = labeled_edges.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect();
        let labels = labeled_edges.iter().map(|e| e.2).collect();
        let tree = ColoredTree::new(&vertices, &edges, root, &black)?;
        Ok((tree, EdgeIndex(labels)))
    }

    pub(crate) fn labeled_edges(&self, k: &EdgeIndex) -> Vec<(String, String, u32)> {
        self.edges
            .iter()
            .zip(k.labels())
            .map(|(&[a, b], &l)| (self.ids[a].clone(), self.ids[b].clone(), l))
            .collect()
    }

    pub(crate) fn black_ids(&self) -> Vec<String> {
        self.black_vertices().into_iter().map(|v| self.ids[v].clone()).collect()
    }

    pub fn to_json(&self, k: &EdgeIndex) -> TreeJson {
        TreeJson {
            vertices: self.ids.iter().cloned().map(VertexId::Name).collect(),
            edges: self
                .labeled_edges(k)
                .into_iter()
                .map(|(u, v, k)| EdgeJson { u: VertexId::Name(u), v: VertexId::Name(v), k: k as i64 })
                .collect(),
            root: VertexId::Name(self.root_id().to_string()),
            black: self.black_ids().into_iter().map(VertexId::Name).collect(),
        }
    }
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colored: Vec<String> = self
            .ids
            .iter()
            .enumerate()
            .map(|(v, id)| if self.black[v] { id.clone() } else { format!("{id}°") })
            .collect();
        let edges: Vec<String> = self.edges.iter().map(|&[a, b]| format!("{}-{}", self.ids[a], self.ids[b])).collect();
        write!(f, "root {} | vertices {} | edges {}", self.root_id(), colored.join(" "), edges.join(" "))
    }
}

/// Vertex ids may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Name(String),
    Number(i64),
}

impl VertexId {
    fn into_name(self) -> String {
        match self {
            VertexId::Name(s) => s,
            VertexId::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: VertexId,
    pub v: VertexId,
    pub k: i64,
}

/// Wire form `{"vertices": [...], "edges": [{"u", "v", "k"}], "root", "black": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeJson>,
    pub root: VertexId,
    pub black: Vec<VertexId>,
}

impl TreeJson {
    pub fn into_tree(self) -> Result<(ColoredTree, EdgeIndex)> {
        let vertices: Vec<String> = self.vertices.into_iter().map(VertexId::into_name).collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut labels = Vec::with_capacity(self.edges.len());
        for e in self.edges {
            let (u, v) = (e.u.into_name(), e.v.into_name());
            if e.k < 0 {
                return Err(Error::InvalidTree(format!("edge {{{u}, {v}}} has negative label {}", e.k)));
            }
            labels.push(u32::try_from(e.k).map_err(|_| Error::InvalidTree(format!("label {} too large", e.k)))?);
            edges.push((u, v));
        }
        let black: Vec<String> = self.black.into_iter().map(VertexId::into_name).collect();
        let tree = ColoredTree::new(&vertices, &edges, &self.root.into_name(), &black)?;
        Ok((tree, EdgeIndex(labels)))
    }

    pub fn parse(text: &str) -> Result<(ColoredTree, EdgeIndex)> {
        let raw: TreeJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("tree JSON: {e}")))?;
        raw.into_tree()
    }
}

/// Linear tree `v1 - v2 - ... - v_{r+1}` rooted at `v_{r+1}`, all black,
/// with `k_1` on the edge at the leaf.
pub fn linear_tree(k: &[u32]) -> (ColoredTree, EdgeIndex) {
    let r = k.len();
    let ids: Vec<String> = (1..=r + 1).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, u32)> =
        (0..r).map(|i| (ids[i].clone(), ids[i + 1].clone(), k[i])).collect();
    let root = ids[r].clone();
    ColoredTree::rebuild(ids.clone(), edges, &root, ids).expect("linear trees are valid")
}

/// Two black chains `a1 - ... - ar - v` and `b1 - ... - bs - v` rooted at `v`, with
/// `k_1` at the leaf `a1`, `k_r` at `v`, and likewise for `l`.
pub fn shuffle_tree(k: &[u32], l: &[u32]) -> (ColoredTree, EdgeIndex) {
    let chain = |name: char, labels: &[u32]| -> (Vec<String>, Vec<(String, String, u32)>) {
        let ids: Vec<String> = (1..=labels.len()).map(|i| format!("{name}{i}")).collect();
        let edges = labels
            .iter()
            .enumerate()
            .map(|(i, &x)| (ids[i].clone(), ids.get(i + 1).cloned().unwrap_or_else(|| "v".into()), x))
            .collect();
        (ids, edges)
    };
    let (mut ids, mut edges) = chain('a', k);
    let (b_ids, b_edges) = chain('b', l);
    ids.extend(b_ids);
    edges.extend(b_edges);
    ids.push("v".into());
    ColoredTree::rebuild(ids.clone(), edges, "v", ids).expect("two chains form a valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn parse(j: &str) -> (ColoredTree, EdgeIndex) {
        TreeJson::parse(j).unwrap()
    }

    #[test]
    fn paths() {
        let (x, _) = linear_tree(&[1, 2]);
        assert_eq!(
            x.path_by_id("v1", "v3").unwrap(),
            vec![("v1".to_string(), "v2".to_string()), ("v2".to_string(), "v3".to_string())]
        );
        assert!(x.path_by_id("v2", "v2").unwrap().is_empty());
        assert!(x.path_by_id("v2", "zz").is_err());
        let (s, _) = parse(
            r#"{"vertices":["a","b","w"],"edges":[{"u":"a","v":"w","k":1},{"u":"w","v":"b","k":1}],"root":"a","black":["a","b"]}"#,
        );
        assert_eq!(s.path_by_id("a", "b").unwrap().len(), 2);
    }

    #[test]
    fn rejects_invalid_trees() {
        let bad = [
            (r#"{"vertices":["a","b"],"edges":[],"root":"a","black":["a","b"]}"#, "#E"),
            (r#"{"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","k":1},{"u":"a","v":"b","k":1}],"root":"a","black":["a","b","c"]}"#, "duplicate edge"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","k":1}],"root":"a","black":["a"]}"#, "must be black"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"c","k":1}],"root":"a","black":["a","b"]}"#, "not a vertex"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","k":1}],"root":"z","black":["a","b"]}"#, "root"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","k":-1}],"root":"a","black":["a","b"]}"#, "negative"),
            (r#"{"vertices":["a","a"],"edges":[{"u":"a","v":"a","k":1}],"root":"a","black":["a"]}"#, "duplicate vertex"),
        ];
        for (j, needle) in bad {
            let err = TreeJson::parse(j).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} should mention {needle}");
        }
        assert!(TreeJson::parse("{").unwrap_err().is_parse());
    }

    #[test]
    fn json_round_trip_and_numeric_ids() {
        let (x, k) = parse(r#"{"vertices":[1,2],"edges":[{"u":1,"v":2,"k":3}],"root":2,"black":[1,2]}"#);
        assert_eq!(x.root_id(), "2");
        let text = serde_json::to_string(&x.to_json(&k)).unwrap();
        assert_eq!(TreeJson::parse(&text).unwrap(), (x, k));
    }

    #[test]
    fn essential_positivity() {
        let (x, _) = linear_tree(&[1, 1]);
        assert!(!x.is_essentially_positive(&EdgeIndex::new(vec![0, 1])).unwrap());
        assert!(x.is_essentially_positive(&EdgeIndex::new(vec![1])).is_err());
        let (s, _) = parse(
            r#"{"vertices":["a","b","c","w"],"edges":[{"u":"a","v":"w","k":0},{"u":"b","v":"w","k":1},{"u":"c","v":"w","k":1}],"root":"a","black":["a","b","c"]}"#,
        );
        assert!(s.is_essentially_positive(&EdgeIndex::new(vec![0, 1, 1])).unwrap());
        assert!(!s.is_essentially_positive(&EdgeIndex::new(vec![0, 0, 1])).unwrap());
    }

    #[test]
    fn shuffle_tree_values() {
        use crate::index::{b_binom, compositions_below};
        use crate::{Index, LinComb, TruncatedValues, TruncationParams};
        use num_rational::BigRational;
        let params = TruncationParams::new(5, 3).unwrap();
        let values = TruncatedValues::new(params);
        for (k, l) in [(vec![1], vec![1]), (vec![2, 1], vec![1]), (vec![], vec![2])] {
            let (x, idx) = shuffle_tree(&k, &l);
            let (ki, li) = (Index::new(k.clone()).unwrap(), Index::new(l.clone()).unwrap());
            let word = LinComb::from_index(&ki).shuffle(&LinComb::from_index(&li));
            assert_eq!(tree_value(&x, &idx, params).unwrap(), values.sh_linear(&word).unwrap());
            let top = if l.is_empty() { x.root() } else { x.position("b1").unwrap() };
            let mut moved = crate::Series::zero(3);
            for term in change_root(&x, &idx, top, 3).unwrap() {
                moved += &tree_value(&term.tree, &term.index, params).unwrap().scale(&term.coefficient).shift(term.t_power);
            }
            let mut dsr = crate::Series::zero(3);
            for lp in compositions_below(li.depth(), 3) {
                let c = BigRational::from_integer(b_binom(li.entries(), &lp).unwrap());
                let w: u32 = lp.iter().sum();
                dsr += &values.sh(&ki.concat(&li.add_composition(&lp).unwrap().reversed())).scale(&c).shift(w as usize);
            }
            if li.weight() % 2 == 1 {
                dsr = dsr.neg();
            }
            assert_eq!(moved, dsr);
        }
    }
}
