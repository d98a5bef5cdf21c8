mod common;

use common::{mt_oracle, paired_chains_oracle, sh_oracle, star_oracle, tree_oracle, z_mod_oracle, z_oracle, RawTree};
use proptest::prelude::*;
use szv::finite::z_trunc_mod;
use szv::index::indices_up_to_weight;
use szv::mt::{mt_trunc, MtIndex};
use szv::trees::{random_tree, tree_value, tree_value_general, ColoredTree, EdgeIndex};
use szv::truncated::{sh_series, star_series, z_trunc, z_trunc_linear};
use szv::{Index, LinComb, TruncationParams};

fn p(m: u64, n: usize) -> TruncationParams {
    TruncationParams::new(m, n).unwrap()
}

#[test]
fn oracle_sanity() {
    use common::q;
    assert_eq!(star_oracle(&[1], 3, 3), vec![q(0, 1), q(-5, 4), q(-9, 8)]);
    assert_eq!(z_oracle(&[1, 2], 4), q(5, 12));
    assert_eq!(mt_oracle(&[1], 1, 3), q(5, 4));
    assert_eq!(mt_oracle(&[1, 1], 0, 3), q(1, 1));
    assert_eq!(paired_chains_oracle(&[1], &[1], 3), q(1, 1));
    // every split of (1,1) is empty at M = 2: the only mixed pair (1, -1) has gap 2
    assert_eq!(sh_oracle(&[1, 1], 2, 1), vec![q(0, 1)]);
}

#[test]
fn star_matches_chain_enumeration() {
    for k in indices_up_to_weight(4) {
        for m in 1..=8 {
            assert_eq!(star_series(&k, p(m, 3)).coeffs(), star_oracle(k.entries(), m, 3).as_slice(), "({k}) M={m}");
        }
    }
}

#[test]
fn sh_matches_tuple_enumeration() {
    for k in indices_up_to_weight(4) {
        for m in 1..=8 {
            assert_eq!(sh_series(&k, p(m, 3)).coeffs(), sh_oracle(k.entries(), m, 3).as_slice(), "({k}) M={m}");
        }
    }
}

#[test]
fn depth_one_star_and_sh_agree() {
    for k in 1..=6 {
        let k = Index::new(vec![k]).unwrap();
        for m in 1..=20 {
            assert_eq!(star_series(&k, p(m, 3)), sh_series(&k, p(m, 3)));
        }
    }
}

#[test]
fn truncated_sums_match_enumeration() {
    for k in indices_up_to_weight(5) {
        for m in [1, 2, 5, 9] {
            assert_eq!(z_trunc(&k, m).unwrap(), z_oracle(k.entries(), m), "({k}) M={m}");
        }
    }
}

#[test]
fn mt_sums_match_enumeration() {
    for idx in MtIndex::all_up_to(5, 3) {
        for m in [1, 2, 4, 7] {
            assert_eq!(mt_trunc(&idx, m), mt_oracle(idx.heads(), idx.tail(), m), "({idx}) M={m}");
        }
    }
}

#[test]
fn mt_depth_one_collapses() {
    for a in 0..=6u32 {
        for b in 0..=6 - a {
            if a + b == 0 {
                continue;
            }
            let idx = MtIndex::new(vec![a], b).unwrap();
            for m in 1..=20 {
                assert_eq!(mt_trunc(&idx, m), z_trunc(&Index::new(vec![a + b]).unwrap(), m).unwrap());
            }
        }
    }
}

#[test]
fn modular_sums_match_exact_reduction() {
    for k in indices_up_to_weight(5) {
        for prime in [5, 7, 11, 13] {
            for n in 1..=3 {
                assert_eq!(z_trunc_mod(&k, prime, n).unwrap().residue, z_mod_oracle(k.entries(), prime, n), "({k}) p={prime} n={n}");
            }
        }
    }
}

#[test]
fn paired_chains_match_shuffle_product() {
    for k in indices_up_to_weight(4).into_iter().filter(|k| !k.is_empty()) {
        for l in indices_up_to_weight(5 - k.weight()).into_iter().filter(|l| !l.is_empty()) {
            let w = LinComb::from_index(&k).shuffle(&LinComb::from_index(&l));
            for m in [1, 3, 6, 10] {
                assert_eq!(z_trunc_linear(&w, m).unwrap(), paired_chains_oracle(k.entries(), l.entries(), m));
            }
        }
    }
}

pub fn raw(x: &ColoredTree, k: &EdgeIndex) -> RawTree {
    let j = serde_json::to_value(x.to_json(k)).unwrap();
    let name = |v: &serde_json::Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
    RawTree {
        vertices: j["vertices"].as_array().unwrap().iter().map(name).collect(),
        edges: j["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (name(&e["u"]), name(&e["v"]), e["k"].as_u64().unwrap() as u32))
            .collect(),
        root: name(&j["root"]),
        black: j["black"].as_array().unwrap().iter().map(name).collect(),
    }
}

#[test]
fn tree_values_match_enumeration() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (x, k) = random_tree(&mut rng, 6, 3);
        let t = raw(&x, &k);
        for m in [2, 4] {
            let direct = tree_value(&x, &k, p(m, 3)).unwrap();
            assert_eq!(direct.coeffs(), tree_oracle(&t, m, 3).as_slice(), "{x}");
            assert_eq!(tree_value_general(&x, &k, p(m, 3)).unwrap(), direct, "{x}");
        }
    }
}

fn small_index() -> impl Strategy<Value = Index> {
    proptest::collection::vec(1u32..4, 0..4).prop_filter_map("weight <= 5", |v| {
        (v.iter().sum::<u32>() <= 5).then(|| Index::new(v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_oracle_random(k in small_index(), m in 1u64..7, n in 1usize..4) {
        prop_assert_eq!(star_series(&k, p(m, n)).coeffs().to_vec(), star_oracle(k.entries(), m, n));
    }

    #[test]
    fn sh_oracle_random(k in small_index(), m in 1u64..7, n in 1usize..4) {
        prop_assert_eq!(sh_series(&k, p(m, n)).coeffs().to_vec(), sh_oracle(k.entries(), m, n));
    }
}
