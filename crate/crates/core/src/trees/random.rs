use rand::Rng;

use super::{ColoredTree, EdgeIndex};

/// A valid, essentially positive labeled tree with `1..=max_vertices` vertices and
/// labels in `0..=max_label`. Each vertex attaches to a uniformly chosen earlier one;
/// terminals are forced black and labels resampled until essentially positive.
pub fn random_tree<R: Rng>(rng: &mut R, max_vertices: usize, max_label: u32) -> (ColoredTree, EdgeIndex) {
    assert!(max_vertices >= 1 && max_label >= 1);
    let n = rng.gen_range(1..=max_vertices);
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut degree = vec![0usize; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((ids[j].clone(), ids[i].clone()));
        degree[i] += 1;
        degree[j] += 1;
    }
    let black: Vec<String> = (0..n)
        .filter(|&v| degree[v] <= 1 || rng.gen_bool(0.5))
        .map(|v| ids[v].clone())
        .collect();
    let root = ids[rng.gen_range(0..n)].clone();
    let tree = ColoredTree::new(&ids, &edges, &root, &black).expect("construction yields a valid tree");
    loop {
        let labels: Vec<u32> = (0..tree.edge_count()).map(|_| rng.gen_range(0..=max_label)).collect();
        let k = EdgeIndex::new(labels);
        if tree.is_essentially_positive(&k).expect("labels match edges") {
            return (tree, k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_trees_are_valid_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (x, k) = random_tree(&mut a, 7, 3);
            assert!(x.vertex_count() <= 7);
            assert!(k.labels().iter().all(|&l| l <= 3));
            assert!(x.is_essentially_positive(&k).unwrap());
            assert_eq!((x, k), random_tree(&mut b, 7, 3));
        }
    }
}
