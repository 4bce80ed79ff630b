//! Exhaustive generation of single-atom rooted trees, one per isomorphism class.

use crate::algebra::CbckAlgebra;
use crate::iso::CanonicalForm;

// (key, weight) where weight is node count or leaf count depending on caller.
type Shape = (String, usize);

/// Every multiset (as non-decreasing index sequences) of `pool` members whose
/// weights sum to at most `budget`, or exactly `budget` when `exact`.
fn multisets(pool: &[Shape], budget: usize, exact: bool, out: &mut Vec<(Vec<usize>, usize)>) {
    fn go(
        pool: &[Shape],
        start: usize,
        left: usize,
        exact: bool,
        picked: &mut Vec<usize>,
        used: usize,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        if !picked.is_empty() && (!exact || left == 0) {
            out.push((picked.clone(), used));
        }
        for i in start..pool.len() {
            let w = pool[i].1;
            if w > left {
                continue;
            }
            picked.push(i);
            go(pool, i, left - w, exact, picked, used + w, out);
            picked.pop();
        }
    }
    go(pool, 0, budget, exact, &mut Vec::new(), 0, out);
}

fn node_key(pool: &[Shape], children: &[usize]) -> String {
    let mut kids: Vec<&str> = children.iter().map(|&i| pool[i].0.as_str()).collect();
    kids.sort_unstable();
    let mut key = String::from("(");
    for k in kids {
        key.push_str(k);
    }
    key.push(')');
    key
}

/// All rooted trees with exactly `nodes` nodes, as sorted canonical keys.
pub fn rooted_trees(nodes: usize) -> Vec<CanonicalForm> {
    let mut by_size: Vec<Vec<String>> = vec![Vec::new(), vec!["()".to_string()]];
    for size in 2..=nodes {
        let pool: Vec<Shape> = (1..size)
            .flat_map(|s| by_size[s].iter().map(move |k| (k.clone(), s)))
            .collect();
        let mut sets = Vec::new();
        multisets(&pool, size - 1, true, &mut sets);
        let mut keys: Vec<String> = sets.iter().map(|(c, _)| node_key(&pool, c)).collect();
        keys.sort();
        by_size.push(keys);
    }
    if nodes == 0 {
        return Vec::new();
    }
    by_size[nodes]
        .iter()
        .map(|k| CanonicalForm::parse(k).expect("generated keys are canonical"))
        .collect()
}

/// Every subdirectly irreducible algebra with at most `max_nodes` elements,
/// trivial one included, ordered by size then key.
pub fn si_algebras(max_nodes: usize) -> Vec<CbckAlgebra> {
    let mut out = Vec::new();
    if max_nodes >= 1 {
        out.push(CbckAlgebra::trivial());
    }
    for n in 2..=max_nodes {
        for atom_tree in rooted_trees(n - 1) {
            let key = format!("({atom_tree})");
            out.push(build(&key));
        }
    }
    out
}

/// Every subdirectly irreducible algebra of height at most `max_height` with
/// at most `max_width` maximal elements, trivial one included.
pub fn si_algebras_bounded(max_height: u32, max_width: usize) -> Vec<CbckAlgebra> {
    let mut out = vec![CbckAlgebra::trivial()];
    if max_height == 0 || max_width == 0 {
        return out;
    }
    // level[h]: rooted trees of height ≤ h with at most max_width leaves.
    let mut level: Vec<Shape> = vec![("()".to_string(), 1)];
    for _ in 1..max_height {
        let mut sets = Vec::new();
        multisets(&level, max_width, false, &mut sets);
        let mut next: Vec<Shape> = vec![("()".to_string(), 1)];
        next.extend(
            sets.iter()
                .map(|(c, leaves)| (node_key(&level, c), *leaves)),
        );
        next.sort();
        level = next;
    }
    let mut keys: Vec<String> = level.iter().map(|(k, _)| format!("({k})")).collect();
    keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.extend(keys.iter().map(|k| build(k)));
    out
}

fn build(key: &str) -> CbckAlgebra {
    CanonicalForm::parse(key)
        .and_then(|k| k.to_algebra())
        .expect("generated keys are single-atom trees")
}
