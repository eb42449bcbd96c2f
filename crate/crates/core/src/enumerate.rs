//! Small-graph sweeps: every isomorphism class on `n` vertices, or seeded
//! random samples for larger `n`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_code, canonical_form, CanonicalCode};
use crate::graph::{Graph, Vertex};

/// Largest `n` for exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// One representative (in canonical form) of every isomorphism class on
/// `n` vertices, in ascending canonical-code order.
///
/// Built by adding a vertex with every possible neighborhood to each class
/// on `n − 1` vertices; every graph arises this way from the class of any
/// vertex-deleted subgraph.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= EXHAUSTIVE_LIMIT,
        "exhaustive enumeration supports n ≤ {EXHAUSTIVE_LIMIT}"
    );
    let mut level = vec![Graph::empty(0).unwrap()];
    for k in 1..=n {
        let mut next: Vec<(CanonicalCode, Graph)> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (k - 1)).map(move |nbrs| {
                    let mut adj = g.adjacency().to_vec();
                    adj.push(nbrs);
                    for (v, row) in adj.iter_mut().enumerate().take(k - 1) {
                        if nbrs >> v & 1 == 1 {
                            *row |= 1 << (k - 1);
                        }
                    }
                    let h = Graph::from_adjacency(&adj).expect("valid adjacency");
                    let c = canonical_form(&h);
                    (canonical_code(&c), c)
                })
            })
            .collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    level
}

/// Isomorphism classes on `n` vertices that satisfy `pred`.
pub fn enumerate_small_graphs(n: usize, pred: impl Fn(&Graph) -> bool + Sync) -> Vec<Graph> {
    all_graphs(n).into_par_iter().filter(|g| pred(g)).collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    enumerate_small_graphs(n, Graph::is_connected)
}

/// Every labeled graph on `n` vertices, one per edge subset. Kept as an
/// independent reference for tiny `n`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(
        pairs.len() < 64,
        "too many vertex pairs for labeled enumeration"
    );
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        )
        .unwrap()
    })
}

/// Up to `count` pairwise non-isomorphic `G(n, p)` samples satisfying
/// `pred`, drawn from a seeded stream; gives up after `20 · count` draws.
pub fn sample_graphs(
    n: usize,
    p: f64,
    count: usize,
    seed: u64,
    pred: impl Fn(&Graph) -> bool,
) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..count.saturating_mul(20) {
        if out.len() == count {
            break;
        }
        let edges: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::new(n, edges).expect("n within range");
        if !pred(&g) {
            continue;
        }
        if seen.insert(canonical_code(&g)) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn class_counts() {
        let all: Vec<usize> = (1..=7).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn matches_labeled_reference() {
        for n in 1..=5 {
            let mut codes: Vec<CanonicalCode> =
                labeled_graphs(n).map(|g| canonical_code(&g)).collect();
            codes.sort();
            codes.dedup();
            let ours: Vec<CanonicalCode> = all_graphs(n).iter().map(canonical_code).collect();
            assert_eq!(codes, ours, "n = {n}");
        }
    }

    #[test]
    fn small_cases_by_hand() {
        let one = all_graphs(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].m(), 0);
        let three = connected_graphs(3);
        assert_eq!(three.len(), 2);
        assert!(three
            .iter()
            .any(|g| is_isomorphic(g, &crate::graph::named::path(3))));
        assert!(three
            .iter()
            .any(|g| is_isomorphic(g, &crate::graph::named::complete(3))));
    }

    #[test]
    fn samples_are_distinct_and_seeded() {
        let a = sample_graphs(9, 0.4, 10, 1, Graph::is_connected);
        let b = sample_graphs(9, 0.4, 10, 1, Graph::is_connected);
        assert_eq!(a, b);
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                assert!(!is_isomorphic(&a[i], &a[j]));
            }
        }
    }
}
