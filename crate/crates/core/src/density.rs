//! Density `ω(G)`, overfullness and the fractional chromatic index.
//!
//! `ω(G)` is the maximum of `|E(G[X])| / ⌊|X|/2⌋` over vertex subsets with
//! `|X| ≥ 3`, computed exactly by subset enumeration.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::{Bits, Graph, GraphError, Vertex};

/// Default upper bound on `n` for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Exact rational, always in lowest terms.
pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityResult {
    #[serde(with = "ratio_serde")]
    pub omega: Rational,
    pub witness: Vec<Vertex>,
}

pub fn density(g: &Graph) -> Result<DensityResult, GraphError> {
    density_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn density_with_limit(g: &Graph, limit: usize) -> Result<DensityResult, GraphError> {
    let n = g.n();
    if n > limit {
        return Err(GraphError::InstanceTooLarge { n, limit });
    }
    if n <= 2 {
        return Ok(DensityResult {
            omega: Rational::from_integer(0),
            witness: Vec::new(),
        });
    }
    let delta = g.max_degree() as u64;
    let mut best: Option<(Rational, u64)> = None;
    for size in (3..=n).rev() {
        let half = (size / 2) as u64;
        let s = size as u64;
        let bound = Rational::new((s * (s - 1) / 2).min(s * delta / 2), half);
        if let Some((value, _)) = best {
            if bound < value {
                continue;
            }
        }
        for set in subsets_of_size(n, size) {
            let value = Rational::new(g.edges_within(set) as u64, half);
            let better = match best {
                None => true,
                Some((bv, bs)) => candidate_order(value, set, bv, bs) == Ordering::Greater,
            };
            if better {
                best = Some((value, set));
            }
        }
    }
    let (omega, set) = best.expect("n >= 3 has a subset of size 3");
    Ok(DensityResult {
        omega,
        witness: Bits(set).collect(),
    })
}

/// Total order used to pick the witness: larger value, then odd cardinality,
/// then larger cardinality, then the lexicographically smaller vertex list.
fn candidate_order(va: Rational, sa: u64, vb: Rational, sb: u64) -> Ordering {
    let (ca, cb) = (sa.count_ones(), sb.count_ones());
    va.cmp(&vb)
        .then((ca % 2).cmp(&(cb % 2)))
        .then(ca.cmp(&cb))
        .then_with(|| Bits(sb).cmp(Bits(sa)))
}

/// All `size`-element subsets of `[0, n)` as bit masks (Gosper's hack).
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let first = if size == 0 {
        0
    } else {
        u64::MAX >> (64 - size)
    };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= limit && nxt > cur).then_some(nxt)
            }
        };
        Some(cur)
    })
}

pub fn is_overfull(g: &Graph) -> bool {
    g.m() > g.max_degree() * (g.n() / 2)
}

/// `max{Δ, ω}`.
pub fn fractional_chromatic_index(g: &Graph) -> Result<Rational, GraphError> {
    let omega = density(g)?.omega;
    Ok(omega.max(Rational::from_integer(g.max_degree() as u64)))
}

pub(crate) mod ratio_serde {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Pair {
        numer: u64,
        denom: u64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Pair {
            numer: *r.numer(),
            denom: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let p = Pair::deserialize(d)?;
        if p.denom == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(p.numer, p.denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    /// Brute force over every subset, independent of the size-ordered search.
    fn omega_oracle(g: &Graph) -> Rational {
        if g.n() <= 2 {
            return Rational::from_integer(0);
        }
        let mut best = Rational::from_integer(0);
        for set in 0..(1u64 << g.n()) {
            let k = set.count_ones() as u64;
            if k < 3 {
                continue;
            }
            let mut e = 0u64;
            for &(u, v) in g.edges() {
                if set >> u & 1 == 1 && set >> v & 1 == 1 {
                    e += 1;
                }
            }
            best = best.max(Rational::new(e, k / 2));
        }
        best
    }

    #[test]
    fn gosper_counts() {
        for n in 0..10usize {
            for k in 1..=n {
                let count = subsets_of_size(n, k).count();
                let expected = (0..(1u64 << n))
                    .filter(|s| s.count_ones() as usize == k)
                    .count();
                assert_eq!(count, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn k5_minus_density() {
        let g = k5_minus();
        let d = density(&g).unwrap();
        assert_eq!(omega_oracle(&g), Rational::new(9, 2));
        assert_eq!(d.omega, Rational::new(9, 2));
        assert_eq!(d.witness, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn tiny_graphs_have_zero_density() {
        for n in 0..=2 {
            let d = density(&complete(n)).unwrap();
            assert_eq!(d.omega, Rational::from_integer(0));
            assert!(d.witness.is_empty());
        }
    }

    #[test]
    fn c5_density() {
        let g = cycle(5);
        assert_eq!(omega_oracle(&g), Rational::new(5, 2));
        let d = density(&g).unwrap();
        assert_eq!(d.omega, Rational::new(5, 2));
        assert_eq!(d.witness, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn overfull_examples() {
        assert!(is_overfull(&k5_minus()));
        assert!(!is_overfull(&petersen_minus_vertex()));
        assert_eq!(petersen_minus_vertex().m(), 12);
        assert!(is_overfull(&cycle(5)));
        assert!(!is_overfull(&cycle(6)));
    }

    #[test]
    fn fractional_index_examples() {
        assert_eq!(
            fractional_chromatic_index(&k5_minus()).unwrap(),
            Rational::new(9, 2)
        );
        assert_eq!(omega_oracle(&complete(4)), Rational::from_integer(3));
        assert_eq!(
            fractional_chromatic_index(&complete(4)).unwrap(),
            Rational::from_integer(3)
        );
        assert_eq!(
            fractional_chromatic_index(&Graph::empty(5).unwrap()).unwrap(),
            Rational::from_integer(0)
        );
    }

    #[test]
    fn witness_matches_value_and_is_odd_above_delta() {
        for g in [
            k5_minus(),
            cycle(7),
            petersen(),
            petersen_minus_vertex(),
            complete(6),
        ] {
            let d = density(&g).unwrap();
            assert_eq!(d.omega, omega_oracle(&g));
            let set = d.witness.iter().fold(0u64, |a, &v| a | 1 << v);
            let k = d.witness.len() as u64;
            assert!(k >= 3);
            assert_eq!(d.omega, Rational::new(g.edges_within(set) as u64, k / 2));
            if d.omega > Rational::from_integer(g.max_degree() as u64) {
                assert_eq!(k % 2, 1);
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let g = Graph::empty(25).unwrap();
        assert_eq!(
            density(&g),
            Err(GraphError::InstanceTooLarge { n: 25, limit: 24 })
        );
    }
}
