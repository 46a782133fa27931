//! Seed splitting and random instance generators.
//!
//! Every random case derives its own 64-bit seed from a master seed and a
//! path of indices, so any single case can be replayed on its own.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{Hypergraph, Vertex};
use crate::qbf::{Literal, QbfFormula};

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed number `index` of `seed`.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    splitmix(splitmix(seed) ^ splitmix(index.wrapping_add(0x632B_E59B_D9B4_E019)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hypergraph on `vertices` vertices with `edges` distinct-vertex edges whose
/// sizes are drawn from `sizes` (clamped to the vertex count).
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Hypergraph {
    let all: Vec<Vertex> = (1..=vertices).collect();
    let lo = (*sizes.start()).clamp(1, vertices);
    let hi = (*sizes.end()).clamp(lo, vertices);
    let list: Vec<Vec<Vertex>> = (0..edges)
        .map(|_| {
            let k = rng.random_range(lo..=hi);
            let mut e: Vec<Vertex> = all.choose_multiple(rng, k).copied().collect();
            e.sort_unstable();
            e
        })
        .collect();
    Hypergraph::new(vertices, list).expect("edges are in range")
}

/// Same as [`random_hypergraph`], then every vertex on no edge is added to a
/// random edge that does not yet contain it.
pub fn random_covering_hypergraph<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Hypergraph {
    let h = random_hypergraph(rng, vertices, edges.max(1), sizes);
    let mut list = h.edges().to_vec();
    for v in 1..=vertices {
        if h.degree(v) == 0 {
            let c = rng.random_range(0..list.len());
            list[c].push(v);
            list[c].sort_unstable();
        }
    }
    Hypergraph::new(vertices, list).expect("edges are in range")
}

pub fn random_literal<R: Rng>(rng: &mut R, vars: usize) -> Literal {
    let var = rng.random_range(1..=vars);
    if rng.random_bool(0.5) {
        Literal::pos(var)
    } else {
        Literal::neg(var)
    }
}

/// Formula with `rounds` rounds and `clauses` uniformly random 3-literal clauses.
pub fn random_formula<R: Rng>(rng: &mut R, rounds: usize, clauses: usize) -> QbfFormula {
    let vars = 2 * rounds;
    let list = (0..clauses)
        .map(|_| {
            [
                random_literal(rng, vars),
                random_literal(rng, vars),
                random_literal(rng, vars),
            ]
        })
        .collect();
    QbfFormula::new(rounds, list).expect("valid formula")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_is_deterministic_and_spread() {
        assert_eq!(split_seed(7, 3), split_seed(7, 3));
        assert_ne!(split_seed(7, 3), split_seed(7, 4));
        assert_ne!(split_seed(7, 3), split_seed(8, 3));
    }

    #[test]
    fn covering_has_no_isolated_vertex() {
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let h = random_covering_hypergraph(&mut rng, 4, 2, 1..=2);
            assert!((1..=4).all(|v| h.degree(v) > 0));
        }
    }
}
