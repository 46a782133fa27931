//! Brute-force reference implementations written straight from the game
//! definitions: play every line to a full board, no memo, no pruning.
#![allow(dead_code)]

use avoidance::qbf::{Literal, QbfFormula};
use proptest::prelude::*;

pub type Edges = Vec<Vec<usize>>;

fn bit(v: usize) -> u64 {
    1 << (v - 1)
}

fn mask(e: &[usize]) -> u64 {
    e.iter().fold(0, |m, &v| m | bit(v))
}

fn first_to_move(first: u64, second: u64) -> bool {
    first.count_ones() == second.count_ones()
}

/// Score for the first player to move from `(first, second)`; `leaf` scores
/// full boards from the first player's view, and the first player maximises.
fn full_board_minimax(n: usize, first: u64, second: u64, leaf: &dyn Fn(u64, u64) -> i8) -> i8 {
    let free: Vec<usize> = (1..=n).filter(|&v| (first | second) & bit(v) == 0).collect();
    if free.is_empty() {
        return leaf(first, second);
    }
    let mover_first = first_to_move(first, second);
    let scores = free.iter().map(|&v| {
        if mover_first {
            full_board_minimax(n, first | bit(v), second, leaf)
        } else {
            full_board_minimax(n, first, second | bit(v), leaf)
        }
    });
    if mover_first {
        scores.max().unwrap()
    } else {
        scores.min().unwrap()
    }
}

/// Avoider-Enforcer from a position: +1 if Avoider (first) ends with no full edge.
pub fn ae_value(n: usize, edges: &Edges, first: u64, second: u64) -> i8 {
    let masks: Vec<u64> = edges.iter().map(|e| mask(e)).collect();
    full_board_minimax(n, first, second, &|a, _| {
        if masks.iter().any(|&m| a & m == m) {
            -1
        } else {
            1
        }
    })
}

pub fn ae(n: usize, edges: &Edges) -> i8 {
    ae_value(n, edges, 0, 0)
}

/// Avoider-Avoider: whoever first completes an edge inside their own claims
/// loses; +1 means the second player lost, 0 a draw.
pub fn aa(n: usize, edges: &Edges) -> i8 {
    fn go(n: usize, masks: &[u64], first: u64, second: u64) -> i8 {
        let free: Vec<usize> = (1..=n).filter(|&v| (first | second) & bit(v) == 0).collect();
        if free.is_empty() {
            return 0;
        }
        let mover_first = first_to_move(first, second);
        let scores = free.iter().map(|&v| {
            let mine = if mover_first { first } else { second } | bit(v);
            if masks.iter().any(|&m| m & bit(v) != 0 && mine & m == m) {
                return if mover_first { -1 } else { 1 };
            }
            if mover_first {
                go(n, masks, mine, second)
            } else {
                go(n, masks, first, mine)
            }
        });
        if mover_first {
            scores.max().unwrap()
        } else {
            scores.min().unwrap()
        }
    }
    let masks: Vec<u64> = edges.iter().map(|e| mask(e)).collect();
    go(n, &masks, 0, 0)
}

/// Closed neighbourhood masks of a simple graph given as an edge list.
fn closed(n: usize, graph: &[(usize, usize)]) -> Vec<u64> {
    let mut nb: Vec<u64> = (1..=n).map(bit).collect();
    for &(u, v) in graph {
        nb[u - 1] |= bit(v);
        nb[v - 1] |= bit(u);
    }
    nb
}

/// Domination game, Staller first: +1 iff Dominator's final set dominates.
pub fn domination(n: usize, graph: &[(usize, usize)]) -> i8 {
    let nb = closed(n, graph);
    full_board_minimax(n, 0, 0, &|_, d| {
        if nb.iter().all(|&m| m & d != 0) {
            1
        } else {
            -1
        }
    })
}

/// Does the vertex set `s` of the host contain the pattern as a (not
/// necessarily induced) subgraph? Tries every injective placement.
pub fn contains_pattern(host: &[(usize, usize)], s: u64, pn: usize, pattern: &[(usize, usize)]) -> bool {
    let adj = |a: usize, b: usize| host.iter().any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a));
    let verts: Vec<usize> = (1..=64).filter(|&v| s & bit(v) != 0).collect();
    fn place(
        i: usize,
        pn: usize,
        verts: &[usize],
        used: &mut Vec<usize>,
        pattern: &[(usize, usize)],
        adj: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == pn {
            return pattern.iter().all(|&(a, b)| adj(used[a - 1], used[b - 1]));
        }
        for &v in verts {
            if !used.contains(&v) {
                used.push(v);
                if place(i + 1, pn, verts, used, pattern, adj) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    place(0, pn, &verts, &mut Vec::new(), pattern, &adj)
}

/// Vertex H-game, Avoider first: +1 iff Avoider's final set avoids the pattern.
pub fn hgame(n: usize, host: &[(usize, usize)], pn: usize, pattern: &[(usize, usize)]) -> i8 {
    full_board_minimax(n, 0, 0, &|a, _| {
        if contains_pattern(host, a, pn, pattern) {
            -1
        } else {
            1
        }
    })
}

fn clause_holds(c: &[Literal; 3], values: &[bool]) -> bool {
    c.iter().any(|l| values[l.var - 1] == l.positive)
}

/// Formula game by full enumeration: odd variables universal, even existential.
pub fn qbf_satisfier_wins(phi: &QbfFormula) -> bool {
    fn go(phi: &QbfFormula, values: &mut Vec<bool>) -> bool {
        let var = values.len() + 1;
        if var > phi.num_vars() {
            return phi.clauses().iter().all(|c| clause_holds(c, values));
        }
        let mut results = [false, true].into_iter().map(|b| {
            values.push(b);
            let r = go(phi, values);
            values.pop();
            r
        });
        if var % 2 == 1 {
            results.all(|r| r)
        } else {
            results.any(|r| r)
        }
    }
    go(phi, &mut Vec::new())
}

/// Hypergraph on 1..=max_n vertices with up to `max_edges` non-empty edges
/// of size at most `max_size`.
pub fn arb_hypergraph(max_n: usize, max_edges: usize, max_size: usize) -> impl Strategy<Value = (usize, Edges)> {
    (1..=max_n).prop_flat_map(move |n| {
        let edge = prop::collection::btree_set(1..=n, 1..=max_size.min(n)).prop_map(|s| s.into_iter().collect());
        (Just(n), prop::collection::vec(edge, 1..=max_edges))
    })
}

/// Simple graph on 1..=max_n vertices.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        (Just(n), prop::collection::vec(any::<bool>(), k)).prop_map(move |(n, keep)| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e).collect();
            (n, edges)
        })
    })
}

pub fn arb_literal(vars: usize) -> impl Strategy<Value = Literal> + Clone {
    (1..=vars, any::<bool>()).prop_map(|(v, pos)| if pos { Literal::pos(v) } else { Literal::neg(v) })
}

pub fn arb_formula(max_rounds: usize, max_clauses: usize) -> impl Strategy<Value = QbfFormula> {
    (1..=max_rounds).prop_flat_map(move |rounds| {
        let lit = arb_literal(2 * rounds);
        prop::collection::vec([lit.clone(), lit.clone(), lit], 0..=max_clauses)
            .prop_map(move |clauses| QbfFormula::new(rounds, clauses).unwrap())
    })
}
