//! Solver and formula-game results checked against the brute-force references.

mod common;

use avoidance::qbf::{solve_qbf_game, QbfWinner};
use avoidance::solver::{best_move, solve_aa, solve_ae, solve_domination, solve_hgame, Game, SolveOptions, Solver};
use avoidance::verify::contains_by_injection;
use avoidance::{subgraph_contains, Graph, Hypergraph, Outcome, PlayState, VertexSet};
use proptest::prelude::*;

fn ae_score(o: Outcome) -> i8 {
    match o {
        Outcome::AvoiderWins => 1,
        Outcome::EnforcerWins => -1,
        other => panic!("not an AE outcome: {other}"),
    }
}

fn aa_score(o: Outcome) -> i8 {
    match o {
        Outcome::SecondPlayerLoses => 1,
        Outcome::Draw => 0,
        Outcome::FirstPlayerLoses => -1,
        other => panic!("not an AA outcome: {other}"),
    }
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

fn set(n: usize, bits: u64) -> VertexSet {
    (1..=n).filter(|&v| bits >> (v - 1) & 1 == 1).fold(VertexSet::empty(), |s, v| s.with(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn formula_game_matches_enumeration(phi in common::arb_formula(2, 5)) {
        let expected = if common::qbf_satisfier_wins(&phi) {
            QbfWinner::SatisfierWins
        } else {
            QbfWinner::FalsifierWins
        };
        prop_assert_eq!(solve_qbf_game(&phi), expected);
    }

    #[test]
    fn ae_matches_minimax((n, edges) in common::arb_hypergraph(7, 5, 4)) {
        let h = Hypergraph::new(n, edges.clone()).unwrap();
        let want = common::ae(n, &edges);
        let pruned = solve_ae(&h, &SolveOptions::default()).unwrap();
        let plain = solve_ae(&h, &SolveOptions::default().without_pruning()).unwrap();
        prop_assert_eq!(ae_score(pruned.outcome), want);
        prop_assert_eq!(ae_score(plain.outcome), want);
    }

    #[test]
    fn aa_matches_minimax((n, edges) in common::arb_hypergraph(7, 5, 4)) {
        let h = Hypergraph::new(n, edges.clone()).unwrap();
        prop_assert_eq!(aa_score(solve_aa(&h, &SolveOptions::default()).unwrap().outcome), common::aa(n, &edges));
    }

    #[test]
    fn domination_matches_minimax((n, edges) in common::arb_graph(1, 7)) {
        let want = if common::domination(n, &edges) == 1 {
            Outcome::StallerWins
        } else {
            Outcome::DominatorWins
        };
        prop_assert_eq!(solve_domination(&graph(n, &edges), &SolveOptions::default()).unwrap().outcome, want);
    }

    #[test]
    fn hgame_matches_minimax((n, host) in common::arb_graph(1, 7), (pn, pat) in common::arb_graph(1, 3)) {
        let want = if common::hgame(n, &host, pn, &pat) == 1 {
            Outcome::AvoiderWins
        } else {
            Outcome::EnforcerWins
        };
        let got = solve_hgame(&graph(n, &host), &graph(pn, &pat), &SolveOptions::default()).unwrap();
        prop_assert_eq!(got.outcome, want);
    }

    #[test]
    fn subgraph_tests_agree((n, host) in common::arb_graph(1, 7), (pn, pat) in common::arb_graph(1, 4), bits in any::<u64>()) {
        let bits = bits & ((1u64 << n) - 1);
        let want = common::contains_pattern(&host, bits, pn, &pat);
        let (g, p, s) = (graph(n, &host), graph(pn, &pat), set(n, bits));
        prop_assert_eq!(subgraph_contains(&g, s, &p), want);
        prop_assert_eq!(contains_by_injection(&g, s, &p), want);
    }

    #[test]
    fn best_move_is_optimal_and_lowest((n, edges) in common::arb_hypergraph(6, 4, 3), prefix in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let h = Hypergraph::new(n, edges.clone()).unwrap();
        let mut state = PlayState::new(n).unwrap();
        for ix in prefix {
            let free: Vec<usize> = state.unclaimed().iter().collect();
            if free.len() <= 1 {
                break;
            }
            state = state.apply_move(free[ix.index(free.len())]).unwrap();
        }
        let bits = |s: VertexSet| s.iter().fold(0u64, |m, v| m | 1 << (v - 1));
        let value = |s: &PlayState| common::ae_value(n, &edges, bits(s.first()), bits(s.second()));
        if Solver::new(Game::AvoiderEnforcer(&h), SolveOptions::default()).unwrap().is_ended(&state) {
            return Ok(());
        }
        let v = best_move(Game::AvoiderEnforcer(&h), &state, &SolveOptions::default()).unwrap();
        let target = value(&state);
        prop_assert_eq!(value(&state.apply_move(v).unwrap()), target);
        for w in state.unclaimed().iter().filter(|&w| w < v) {
            prop_assert_ne!(value(&state.apply_move(w).unwrap()), target);
        }
    }

    #[test]
    fn solver_scores_every_position((n, edges) in common::arb_hypergraph(6, 4, 3), moves in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let h = Hypergraph::new(n, edges.clone()).unwrap();
        let mut solver = Solver::new(Game::AvoiderEnforcer(&h), SolveOptions::default()).unwrap();
        let mut state = PlayState::new(n).unwrap();
        for ix in moves {
            let free: Vec<usize> = state.unclaimed().iter().collect();
            if free.is_empty() {
                break;
            }
            state = state.apply_move(free[ix.index(free.len())]).unwrap();
        }
        let bits = |s: VertexSet| s.iter().fold(0u64, |m, v| m | 1 << (v - 1));
        let want = common::ae_value(n, &edges, bits(state.first()), bits(state.second()));
        prop_assert_eq!(solver.score(&state).unwrap(), want);
    }
}

#[test]
fn small_known_games() {
    let opts = SolveOptions::default();
    let single = Hypergraph::new(1, vec![vec![1]]).unwrap();
    assert_eq!(solve_ae(&single, &opts).unwrap().outcome, Outcome::EnforcerWins);
    assert_eq!(solve_aa(&single, &opts).unwrap().outcome, Outcome::FirstPlayerLoses);
    let pair = Hypergraph::new(2, vec![vec![1, 2]]).unwrap();
    assert_eq!(solve_ae(&pair, &opts).unwrap().outcome, Outcome::AvoiderWins);
    assert_eq!(common::ae(2, &vec![vec![1, 2]]), 1);
    assert_eq!(common::aa(1, &vec![vec![1]]), -1);
}
