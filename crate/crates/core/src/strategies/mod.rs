//! Move schedules, vertex sets and scripted strategies on compiled formula boards.
//!
//! On a board from [`reduce_qbf_to_ae`](crate::reductions::reduce_qbf_to_ae)
//! both players have a canonical ten-step schedule per round. The oracles here
//! follow that schedule and know how to answer when the opponent leaves it.

mod avoider;
mod enforcer;
mod pairing;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::board::{Hypergraph, PlayState, Vertex, VertexSet};
use crate::qbf::{Assignment, QbfWinner};
use crate::reductions::{EdgeTag, LabeledReduction};

pub use avoider::{avoider_repair_pairing, AvoiderOracle, RepairPlan};
pub use enforcer::{enforcer_punish_move, punishment_focus, EnforcerOracle, OracleMode, OracleMove};
pub use pairing::{pairing_move, PairSet, PairingRole};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no unclaimed vertex left")]
    NoLegalMove,
    #[error("position is not a first entry of Avoider into S({0})")]
    NotADeviation(usize),
    #[error("punishment script for S({focus}) has no move at stage {stage}")]
    ScriptExhausted { focus: usize, stage: usize },
    #[error("deviation on vertex {0}, an odd-indexed u")]
    IllegalDeviation(Vertex),
    #[error("pairs overlap or contain the distinguished vertex")]
    BadPairSet,
    #[error("move history is illegal: {0}")]
    BadHistory(String),
    #[error(transparent)]
    Solve(#[from] crate::solver::SolveError),
}

/// Which side a schedule step belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Avoider,
    Enforcer,
}

/// What a schedule step asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prescribed {
    U(usize),
    /// Pick either literal vertex of the variable.
    Choice(usize),
    /// Take the literal of the variable the opponent left.
    Remaining(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LegitimateSlot {
    pub round: usize,
    pub step: usize,
    pub mover: Side,
    pub prescribed: Prescribed,
}

/// The `10n` steps of the canonical schedule, rounds ascending.
pub fn legitimate_order(n: usize) -> Vec<LegitimateSlot> {
    let mut out = Vec::with_capacity(10 * n);
    for i in 1..=n {
        let (o, e) = (2 * i - 1, 2 * i);
        let steps = [
            Prescribed::U(6 * i - 5),
            Prescribed::U(6 * i - 4),
            Prescribed::U(6 * i - 3),
            Prescribed::Choice(o),
            Prescribed::Remaining(o),
            Prescribed::U(6 * i - 2),
            Prescribed::U(6 * i - 1),
            Prescribed::U(6 * i),
            Prescribed::Choice(e),
            Prescribed::Remaining(e),
        ];
        for (s, prescribed) in steps.into_iter().enumerate() {
            out.push(LegitimateSlot {
                round: i,
                step: s + 1,
                mover: if s % 2 == 0 { Side::Avoider } else { Side::Enforcer },
                prescribed,
            });
        }
    }
    out
}

/// Truth values read off fully split literal pairs: Avoider on the negative
/// literal means true, Avoider on the positive literal means false.
pub fn underlying_valuation(red: &LabeledReduction, state: &PlayState) -> Assignment {
    let (a, e) = (state.first(), state.second());
    let mut out = Assignment::new();
    for var in 1..=2 * red.rounds() {
        let (x, xb) = (red.x(var), red.xbar(var));
        if a.contains(xb) && e.contains(x) {
            out.set(var, true);
        } else if a.contains(x) && e.contains(xb) {
            out.set(var, false);
        }
    }
    out
}

/// `S_i` for `1 <= i <= 4n`.
pub fn s_set(red: &LabeledReduction, i: usize) -> Result<BTreeSet<Vertex>, StrategyError> {
    Ok(s_mask(red, i)?.iter().collect())
}

pub(crate) fn s_mask(red: &LabeledReduction, i: usize) -> Result<VertexSet, StrategyError> {
    let n = red.rounds();
    if i == 0 || i > 4 * n {
        return Err(StrategyError::IndexOutOfRange { index: i, max: 4 * n });
    }
    let mut s: VertexSet = [red.uu(6 * n), red.x(2 * n), red.xbar(2 * n)]
        .into_iter()
        .collect();
    for j in (i..4 * n).rev() {
        let k = j.div_ceil(4);
        let add: Vec<Vertex> = match j % 4 {
            0 => vec![red.uu(6 * k), red.x(2 * k), red.xbar(2 * k), red.uu(6 * k + 1)],
            3 => vec![red.uu(6 * k - 2), red.uu(6 * k - 1)],
            2 => vec![red.x(2 * k - 1), red.xbar(2 * k - 1)],
            _ => vec![red.uu(6 * k - 4), red.uu(6 * k - 3)],
        };
        for v in add {
            s.insert(v);
        }
    }
    Ok(s)
}

/// All `S_1 .. S_4n` as bitsets, index `i - 1`.
pub(crate) fn s_family(red: &LabeledReduction) -> Vec<VertexSet> {
    (1..=4 * red.rounds())
        .map(|i| s_mask(red, i).expect("in range"))
        .collect()
}

/// Largest `i` with `v` in `S_i`, or 0 when `v` is in none.
pub fn depth(red: &LabeledReduction, v: Vertex) -> usize {
    s_family(red)
        .iter()
        .rposition(|s| s.contains(v))
        .map_or(0, |p| p + 1)
}

/// Ordered pairs `(u, v)` such that every edge through `u` also contains `v`.
pub fn dominated_pairs(h: &Hypergraph) -> Vec<(Vertex, Vertex)> {
    let n = h.num_vertices();
    let mut through: Vec<Option<BTreeSet<Vertex>>> = vec![None; n + 1];
    for e in h.edges() {
        for &u in e {
            let es: BTreeSet<Vertex> = e.iter().copied().collect();
            through[u] = Some(match through[u].take() {
                None => es,
                Some(prev) => prev.intersection(&es).copied().collect(),
            });
        }
    }
    let mut out = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u == v {
                continue;
            }
            if through[u].as_ref().is_none_or(|common| common.contains(&v)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Vertex prescribed for the step, given the current position; `None` when
/// the step cannot be resolved (both literals taken, or the u was claimed).
///
/// `choice` picks the literal for `Choice` steps.
pub(crate) fn resolve_slot(
    red: &LabeledReduction,
    slot: &LegitimateSlot,
    state: &PlayState,
    choice: impl FnOnce(usize) -> Vertex,
) -> Option<Vertex> {
    let free = state.unclaimed();
    match slot.prescribed {
        Prescribed::U(j) => red.u(j).filter(|&v| free.contains(v)),
        Prescribed::Choice(var) => {
            let v = choice(var);
            free.contains(v).then_some(v)
        }
        Prescribed::Remaining(var) => {
            let (x, xb) = (red.x(var), red.xbar(var));
            match (free.contains(x), free.contains(xb)) {
                (true, false) => Some(x),
                (false, true) => Some(xb),
                _ => None,
            }
        }
    }
}

/// Vertices of the slot: the u, or both literals of the variable.
pub(crate) fn slot_vertices(red: &LabeledReduction, slot: &LegitimateSlot) -> Vec<Vertex> {
    match slot.prescribed {
        Prescribed::U(j) => red.u(j).into_iter().collect(),
        Prescribed::Choice(var) | Prescribed::Remaining(var) => vec![red.x(var), red.xbar(var)],
    }
}

/// Literal vertex realising `value` for the side that claims it.
///
/// Avoider claims the negative literal for true; Enforcer claims the positive one.
pub(crate) fn literal_for(red: &LabeledReduction, var: usize, value: bool, side: Side) -> Vertex {
    match (side, value) {
        (Side::Avoider, true) | (Side::Enforcer, false) => red.xbar(var),
        (Side::Avoider, false) | (Side::Enforcer, true) => red.x(var),
    }
}

/// One complete game played in schedule order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegitimatePlayout {
    pub moves: Vec<Vertex>,
    pub valuation: Assignment,
    /// Index of the least edge Avoider filled, if any.
    pub filled_edge: Option<usize>,
}

/// Every game in which both players follow the schedule; each literal choice
/// branches both ways. There are `4^n` of them.
pub fn legitimate_playouts(red: &LabeledReduction) -> Vec<LegitimatePlayout> {
    let order = legitimate_order(red.rounds());
    let mut out = Vec::new();
    let state = PlayState::new(red.num_vertices()).expect("board fits");
    playout_rec(red, &order, 0, state, &mut Vec::new(), &mut out);
    out
}

fn playout_rec(
    red: &LabeledReduction,
    order: &[LegitimateSlot],
    at: usize,
    state: PlayState,
    moves: &mut Vec<Vertex>,
    out: &mut Vec<LegitimatePlayout>,
) {
    let Some(slot) = order.get(at) else {
        out.push(LegitimatePlayout {
            moves: moves.clone(),
            valuation: underlying_valuation(red, &state),
            filled_edge: crate::board::avoider_filled(red.hypergraph(), state.first()),
        });
        return;
    };
    let options = match slot.prescribed {
        Prescribed::Choice(var) => vec![red.x(var), red.xbar(var)],
        _ => resolve_slot(red, slot, &state, |_| unreachable!()).into_iter().collect(),
    };
    for v in options {
        moves.push(v);
        playout_rec(red, order, at + 1, state.apply_move(v).expect("legal"), moves, out);
        moves.pop();
    }
}

/// Winner when both players are restricted to the schedule: Avoider picks the
/// even literals, Enforcer the odd ones, and Avoider wins iff she fills no edge.
pub fn legitimate_game_winner(red: &LabeledReduction) -> QbfWinner {
    let order = legitimate_order(red.rounds());
    let state = PlayState::new(red.num_vertices()).expect("board fits");
    if legit_minimax(red, &order, 0, state) {
        QbfWinner::SatisfierWins
    } else {
        QbfWinner::FalsifierWins
    }
}

// True iff Avoider avoids every edge under schedule-restricted optimal play.
fn legit_minimax(red: &LabeledReduction, order: &[LegitimateSlot], at: usize, state: PlayState) -> bool {
    let Some(slot) = order.get(at) else {
        return crate::board::avoider_filled(red.hypergraph(), state.first()).is_none();
    };
    let options = match slot.prescribed {
        Prescribed::Choice(var) => vec![red.x(var), red.xbar(var)],
        _ => resolve_slot(red, slot, &state, |_| unreachable!()).into_iter().collect(),
    };
    let mut results = options
        .into_iter()
        .map(|v| legit_minimax(red, order, at + 1, state.apply_move(v).expect("legal")));
    match slot.mover {
        Side::Avoider => results.any(|w| w),
        Side::Enforcer => results.all(|w| w),
    }
}

/// Whether the edge is one of the round gadgets rather than a clause edge.
pub fn is_gadget_edge(red: &LabeledReduction, edge: usize) -> bool {
    !matches!(red.tag(edge), EdgeTag::D(_))
}

pub(crate) fn replay(red: &LabeledReduction, history: &[Vertex]) -> Result<PlayState, StrategyError> {
    PlayState::from_moves(red.num_vertices(), history)
        .map_err(|e| StrategyError::BadHistory(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::{Literal as L, QbfFormula};
    use crate::reductions::reduce_qbf_to_ae;

    fn red(n: usize) -> LabeledReduction {
        let clauses = vec![[L::pos(1), L::pos(2), L::pos(2)]];
        reduce_qbf_to_ae(&QbfFormula::new(n, clauses).unwrap())
    }

    #[test]
    fn order_for_one_round() {
        let o = legitimate_order(1);
        let got: Vec<(Side, Prescribed)> = o.iter().map(|s| (s.mover, s.prescribed)).collect();
        use Prescribed::*;
        use Side::*;
        assert_eq!(
            got,
            vec![
                (Avoider, U(1)),
                (Enforcer, U(2)),
                (Avoider, U(3)),
                (Enforcer, Choice(1)),
                (Avoider, Remaining(1)),
                (Enforcer, U(4)),
                (Avoider, U(5)),
                (Enforcer, U(6)),
                (Avoider, Choice(2)),
                (Enforcer, Remaining(2)),
            ]
        );
        assert_eq!(legitimate_order(3).len(), 30);
    }

    #[test]
    fn valuation_examples() {
        let r = red(1);
        let s = PlayState::from_moves(10, &[r.xbar(1), r.x(1)]).unwrap();
        assert_eq!(underlying_valuation(&r, &s).get(1), Some(true));
        let s = PlayState::from_moves(10, &[r.x(1), r.xbar(1)]).unwrap();
        assert_eq!(underlying_valuation(&r, &s).get(1), Some(false));
        let s = PlayState::new(10).unwrap();
        assert_eq!(underlying_valuation(&r, &s).get(1), None);
    }

    #[test]
    fn s_sets() {
        let r = red(2);
        let s8: BTreeSet<Vertex> = [r.uu(12), r.x(4), r.xbar(4)].into_iter().collect();
        assert_eq!(s_set(&r, 8).unwrap(), s8);
        let mut s7 = s8.clone();
        s7.extend([r.uu(10), r.uu(11)]);
        assert_eq!(s_set(&r, 7).unwrap(), s7);
        assert!(matches!(s_set(&r, 9), Err(StrategyError::IndexOutOfRange { .. })));

        let r = red(1);
        let s1 = s_set(&r, 1).unwrap();
        assert_eq!(s1.len(), 9);
        assert!(!s1.contains(&r.uu(1)));
        assert_eq!(depth(&r, r.uu(1)), 0);
        assert_eq!(depth(&r, r.uu(6)), 4);
    }

    #[test]
    fn dominated_pair_examples() {
        let h = Hypergraph::new(3, [vec![1, 2], vec![2, 3]]).unwrap();
        let d = dominated_pairs(&h);
        assert!(d.contains(&(1, 2)) && d.contains(&(3, 2)));
        assert!(!d.contains(&(2, 1)));
        let h = Hypergraph::new(3, Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(dominated_pairs(&h).len(), 6);
    }
}
