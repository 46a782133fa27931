use crate::board::{PlayState, Vertex, VertexSet};
use crate::qbf::{solve_from, winning_value, Assignment, QbfWinner};
use crate::reductions::LabeledReduction;

use super::{legitimate_order, literal_for, replay, s_family, s_mask, LegitimateSlot, Prescribed, Side, StrategyError};

/// How an oracle chose its move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Following the schedule.
    Legitimate,
    /// Punishing an Avoider entry into `S_i`.
    Punish(usize),
    /// Pairing repair after an Enforcer deviation.
    Repair,
    /// No scripted answer applies; the move comes from a fallback rule.
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleMove {
    pub vertex: Vertex,
    pub mode: OracleMode,
}

/// Largest `i` such that the first vertex of `S_i` to be claimed went to Avoider.
pub fn punishment_focus(red: &LabeledReduction, history: &[Vertex]) -> Option<usize> {
    let family = s_family(red);
    let mut focus = None;
    for (idx, s) in family.iter().enumerate() {
        if let Some(t) = history.iter().position(|&v| s.contains(v)) {
            if t % 2 == 0 {
                focus = Some(idx + 1);
            }
        }
    }
    focus
}

fn lowest_free(free: VertexSet, candidates: &[Vertex]) -> Option<Vertex> {
    candidates.iter().copied().filter(|&v| free.contains(v)).min()
}

/// Enforcer's scripted answer once Avoider has entered `S_focus` first.
///
/// With Avoider one vertex ahead inside the set, Enforcer answers outside it
/// (lowest free id), which keeps Avoider the next to play inside. Two ahead,
/// Enforcer follows the per-case script, indexed by how many vertices of the
/// set he already holds.
pub fn enforcer_punish_move(red: &LabeledReduction, state: &PlayState, focus: usize) -> Result<Vertex, StrategyError> {
    let n = red.rounds();
    let s = s_mask(red, focus)?;
    let a = state.first().intersection(s).len();
    let e = state.second().intersection(s).len();
    let free = state.unclaimed();
    match a as isize - e as isize {
        1 => free
            .difference(s)
            .first()
            .ok_or(StrategyError::ScriptExhausted { focus, stage: e }),
        2 => {
            let k = focus.div_ceil(4);
            let exhausted = StrategyError::ScriptExhausted { focus, stage: e };
            let x = |v| red.x(v);
            let xb = |v| red.xbar(v);
            let pick: Option<Vertex> = if focus == 4 * n {
                free.intersection(s).first()
            } else {
                match (focus % 4, e) {
                    (1, 0) => Some(x(2 * k - 1)),
                    (1, 1) => red.u(6 * k - 2),
                    (2, 0) => red.u(6 * k - 2),
                    (3, 0) => red.u(6 * k),
                    (3, 1) => lowest_free(free, &[x(2 * k), xb(2 * k)]),
                    (0, 0) => lowest_free(free, &[x(2 * k), xb(2 * k), red.uu(6 * k)]),
                    (0, 1) => red.u(6 * k + 2),
                    _ => None,
                }
            };
            pick.filter(|&v| free.contains(v)).ok_or(exhausted)
        }
        _ => Err(StrategyError::NotADeviation(focus)),
    }
}

/// Truth values the position commits to: split pairs as read by the
/// valuation, a lone Enforcer literal as its own value (positive means true),
/// a lone Avoider literal as the opposite.
pub(crate) fn committed_values(red: &LabeledReduction, state: &PlayState) -> Assignment {
    let mut out = Assignment::new();
    let (a, e) = (state.first(), state.second());
    for var in 1..=2 * red.rounds() {
        let (x, xb) = (red.x(var), red.xbar(var));
        let value = match (e.contains(x), e.contains(xb), a.contains(x), a.contains(xb)) {
            (true, ..) => Some(true),
            (_, true, ..) => Some(false),
            (_, _, true, _) => Some(false),
            (_, _, _, true) => Some(true),
            _ => None,
        };
        if let Some(v) = value {
            out.set(var, v);
        }
    }
    out
}

/// `base` restricted to `1..upto`, with holes filled by each owner's winning
/// value (true when the owner has none).
pub(crate) fn complete_prefix(red: &LabeledReduction, base: &Assignment, upto: usize) -> Assignment {
    let phi = red.formula();
    let mut out = Assignment::new();
    for var in 1..upto {
        let v = match base.get(var) {
            Some(v) => v,
            None => winning_value(phi, &out, var)
                .expect("prefix complete")
                .unwrap_or(true),
        };
        out.set(var, v);
    }
    out
}

/// Plays the schedule while Avoider does, and punishes her first entry into
/// any `S_i`; the choices on odd variables follow a winning line for the
/// universal player when one exists.
#[derive(Debug, Clone, Copy)]
pub struct EnforcerOracle<'a> {
    red: &'a LabeledReduction,
}

impl<'a> EnforcerOracle<'a> {
    pub fn new(red: &'a LabeledReduction) -> Self {
        EnforcerOracle { red }
    }

    pub fn next_move(&self, history: &[Vertex]) -> Result<OracleMove, StrategyError> {
        let state = replay(self.red, history)?;
        if state.to_move() != crate::board::Player::Second {
            return Err(StrategyError::BadHistory("Avoider is to move".into()));
        }
        let free = state.unclaimed();
        let lowest = free.first().ok_or(StrategyError::NoLegalMove)?;
        if let Some(focus) = punishment_focus(self.red, history) {
            return Ok(match enforcer_punish_move(self.red, &state, focus) {
                Ok(v) => OracleMove {
                    vertex: v,
                    mode: OracleMode::Punish(focus),
                },
                Err(err) => {
                    log::debug!("punishment script unavailable ({err}); playing {lowest}");
                    OracleMove {
                        vertex: lowest,
                        mode: OracleMode::Fallback,
                    }
                }
            });
        }
        let order = legitimate_order(self.red.rounds());
        for slot in order.iter().filter(|s| s.mover == Side::Enforcer) {
            if let Some(v) = self.legit_vertex(slot, &state) {
                return Ok(OracleMove {
                    vertex: v,
                    mode: OracleMode::Legitimate,
                });
            }
        }
        log::debug!("schedule exhausted; playing {lowest}");
        Ok(OracleMove {
            vertex: lowest,
            mode: OracleMode::Fallback,
        })
    }

    // The vertex for an Enforcer step that is still open, or None if done.
    fn legit_vertex(&self, slot: &LegitimateSlot, state: &PlayState) -> Option<Vertex> {
        let red = self.red;
        let free = state.unclaimed();
        let mine = state.second();
        match slot.prescribed {
            Prescribed::U(j) => red.u(j).filter(|&v| free.contains(v)),
            Prescribed::Choice(var) | Prescribed::Remaining(var) => {
                let (x, xb) = (red.x(var), red.xbar(var));
                if mine.contains(x) || mine.contains(xb) {
                    return None;
                }
                match (free.contains(x), free.contains(xb)) {
                    (false, false) => None,
                    (true, false) => Some(x),
                    (false, true) => Some(xb),
                    (true, true) => {
                        let prefix = complete_prefix(red, &committed_values(red, state), var);
                        let value = self.falsifier_value(&prefix, var);
                        Some(literal_for(red, var, value, Side::Enforcer))
                    }
                }
            }
        }
    }

    // A value for `var` that keeps the universal player winning, true first.
    fn falsifier_value(&self, prefix: &Assignment, var: usize) -> bool {
        let phi = self.red.formula();
        for value in [true, false] {
            let mut a = prefix.clone();
            a.set(var, value);
            if solve_from(phi, &a, var + 1) == Ok(QbfWinner::FalsifierWins) {
                return value;
            }
        }
        true
    }
}
