use crate::board::{PlayState, Player, Vertex, VertexSet};
use crate::qbf::{winning_value, Assignment};
use crate::reductions::LabeledReduction;
use crate::solver::{Game, SolveOptions, Solver};

use super::enforcer::{committed_values, complete_prefix, OracleMode, OracleMove};
use super::pairing::{pairing_move, PairSet, PairingRole};
use crate::reductions::VertexLabel;

use super::{depth, legitimate_order, literal_for, replay, s_mask, LegitimateSlot, Prescribed, Side, StrategyError};

/// Avoider's answer to the first off-schedule Enforcer move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairPlan {
    /// Smallest `k` with the deviating vertex outside `S_k`; `4n + 1` when it lies in every set.
    pub k: usize,
    /// `S_k` (empty for `k = 4n + 1`).
    pub inside: VertexSet,
    /// Vertex Avoider claims at once.
    pub y_a: Vertex,
    pub y_e: Vertex,
    pub intent: Assignment,
    pub pairs: PairSet,
}

fn done(red: &LabeledReduction, slot: &LegitimateSlot, claimed: VertexSet) -> bool {
    match slot.prescribed {
        Prescribed::U(j) => red.u(j).is_none_or(|v| claimed.contains(v)),
        Prescribed::Choice(var) => claimed.contains(red.x(var)) || claimed.contains(red.xbar(var)),
        Prescribed::Remaining(var) => claimed.contains(red.x(var)) && claimed.contains(red.xbar(var)),
    }
}

/// Whether claiming `v` carries out `slot` in `state`.
fn fulfils(red: &LabeledReduction, slot: &LegitimateSlot, state: &PlayState, v: Vertex) -> bool {
    let free = state.unclaimed();
    match slot.prescribed {
        Prescribed::U(j) => red.u(j) == Some(v),
        Prescribed::Choice(var) => (v == red.x(var) || v == red.xbar(var)) && free.contains(v),
        Prescribed::Remaining(var) => {
            let (x, xb) = (red.x(var), red.xbar(var));
            (v == x && !free.contains(xb)) || (v == xb && !free.contains(x))
        }
    }
}

/// Values Avoider plays toward after a deviation: committed literals keep
/// their value, untouched universal variables are read as false, and
/// untouched existential ones take the existential player's winning value.
/// An existential literal Enforcer grabbed off schedule commits nothing:
/// its partner gets paired with the variable's clause companion, so clause
/// edges through either literal are covered by Enforcer.
fn intent_valuation(red: &LabeledReduction, state: &PlayState, y_a: Option<Vertex>, y_e: Vertex) -> Assignment {
    let mut committed = committed_values(red, state);
    if let VertexLabel::X(var) | VertexLabel::XBar(var) = red.label(y_e) {
        let other = if y_e == red.x(var) { red.xbar(var) } else { red.x(var) };
        if var % 2 == 0 && state.unclaimed().contains(other) {
            committed.unset(var);
        }
    }
    if let Some(v) = y_a {
        // Avoider is about to claim y_a; read it as hers.
        for var in 1..=2 * red.rounds() {
            if committed.get(var).is_none() {
                if v == red.x(var) {
                    committed.set(var, false);
                } else if v == red.xbar(var) {
                    committed.set(var, true);
                }
            }
        }
    }
    let phi = red.formula();
    let mut out = Assignment::new();
    for var in 1..=2 * red.rounds() {
        let value = committed.get(var).unwrap_or_else(|| {
            if var % 2 == 1 {
                false
            } else {
                winning_value(phi, &out, var).expect("prefix complete").unwrap_or(true)
            }
        });
        out.set(var, value);
    }
    out
}

/// Pairs Avoider uses outside `S_k` after Enforcer played `y_e` instead of
/// the scheduled `y_a`, for the position right after `y_e`.
///
/// Starts from the per-round pairs `(u(6i-4), xA(2i-1))`, `(u(6i-3), u(6i-6))`,
/// `(xE(2i-1), u(6i-1))`, `(u(6i-2), xA(2i))`, `(u(6i+1), xE(2i))` from `y_a` on,
/// applies the local rewiring around `y_a` and `y_e`, then drops pairs that
/// touch claimed vertices or `S_k`. `xA`/`xE` are the literals Avoider and
/// Enforcer end up with under `intent`.
pub fn avoider_repair_pairing(
    red: &LabeledReduction,
    state: &PlayState,
    y_a: Vertex,
    y_e: Vertex,
    intent: &Assignment,
) -> Result<PairSet, StrategyError> {
    Ok(repair_pairs(red, state, y_a, y_e, intent, None)?.0)
}

// Returns the pair set and S_k. `step10_var` marks a deviation on the
// remaining literal of that even variable, re-read as a deviation from the
// next round's first Enforcer step.
fn repair_pairs(
    red: &LabeledReduction,
    state: &PlayState,
    y_a: Vertex,
    y_e: Vertex,
    intent: &Assignment,
    step10_var: Option<usize>,
) -> Result<(PairSet, VertexSet, usize), StrategyError> {
    let n = red.rounds();
    if let VertexLabel::U(j) = red.label(y_e) {
        if j % 2 == 1 {
            return Err(StrategyError::IllegalDeviation(y_e));
        }
    }
    let k = depth(red, y_e) + 1;
    let inside = if k <= 4 * n { s_mask(red, k)? } else { VertexSet::empty() };

    let value = |var: usize| intent.get(var).unwrap_or(false);
    let xa = |var: usize| literal_for(red, var, value(var), Side::Avoider);
    let xe = |var: usize| literal_for(red, var, value(var), Side::Enforcer);
    let u = |j: usize| if j == 0 { None } else { red.u(j) };

    // Position in the schedule of every Enforcer-side pair member.
    let order = legitimate_order(n);
    let pos_of = |round: usize, step: usize| (round - 1) * 10 + step - 1;
    let y_a_pos = (0..order.len())
        .find(|&p| {
            let slot = &order[p];
            super::slot_vertices(red, slot).contains(&y_a)
        })
        .ok_or_else(|| StrategyError::BadHistory(format!("vertex {y_a} is on no schedule step")))?;

    // A missing partner (a dropped u) leaves a single Enforcer has to take.
    // Pairs through claimed vertices or S_k are skipped and override nothing.
    let gone = state.claimed().with(y_a).with(y_e).union(inside);
    let mut pairs: Vec<(Vertex, Option<Vertex>)> = Vec::new();
    let add = |pairs: &mut Vec<(Vertex, Option<Vertex>)>, a: Option<Vertex>, b: Option<Vertex>| {
        let (a, b) = match (a, b) {
            (Some(a), b) => (a, b),
            (None, Some(b)) => (b, None),
            (None, None) => return,
        };
        if gone.contains(a) || b.is_some_and(|b| gone.contains(b)) {
            return;
        }
        let touches = |v: Vertex| v == a || Some(v) == b;
        pairs.retain(|&(p, q)| !touches(p) && !q.is_some_and(touches));
        pairs.push((a, b));
    };
    for i in 1..=n {
        let base: [(Option<Vertex>, Option<Vertex>, usize); 5] = [
            (u(6 * i - 4), Some(xa(2 * i - 1)), pos_of(i, 2)),
            (u(6 * i - 3), u(6 * i - 6), if i > 1 { pos_of(i - 1, 8) } else { 0 }),
            (Some(xe(2 * i - 1)), u(6 * i - 1), pos_of(i, 4)),
            (u(6 * i - 2), Some(xa(2 * i)), pos_of(i, 6)),
            (u(6 * i + 1), Some(xe(2 * i)), pos_of(i, 10)),
        ];
        for (a, b, enforcer_pos) in base {
            let keep = enforcer_pos >= y_a_pos || (step10_var == Some(2 * i) && enforcer_pos == pos_of(i, 10));
            if keep {
                add(&mut pairs, a, b);
            }
        }
    }

    // Rewiring around the vertex Avoider takes.
    let lit_var = |v: Vertex| match red.label(v) {
        VertexLabel::X(var) | VertexLabel::XBar(var) => Some(var),
        _ => None,
    };
    let other_literal = |v: Vertex, var: usize| if v == red.x(var) { red.xbar(var) } else { red.x(var) };
    match red.label(y_a) {
        VertexLabel::U(j) => {
            let i = j.div_ceil(6);
            match j % 6 {
                2 => add(&mut pairs, u(6 * i - 3), Some(xa(2 * i - 1))),
                4 => add(&mut pairs, u(6 * i - 1), Some(xa(2 * i))),
                0 => add(&mut pairs, u(6 * i + 3), Some(xa(2 * i))),
                _ => {}
            }
        }
        _ => {
            if let Some(var) = lit_var(y_a).filter(|v| v % 2 == 1) {
                let i = var.div_ceil(2);
                add(&mut pairs, Some(other_literal(y_a, var)), u(6 * i - 1));
            }
        }
    }
    // Rewiring around the vertex Enforcer took.
    if let Some(var) = lit_var(y_e) {
        let i = var.div_ceil(2);
        let star = other_literal(y_e, var);
        if var % 2 == 1 {
            add(&mut pairs, Some(star), u(6 * i - 4));
        } else {
            add(&mut pairs, Some(star), u(6 * i + 1));
            add(&mut pairs, u(6 * i - 2), u(6 * i));
        }
    }

    let singles: Vec<Vertex> = pairs.iter().filter(|p| p.1.is_none()).map(|p| p.0).collect();
    let mut pairs: Vec<(Vertex, Vertex)> = pairs.into_iter().filter_map(|(a, b)| b.map(|b| (a, b))).collect();
    let covered: VertexSet = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(singles.iter().copied()).collect();
    let mut loose: Vec<Vertex> = state.unclaimed().difference(gone).difference(covered).iter().collect();
    let distinguished = match (k == 4 * n + 1, singles.as_slice()) {
        (true, [v]) => Some(*v),
        (true, []) if !loose.is_empty() => Some(loose.remove(0)),
        (false, []) => None,
        _ => {
            return Err(StrategyError::BadHistory(format!(
                "repair pairing leaves {singles:?} for Enforcer"
            )))
        }
    };
    // Vertices the table leaves out are paired off lowest first.
    if loose.len() % 2 == 1 {
        return Err(StrategyError::BadHistory(format!("repair pairing leaves {loose:?} unpaired")));
    }
    if !loose.is_empty() {
        log::debug!("repair pairing completed with {loose:?}");
    }
    pairs.extend(loose.chunks(2).map(|c| (c[0], c[1])));
    Ok((PairSet::new(pairs, distinguished)?, inside, k))
}

/// Plays the schedule, choosing existential literals along a winning line,
/// and switches to a repair pairing after Enforcer's first deviation. Lines it
/// has no script for are handed to the exact solver; such moves are reported
/// with [`OracleMode::Fallback`] and counted.
pub struct AvoiderOracle<'a> {
    red: &'a LabeledReduction,
    solver: Solver<'a>,
    fallbacks: u64,
}

enum Phase {
    Schedule,
    Repair(RepairPlan),
    Fallback(String),
}

impl<'a> AvoiderOracle<'a> {
    pub fn new(red: &'a LabeledReduction, opts: SolveOptions) -> Result<Self, StrategyError> {
        Ok(AvoiderOracle {
            red,
            solver: Solver::new(Game::AvoiderEnforcer(red.hypergraph()), opts)?,
            fallbacks: 0,
        })
    }

    /// Number of moves so far delegated to the solver.
    pub fn fallbacks(&self) -> u64 {
        self.fallbacks
    }

    pub fn next_move(&mut self, history: &[Vertex]) -> Result<OracleMove, StrategyError> {
        let state = replay(self.red, history)?;
        if state.to_move() != Player::First {
            return Err(StrategyError::BadHistory("Enforcer is to move".into()));
        }
        if state.unclaimed().is_empty() {
            return Err(StrategyError::NoLegalMove);
        }
        let scripted = match self.relabel(history) {
            Ok((virt, relabel)) => {
                let vstate = replay(self.red, &virt)?;
                match self.phase(&virt) {
                    Phase::Schedule => self.schedule_move(&vstate).map(|v| (v, OracleMode::Legitimate)),
                    Phase::Repair(plan) => self.repair_move(&plan, &virt, &vstate).map(|v| (v, OracleMode::Repair)),
                    Phase::Fallback(r) => Err(r),
                }
                .map(|(v, mode)| (relabel.back[v], mode))
            }
            Err(r) => Err(r),
        };
        let reason = match scripted {
            Ok((vertex, mode)) if state.unclaimed().contains(vertex) => return Ok(OracleMove { vertex, mode }),
            Ok(_) => "scripted vertex is taken".to_string(),
            Err(r) => r,
        };
        self.fallbacks += 1;
        log::info!("avoider oracle falls back to the solver after {:?}: {reason}", history);
        Ok(OracleMove {
            vertex: self.solver.best_move(&state)?,
            mode: OracleMode::Fallback,
        })
    }

    /// Renames Enforcer's odd-u moves. Every edge through the schedule vertex
    /// just before an odd `u` also contains that `u`, so Enforcer taking the
    /// `u` is read as taking its predecessor, and Avoider later takes the
    /// predecessor wherever the schedule hands her the `u`.
    fn relabel(&self, history: &[Vertex]) -> Result<(Vec<Vertex>, Relabel), String> {
        let red = self.red;
        let nv = red.num_vertices();
        let mut r = Relabel {
            fwd: (0..=nv).collect(),
            back: (0..=nv).collect(),
        };
        let mut state = PlayState::new(nv).expect("board fits");
        let mut virt = Vec::with_capacity(history.len());
        for (t, &v) in history.iter().enumerate() {
            let mut w = r.fwd[v];
            if t % 2 == 1 {
                if let VertexLabel::U(j) = red.label(w) {
                    if j % 2 == 1 {
                        let p = self
                            .predecessor(j, &state)
                            .ok_or_else(|| format!("Enforcer took u({j}) with its predecessor gone"))?;
                        let q = r.back[p];
                        r.fwd[v] = p;
                        r.fwd[q] = w;
                        r.back[p] = v;
                        r.back[w] = q;
                        w = p;
                    }
                }
            }
            state = state.apply_move(w).map_err(|e| e.to_string())?;
            virt.push(w);
        }
        Ok((virt, r))
    }

    // Free schedule vertex right before u(j), j odd.
    fn predecessor(&self, j: usize, state: &PlayState) -> Option<Vertex> {
        let red = self.red;
        let free = state.unclaimed();
        let p = match j % 6 {
            3 => red.u(j - 1),
            5 => red.u(j - 1),
            1 if j > 1 => {
                let var = (j - 1) / 3;
                [red.x(var), red.xbar(var)].into_iter().find(|&v| free.contains(v))
            }
            _ => None,
        };
        p.filter(|&v| free.contains(v))
    }

    fn phase(&self, history: &[Vertex]) -> Phase {
        let red = self.red;
        let order = legitimate_order(red.rounds());
        let mut state = PlayState::new(red.num_vertices()).expect("board fits");
        let mut plan: Option<(RepairPlan, usize)> = None;
        for (t, &v) in history.iter().enumerate() {
            let enforcer = t % 2 == 1;
            match &plan {
                None if enforcer => {
                    let claimed = state.claimed();
                    let slot = order.iter().find(|s| !done(red, s, claimed));
                    let on_schedule = slot.is_some_and(|s| s.mover == Side::Enforcer && fulfils(red, s, &state, v));
                    if !on_schedule {
                        let slot = match slot {
                            Some(s) if s.mover == Side::Enforcer => *s,
                            _ => return Phase::Fallback("schedule lost before the deviation".into()),
                        };
                        let after = state.apply_move(v).expect("legal history");
                        match self.plan(&slot, &after, v) {
                            Ok(p) => plan = Some((p, t)),
                            Err(e) => return Phase::Fallback(format!("deviation on {v}: {e}")),
                        }
                    }
                }
                None => {}
                Some((p, t0)) => {
                    if t == t0 + 1 {
                        if v != p.y_a {
                            return Phase::Fallback("Avoider left the repair plan".into());
                        }
                    } else if enforcer && !self.enforcer_move_covered(p, &state, v) {
                        return Phase::Fallback(format!("Enforcer move {v} is outside the repair plan"));
                    }
                }
            }
            state = state.apply_move(v).expect("legal history");
        }
        match plan {
            Some((p, _)) => Phase::Repair(p),
            None => Phase::Schedule,
        }
    }

    fn plan(&self, slot: &LegitimateSlot, after: &PlayState, y_e: Vertex) -> Result<RepairPlan, StrategyError> {
        let red = self.red;
        let (y_a, step10_var) = match slot.prescribed {
            Prescribed::U(j) => (red.uu(j), None),
            // Avoider takes the positive literal herself: the variable reads false.
            Prescribed::Choice(var) => (red.x(var), None),
            Prescribed::Remaining(var) => {
                let i = var / 2;
                let next = red.u(6 * i + 2).ok_or(StrategyError::BadHistory("deviation after the last step".into()))?;
                if next == y_e {
                    return Err(StrategyError::BadHistory("deviation onto the next scheduled vertex".into()));
                }
                (next, Some(var))
            }
        };
        let intent = intent_valuation(red, after, Some(y_a), y_e);
        let (pairs, inside, k) = repair_pairs(red, after, y_a, y_e, &intent, step10_var)?;
        Ok(RepairPlan {
            k,
            inside,
            y_a,
            y_e,
            intent,
            pairs,
        })
    }

    fn enforcer_move_covered(&self, plan: &RepairPlan, state: &PlayState, v: Vertex) -> bool {
        if plan.inside.contains(v) {
            return self.inside_slot(plan, state).is_some_and(|s| fulfils(self.red, &s, state, v));
        }
        plan.pairs.partner(v).is_some()
            || plan.pairs.distinguished() == Some(v)
            || plan.k == 4 * self.red.rounds() + 1
    }

    // First open schedule step lying inside S_k.
    fn inside_slot(&self, plan: &RepairPlan, state: &PlayState) -> Option<LegitimateSlot> {
        let claimed = state.claimed();
        legitimate_order(self.red.rounds())
            .into_iter()
            .filter(|s| super::slot_vertices(self.red, s).iter().all(|&v| plan.inside.contains(v)))
            .find(|s| !done(self.red, s, claimed))
    }

    fn schedule_move(&self, state: &PlayState) -> Result<Vertex, String> {
        let red = self.red;
        let claimed = state.claimed();
        let order = legitimate_order(red.rounds());
        let slot = order
            .iter()
            .find(|s| !done(red, s, claimed))
            .filter(|s| s.mover == Side::Avoider)
            .ok_or("schedule has no Avoider step open")?;
        self.avoider_slot_vertex(slot, state, &committed_values(red, state))
            .ok_or_else(|| "schedule step has no free vertex".into())
    }

    fn avoider_slot_vertex(&self, slot: &LegitimateSlot, state: &PlayState, base: &Assignment) -> Option<Vertex> {
        let red = self.red;
        let free = state.unclaimed();
        match slot.prescribed {
            Prescribed::U(j) => red.u(j),
            Prescribed::Remaining(var) => {
                let (x, xb) = (red.x(var), red.xbar(var));
                match (free.contains(x), free.contains(xb)) {
                    (true, false) => Some(x),
                    (false, true) => Some(xb),
                    _ => None,
                }
            }
            Prescribed::Choice(var) => {
                let prefix = complete_prefix(red, base, var);
                let value = winning_value(red.formula(), &prefix, var)
                    .expect("prefix complete")
                    .unwrap_or(true);
                Some(literal_for(red, var, value, Side::Avoider))
            }
        }
    }

    fn repair_move(&self, plan: &RepairPlan, history: &[Vertex], state: &PlayState) -> Result<Vertex, String> {
        let red = self.red;
        let last = *history.last().ok_or("empty history")?;
        if last == plan.y_e {
            return Ok(plan.y_a);
        }
        let pairing = |role| pairing_move(state, &plan.pairs, role).map_err(|e| e.to_string());
        if plan.k == 4 * red.rounds() + 1 {
            return pairing(PairingRole::NotLastMover);
        }
        if plan.inside.contains(last) {
            // Enforcer's step inside S_k is done; answer with the next step.
            let Some(slot) = self.inside_slot(plan, state) else {
                // S_k is full: open play continues on the pairs.
                return pairing(PairingRole::LastMover);
            };
            if slot.mover != Side::Avoider {
                return Err("Enforcer is ahead inside S_k".into());
            }
            // Values outside S_k stay as planned; inside, play has fixed them.
            let mut base = plan.intent.clone();
            for (var, value) in committed_values(red, state).iter() {
                if plan.inside.contains(red.x(var)) {
                    base.set(var, value);
                }
            }
            return self
                .avoider_slot_vertex(&slot, state, &base)
                .ok_or_else(|| "step inside S_k has no free vertex".into());
        }
        match plan.pairs.partner(last) {
            Some(p) if state.unclaimed().contains(p) => Ok(p),
            Some(_) if self.inside_slot(plan, state).is_none() => pairing(PairingRole::LastMover),
            _ => Err(format!("no answer to {last}")),
        }
    }
}

/// Real-to-schedule vertex renaming; see [`AvoiderOracle::relabel`].
struct Relabel {
    fwd: Vec<Vertex>,
    back: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::{Literal as L, QbfFormula};
    use crate::reductions::reduce_qbf_to_ae;

    #[test]
    fn first_step_deviation_rewires_around_y_a() {
        let phi = QbfFormula::new(1, vec![[L::pos(1), L::pos(2), L::pos(2)]]).unwrap();
        let r = reduce_qbf_to_ae(&phi);
        // Avoider u1, Enforcer skips u2 for u4.
        let s = PlayState::from_moves(10, &[r.uu(1), r.uu(4)]).unwrap();
        let intent = intent_valuation(&r, &s, Some(r.uu(2)), r.uu(4));
        assert_eq!(intent.get(1), Some(false));
        let pairs = avoider_repair_pairing(&r, &s, r.uu(2), r.uu(4), &intent).unwrap();
        assert_eq!(pairs.partner(r.uu(3)), Some(r.x(1)));
        assert_eq!(pairs.partner(r.xbar(1)), Some(r.uu(5)));
        assert_eq!(pairs.distinguished(), None);
    }

    #[test]
    fn odd_u_deviation_is_rejected() {
        let phi = QbfFormula::new(1, vec![[L::pos(1), L::pos(2), L::pos(2)]]).unwrap();
        let r = reduce_qbf_to_ae(&phi);
        let s = PlayState::from_moves(10, &[r.uu(1), r.uu(3)]).unwrap();
        let intent = intent_valuation(&r, &s, Some(r.uu(2)), r.uu(3));
        assert_eq!(
            avoider_repair_pairing(&r, &s, r.uu(2), r.uu(3), &intent),
            Err(StrategyError::IllegalDeviation(r.uu(3)))
        );
    }
}
