//! Exact perfect-play evaluation by memoized minimax over claim bitsets.
//!
//! Node values are exact (no bounds are stored): a node stops expanding as
//! soon as the mover reaches its best possible score.

mod rules;
mod table;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::board::{BoardError, Convention, Graph, Hypergraph, Outcome, PlayState, Vertex, VertexSet};
use rules::Rules;
use table::Table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("timed out after {nodes} nodes ({elapsed:?})")]
    Timeout { nodes: u64, elapsed: Duration },
    #[error("node limit of {limit} reached")]
    NodeLimit { limit: u64 },
    #[error("position is terminal")]
    TerminalPosition,
    #[error("state is for a board of {state} vertices, game has {board}")]
    SizeMismatch { state: usize, board: usize },
    #[error(transparent)]
    Board(#[from] BoardError),
}

impl SolveError {
    /// True for resource exhaustion rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(self, SolveError::Timeout { .. } | SolveError::NodeLimit { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Skip moves dominated in the residual board (Avoider-Enforcer only).
    pub use_dominated_pruning: bool,
    /// Upper bound on transposition-table memory, in bytes.
    pub transposition_budget: usize,
    pub timeout: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            use_dominated_pruning: true,
            transposition_budget: 256 << 20,
            timeout: None,
            node_limit: None,
        }
    }
}

impl SolveOptions {
    pub fn without_pruning(mut self) -> Self {
        self.use_dominated_pruning = false;
        self
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.timeout = Some(t);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub nodes: u64,
    pub table_hits: u64,
    pub elapsed: Duration,
    /// Optimal line from the solved position to the end of the game.
    pub principal_variation: Vec<Vertex>,
}

/// A game to solve: board plus convention.
#[derive(Debug, Clone, Copy)]
pub enum Game<'a> {
    AvoiderEnforcer(&'a Hypergraph),
    AvoiderAvoider(&'a Hypergraph),
    Domination(&'a Graph),
    HGame { graph: &'a Graph, pattern: &'a Graph },
}

impl<'a> Game<'a> {
    pub fn convention(&self) -> Convention {
        match self {
            Game::AvoiderEnforcer(_) => Convention::AvoiderEnforcer,
            Game::AvoiderAvoider(_) => Convention::AvoiderAvoider,
            Game::Domination(_) => Convention::DominationAE,
            Game::HGame { pattern, .. } => Convention::HGame((*pattern).clone()),
        }
    }

    pub fn board_size(&self) -> usize {
        match self {
            Game::AvoiderEnforcer(h) | Game::AvoiderAvoider(h) => h.num_vertices(),
            Game::Domination(g) => g.num_vertices(),
            Game::HGame { graph, .. } => graph.num_vertices(),
        }
    }

    /// Maps a first-player score to the convention's outcome.
    pub fn outcome(&self, score: i8) -> Outcome {
        match (self, score) {
            (Game::AvoiderEnforcer(_) | Game::HGame { .. }, 1) => Outcome::AvoiderWins,
            (Game::AvoiderEnforcer(_) | Game::HGame { .. }, _) => Outcome::EnforcerWins,
            (Game::AvoiderAvoider(_), 1) => Outcome::SecondPlayerLoses,
            (Game::AvoiderAvoider(_), -1) => Outcome::FirstPlayerLoses,
            (Game::AvoiderAvoider(_), _) => Outcome::Draw,
            (Game::Domination(_), 1) => Outcome::StallerWins,
            (Game::Domination(_), _) => Outcome::DominatorWins,
        }
    }
}

/// Reusable search context for one game; the table persists across queries.
pub struct Solver<'a> {
    game: Game<'a>,
    rules: Rules,
    table: Table,
    opts: SolveOptions,
    nodes: u64,
    hits: u64,
    started: Instant,
    buffers: Vec<Vec<Vertex>>,
}

impl<'a> Solver<'a> {
    pub fn new(game: Game<'a>, opts: SolveOptions) -> Result<Self, SolveError> {
        let n = game.board_size();
        if n > VertexSet::CAPACITY {
            return Err(BoardError::TooLarge(n).into());
        }
        let rules = match game {
            Game::AvoiderEnforcer(h) => Rules::avoider_enforcer(h, opts.use_dominated_pruning),
            Game::AvoiderAvoider(h) => Rules::avoider_avoider(h),
            Game::Domination(g) => Rules::domination(g),
            Game::HGame { graph, pattern } => Rules::hgame(graph, pattern),
        };
        Ok(Solver {
            game,
            rules,
            table: Table::new(opts.transposition_budget),
            opts,
            nodes: 0,
            hits: 0,
            started: Instant::now(),
            buffers: Vec::new(),
        })
    }

    pub fn game(&self) -> Game<'a> {
        self.game
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn table_hits(&self) -> u64 {
        self.hits
    }

    /// Positions currently stored in the transposition table.
    pub fn table_entries(&self) -> usize {
        self.table.len()
    }

    fn check_state(&self, state: &PlayState) -> Result<(), SolveError> {
        if state.board_size() != self.game.board_size() {
            return Err(SolveError::SizeMismatch {
                state: state.board_size(),
                board: self.game.board_size(),
            });
        }
        Ok(())
    }

    /// Score of `state` from the first player's view.
    pub fn score(&mut self, state: &PlayState) -> Result<i8, SolveError> {
        self.check_state(state)?;
        let (a, b) = (state.first().bits(), state.second().bits());
        match self.rules.verdict(a, b, None) {
            Some(v) => Ok(v.score),
            None => self.search(a, b, 0),
        }
    }

    pub fn outcome(&mut self, state: &PlayState) -> Result<Outcome, SolveError> {
        let s = self.score(state)?;
        Ok(self.game.outcome(s))
    }

    /// True when the game is over at `state` (not merely decided).
    pub fn is_ended(&self, state: &PlayState) -> bool {
        state.is_full()
            || self
                .rules
                .verdict(state.first().bits(), state.second().bits(), None)
                .is_some_and(|v| v.ended)
    }

    /// Lowest-id move achieving the value of `state`.
    pub fn best_move(&mut self, state: &PlayState) -> Result<Vertex, SolveError> {
        self.check_state(state)?;
        if self.is_ended(state) {
            return Err(SolveError::TerminalPosition);
        }
        let target = self.score(state)?;
        for v in state.unclaimed() {
            let child = state.apply_move(v).expect("unclaimed vertex");
            if self.score_after(&child, v)? == target {
                return Ok(v);
            }
        }
        unreachable!("some move realises the position value")
    }

    /// Score of the position reached by claiming `v`.
    pub fn score_after(&mut self, child: &PlayState, v: Vertex) -> Result<i8, SolveError> {
        let (a, b) = (child.first().bits(), child.second().bits());
        match self.rules.verdict(a, b, Some(v)) {
            Some(verdict) => Ok(verdict.score),
            None => self.search(a, b, 0),
        }
    }

    pub fn principal_variation(&mut self, state: &PlayState) -> Result<Vec<Vertex>, SolveError> {
        let mut line = Vec::new();
        let mut cur = *state;
        while !self.is_ended(&cur) {
            let v = self.best_move(&cur)?;
            line.push(v);
            cur = cur.apply_move(v).expect("legal move");
        }
        Ok(line)
    }

    /// Full report for `state`, including the principal variation.
    pub fn report(&mut self, state: &PlayState) -> Result<SolveReport, SolveError> {
        self.started = Instant::now();
        let (n0, h0) = (self.nodes, self.hits);
        let score = self.score(state)?;
        let principal_variation = self.principal_variation(state)?;
        Ok(SolveReport {
            outcome: self.game.outcome(score),
            nodes: self.nodes - n0,
            table_hits: self.hits - h0,
            elapsed: self.started.elapsed(),
            principal_variation,
        })
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if let Some(limit) = self.opts.node_limit {
            if self.nodes > limit {
                return Err(SolveError::NodeLimit { limit });
            }
        }
        if self.nodes & 1023 == 0 {
            if let Some(t) = self.opts.timeout {
                let elapsed = self.started.elapsed();
                if elapsed > t {
                    return Err(SolveError::Timeout {
                        nodes: self.nodes,
                        elapsed,
                    });
                }
            }
        }
        Ok(())
    }

    // Precondition: the position is not decided.
    fn search(&mut self, a: u64, b: u64, depth: usize) -> Result<i8, SolveError> {
        if let Some(v) = self.table.get(a, b) {
            self.hits += 1;
            return Ok(v);
        }
        self.tick()?;
        let first_moves = a.count_ones() == b.count_ones();
        let (goal, mut best) = if first_moves { (1i8, i8::MIN) } else { (-1i8, i8::MAX) };

        if self.buffers.len() <= depth {
            self.buffers.push(Vec::with_capacity(64));
        }
        let mut moves = std::mem::take(&mut self.buffers[depth]);
        self.rules.moves(a, b, &mut moves);
        let mut result = Ok(());
        for &v in &moves {
            let bit = 1u64 << (v - 1);
            let (ca, cb) = if first_moves { (a | bit, b) } else { (a, b | bit) };
            let val = match self.rules.verdict(ca, cb, Some(v)) {
                Some(verdict) => verdict.score,
                None => match self.search(ca, cb, depth + 1) {
                    Ok(x) => x,
                    Err(e) => {
                        result = Err(e);
                        break;
                    }
                },
            };
            if (first_moves && val > best) || (!first_moves && val < best) {
                best = val;
                if best == goal {
                    break;
                }
            }
        }
        self.buffers[depth] = moves;
        result?;
        debug_assert!(best != i8::MIN && best != i8::MAX, "no candidate moves");
        self.table.insert(a, b, best);
        Ok(best)
    }
}

fn solve_from_empty(game: Game<'_>, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let state = PlayState::new(game.board_size())?;
    Solver::new(game, opts.clone())?.report(&state)
}

/// Avoider-Enforcer game, Avoider first; Enforcer wins iff Avoider fills an edge.
pub fn solve_ae(h: &Hypergraph, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_from_empty(Game::AvoiderEnforcer(h), opts)
}

/// Avoider-Avoider game: completing an edge inside one's own claims loses;
/// a full board without completion is a draw.
pub fn solve_aa(h: &Hypergraph, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_from_empty(Game::AvoiderAvoider(h), opts)
}

/// Domination game: Staller moves first and wins iff Dominator's final set
/// dominates the graph.
pub fn solve_domination(g: &Graph, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_from_empty(Game::Domination(g), opts)
}

/// Vertex H-game: Avoider first; Enforcer wins iff Avoider's set contains the pattern.
pub fn solve_hgame(g: &Graph, pattern: &Graph, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_from_empty(Game::HGame { graph: g, pattern }, opts)
}

/// Lowest-id optimal move for the player to move.
pub fn best_move(game: Game<'_>, state: &PlayState, opts: &SolveOptions) -> Result<Vertex, SolveError> {
    Solver::new(game, opts.clone())?.best_move(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn ae_examples() {
        let r = solve_ae(&hg(1, &[&[1]]), &opts()).unwrap();
        assert_eq!(r.outcome, Outcome::EnforcerWins);
        assert_eq!(r.principal_variation, vec![1]);
        let r = solve_ae(&hg(2, &[&[1, 2]]), &opts()).unwrap();
        assert_eq!(r.outcome, Outcome::AvoiderWins);
    }

    #[test]
    fn aa_examples() {
        assert_eq!(solve_aa(&hg(1, &[&[1]]), &opts()).unwrap().outcome, Outcome::FirstPlayerLoses);
        assert_eq!(solve_aa(&hg(3, &[]), &opts()).unwrap().outcome, Outcome::Draw);
    }

    #[test]
    fn domination_examples() {
        assert_eq!(solve_domination(&Graph::new(1), &opts()).unwrap().outcome, Outcome::DominatorWins);
        assert_eq!(solve_domination(&Graph::new(2), &opts()).unwrap().outcome, Outcome::DominatorWins);
    }

    #[test]
    fn hgame_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(solve_hgame(&k2, &k2, &opts()).unwrap().outcome, Outcome::AvoiderWins);
        let big = Graph::complete(4);
        assert_eq!(
            solve_hgame(&Graph::complete(5), &big, &opts()).unwrap().outcome,
            Outcome::AvoiderWins
        );
    }

    #[test]
    fn best_move_examples() {
        let h = hg(2, &[&[1, 2]]);
        let s = PlayState::new(2).unwrap();
        assert_eq!(best_move(Game::AvoiderEnforcer(&h), &s, &opts()), Ok(1));

        // Taking 3 forces Avoider onto 1; taking 1 would hand Avoider the game.
        let h = hg(3, &[&[1]]);
        let s = PlayState::from_moves(3, &[2]).unwrap();
        assert_eq!(best_move(Game::AvoiderEnforcer(&h), &s, &opts()), Ok(3));

        let h = hg(1, &[&[1]]);
        let s = PlayState::from_moves(1, &[1]).unwrap();
        assert_eq!(
            best_move(Game::AvoiderAvoider(&h), &s, &opts()),
            Err(SolveError::TerminalPosition)
        );
    }

    #[test]
    fn limits_are_reported() {
        let h = hg(12, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[10, 11, 12], &[1, 4, 7]]);
        let o = SolveOptions {
            node_limit: Some(3),
            ..opts().without_pruning()
        };
        assert_eq!(solve_ae(&h, &o), Err(SolveError::NodeLimit { limit: 3 }));
    }
}
