//! Named property suites: each one checks a correspondence between games,
//! reductions and strategy oracles on a batch of small instances.

use std::fmt;
use std::time::{Duration, Instant};

use crate::batch::{map_cases, Parallelism};
use crate::board::{avoider_filled, Graph, Hypergraph, Outcome, PlayState, Player, Vertex, VertexSet};
use crate::qbf::{evaluate, solve_qbf_game, Literal, QbfFormula, QbfWinner};
use crate::reductions::{
    ae_to_aa, ae_to_domination, independent_graph, join, path2, reduce_ae_to_hgame, strong_product, reduce_qbf_to_ae, to_k_uniform,
    LabeledReduction, PatternSpec,
};
use crate::rng::{random_covering_hypergraph, random_formula, random_hypergraph, rng_from_seed, split_seed};
use crate::solver::{solve_aa, solve_ae, solve_domination, solve_hgame, SolveError, SolveOptions};
use crate::strategies::{
    is_gadget_edge, legitimate_game_winner, legitimate_playouts, pairing_move, s_set, AvoiderOracle,
    EnforcerOracle, OracleMode, PairSet, PairingRole,
};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Formula game winner vs Avoider-Enforcer winner on its board, one round.
    EquivalenceOneRound,
    /// Same on hand-picked two-round formulas, under a time budget.
    EquivalenceTwoRounds,
    /// Schedule-restricted play on one-round boards.
    LegitimatePlay,
    /// Both strategy oracles against every opponent line, one round.
    Oracles,
    Uniformize,
    AvoiderAvoider,
    /// Solver with and without dominated-move pruning.
    Pruning,
    Pairing,
    Domination,
    HGame,
    /// Size and set invariants of compiled formula boards.
    Construction,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::EquivalenceOneRound,
        Suite::EquivalenceTwoRounds,
        Suite::LegitimatePlay,
        Suite::Oracles,
        Suite::Uniformize,
        Suite::AvoiderAvoider,
        Suite::Pruning,
        Suite::Pairing,
        Suite::Domination,
        Suite::HGame,
        Suite::Construction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::EquivalenceOneRound => "equivalence-n1",
            Suite::EquivalenceTwoRounds => "equivalence-n2",
            Suite::LegitimatePlay => "legitimate-play",
            Suite::Oracles => "oracles",
            Suite::Uniformize => "uniformize",
            Suite::AvoiderAvoider => "ae-to-aa",
            Suite::Pruning => "pruning",
            Suite::Pairing => "pairing",
            Suite::Domination => "domination",
            Suite::HGame => "hgame",
            Suite::Construction => "construction",
        }
    }

    /// Position in [`Suite::ALL`], starting at 1.
    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn seed_stream(self) -> u64 {
        self.number() as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Suites selected by a command-line name: a single suite, `all`, or
/// `reductions` (every suite).
pub fn select(name: &str) -> Option<Vec<Suite>> {
    match name {
        "all" | "reductions" => Some(Suite::ALL.to_vec()),
        _ => Suite::from_name(name).map(|s| vec![s]),
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub parallelism: Parallelism,
    /// Per-instance budget for the two-round suite.
    pub stretch_timeout: Duration,
    pub transposition_budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            parallelism: Parallelism::default(),
            stretch_timeout: Duration::from_secs(600),
            transposition_budget: 64 << 20,
        }
    }
}

impl VerifyConfig {
    fn opts(&self) -> SolveOptions {
        SolveOptions {
            transposition_budget: self.transposition_budget,
            ..SolveOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Pass,
    Fail,
    /// Ran out of budget; not counted as a failure.
    Timeout,
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub index: usize,
    /// Seed that regenerates this case, for random suites.
    pub seed: Option<u64>,
    pub name: String,
    pub status: CaseStatus,
    pub detail: String,
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            CaseStatus::Pass => "ok",
            CaseStatus::Fail => "FAIL",
            CaseStatus::Timeout => "TIMEOUT",
        };
        write!(f, "  [{:>3}] {status:<7} {}", self.index, self.name)?;
        if let Some(s) = self.seed {
            write!(f, " seed={s:#018x}")?;
        }
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    /// No case failed. Timeouts do not count against the suite.
    pub fn passed(&self) -> bool {
        self.count(CaseStatus::Fail) == 0
    }

    /// One line: `PASS|FAIL <number> <name> ...`.
    pub fn summary(&self) -> String {
        format!(
            "{} {:>2} {:<16} cases={} pass={} fail={} timeout={} elapsed={:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite.number(),
            self.suite.name(),
            self.cases.len(),
            self.count(CaseStatus::Pass),
            self.count(CaseStatus::Fail),
            self.count(CaseStatus::Timeout),
            self.elapsed.as_secs_f64()
        )
    }
}

type Check = Result<String, Failure>;

enum Failure {
    Fail(String),
    Timeout(String),
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        if e.is_limit() {
            Failure::Timeout(e.to_string())
        } else {
            Failure::Fail(e.to_string())
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure::Fail(msg()))
    }
}

struct Case {
    name: String,
    seed: Option<u64>,
    run: Box<dyn Fn() -> Check + Send + Sync>,
}

fn case(name: impl Into<String>, seed: Option<u64>, run: impl Fn() -> Check + Send + Sync + 'static) -> Case {
    Case {
        name: name.into(),
        seed,
        run: Box::new(run),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let started = Instant::now();
    let cases = build(suite, cfg);
    let results = map_cases(cases.len(), cfg.parallelism, |i| {
        let c = &cases[i];
        let t0 = Instant::now();
        let (status, detail) = match (c.run)() {
            Ok(d) => (CaseStatus::Pass, d),
            Err(Failure::Fail(d)) => (CaseStatus::Fail, d),
            Err(Failure::Timeout(d)) => (CaseStatus::Timeout, d),
        };
        log::debug!("{} case {i} finished in {:?}", suite.name(), t0.elapsed());
        CaseResult {
            index: i,
            seed: c.seed,
            name: c.name.clone(),
            status,
            detail,
        }
    });
    SuiteReport {
        suite,
        cases: results,
        elapsed: started.elapsed(),
    }
}

fn build(suite: Suite, cfg: &VerifyConfig) -> Vec<Case> {
    let stream = split_seed(cfg.seed, suite.seed_stream());
    let seed_of = |i: usize| split_seed(stream, i as u64);
    let opts = cfg.opts();
    match suite {
        Suite::EquivalenceOneRound => one_round_formulas()
            .into_iter()
            .map(|phi| {
                let o = opts.clone();
                case(format_formula(&phi), None, move || equivalence(&phi, &o))
            })
            .collect(),
        Suite::EquivalenceTwoRounds => two_round_formulas()
            .into_iter()
            .map(|phi| {
                let o = SolveOptions {
                    timeout: Some(cfg.stretch_timeout),
                    ..opts.clone()
                };
                case(format_formula(&phi), None, move || equivalence(&phi, &o))
            })
            .collect(),
        Suite::LegitimatePlay => one_round_formulas()
            .into_iter()
            .map(|phi| case(format_formula(&phi), None, move || legitimate_play(&phi)))
            .collect(),
        Suite::Oracles => one_round_formulas()
            .into_iter()
            .map(|phi| {
                let o = opts.clone();
                case(format_formula(&phi), None, move || oracles(&phi, &o))
            })
            .collect(),
        Suite::Uniformize => (0..100)
            .map(|i| {
                let seed = seed_of(i);
                let o = opts.clone();
                case(format!("uniformize #{i}"), Some(seed), move || uniformize(seed, &o))
            })
            .collect(),
        Suite::AvoiderAvoider => (0..50)
            .map(|i| {
                let seed = seed_of(i);
                let o = opts.clone();
                case(format!("ae-to-aa #{i}"), Some(seed), move || avoider_avoider(seed, &o))
            })
            .collect(),
        Suite::Pruning => (0..100)
            .map(|i| {
                let seed = seed_of(i);
                let o = opts.clone();
                case(format!("pruning #{i}"), Some(seed), move || pruning(seed, &o))
            })
            .collect(),
        Suite::Pairing => (1..=9)
            .flat_map(|n| {
                [
                    case(format!("last mover, |V| = {n}"), None, move || pairing_last_mover(n)),
                    case(format!("not last mover, |V| = {n}"), None, move || pairing_not_last_mover(n)),
                ]
            })
            .collect(),
        Suite::Domination => (0..30)
            .map(|i| {
                let seed = seed_of(i);
                let o = opts.clone();
                case(format!("domination #{i}"), Some(seed), move || domination(seed, &o))
            })
            .collect(),
        Suite::HGame => {
            let mut cases = vec![
                case("algebra identities", None, hgame_algebra),
                {
                    let o = opts.clone();
                    case("single 6-edge, K2, k = 6", None, move || hgame_single_edge(&o))
                },
            ];
            for i in 0..20 {
                let seed = seed_of(i);
                cases.push(case(format!("structure #{i}"), Some(seed), move || hgame_structure(seed)));
            }
            for i in 0..40 {
                let seed = seed_of(100 + i);
                cases.push(case(format!("containment #{i}"), Some(seed), move || containment(seed)));
            }
            cases
        }
        Suite::Construction => (0..60)
            .map(|i| {
                let seed = seed_of(i);
                case(format!("construction #{i}"), Some(seed), move || construction(seed))
            })
            .collect(),
    }
}

fn format_formula(phi: &QbfFormula) -> String {
    let lit = |l: &Literal| {
        if l.positive {
            format!("x{}", l.var)
        } else {
            format!("-x{}", l.var)
        }
    };
    phi.clauses()
        .iter()
        .map(|c| format!("({})", c.iter().map(lit).collect::<Vec<_>>().join(" ")))
        .collect::<String>()
}

/// The 20 clauses on `x1, x2` (3-literal multisets).
fn one_round_clauses() -> Vec<[Literal; 3]> {
    let lits = [Literal::pos(1), Literal::neg(1), Literal::pos(2), Literal::neg(2)];
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                out.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    out
}

/// Every one-round formula with one clause or an unordered pair of clauses.
pub fn one_round_formulas() -> Vec<QbfFormula> {
    let clauses = one_round_clauses();
    let mut out = Vec::new();
    for (i, &c) in clauses.iter().enumerate() {
        out.push(QbfFormula::new(1, vec![c]).expect("valid"));
        for &d in &clauses[i..] {
            out.push(QbfFormula::new(1, vec![c, d]).expect("valid"));
        }
    }
    out.sort_by_key(|phi| phi.clauses().len());
    out
}

/// Fixed two-round formulas with both winners represented.
pub fn two_round_formulas() -> Vec<QbfFormula> {
    let (p, n) = (Literal::pos, Literal::neg);
    [
        vec![[p(1), p(1), p(3)]],
        vec![[p(1), p(2), p(2)], [n(1), p(2), p(2)]],
        vec![[n(3), p(4), p(4)], [p(3), n(4), n(4)]],
        vec![[p(1), n(2), p(3)], [n(1), p(2), p(4)]],
        vec![[p(2), p(4), p(4)], [n(2), p(3), p(3)]],
        vec![[p(1), p(2), p(4)], [n(1), n(2), p(4)], [p(3), n(4), p(2)]],
    ]
    .into_iter()
    .map(|c| QbfFormula::new(2, c).expect("valid"))
    .collect()
}

fn equivalence(phi: &QbfFormula, opts: &SolveOptions) -> Check {
    let qbf = solve_qbf_game(phi);
    let red = reduce_qbf_to_ae(phi);
    let report = solve_ae(red.hypergraph(), opts)?;
    let expected = match qbf {
        QbfWinner::SatisfierWins => Outcome::AvoiderWins,
        QbfWinner::FalsifierWins => Outcome::EnforcerWins,
    };
    ensure(report.outcome == expected, || {
        format!("formula game {} but board game {}", qbf.token(), report.outcome)
    })?;
    Ok(format!("{} nodes={} {:.2?}", report.outcome, report.nodes, report.elapsed))
}

fn legitimate_play(phi: &QbfFormula) -> Check {
    let red = reduce_qbf_to_ae(phi);
    let h = red.hypergraph();
    for p in legitimate_playouts(&red) {
        let state = PlayState::from_moves(red.num_vertices(), &p.moves).map_err(|e| Failure::Fail(e.to_string()))?;
        let avoider = state.first();
        let filled = |c: usize| h.edge(c).iter().all(|&v| avoider.contains(v));
        let gadget = (0..h.num_edges()).find(|&c| is_gadget_edge(&red, c) && filled(c));
        ensure(gadget.is_none(), || format!("schedule {:?} fills gadget edge {gadget:?}", p.moves))?;
        let clause_filled = (0..h.num_edges()).any(|c| !is_gadget_edge(&red, c) && filled(c));
        let satisfied = evaluate(phi.clauses(), &p.valuation).map_err(|e| Failure::Fail(e.to_string()))?;
        ensure(clause_filled != satisfied, || {
            format!("schedule {:?}: clause edge filled = {clause_filled}, formula true = {satisfied}", p.moves)
        })?;
    }
    let restricted = legitimate_game_winner(&red);
    let qbf = solve_qbf_game(phi);
    ensure(restricted == qbf, || {
        format!("restricted game {} but formula game {}", restricted.token(), qbf.token())
    })?;
    Ok(qbf.token().to_string())
}

/// Every opponent line against the oracle of the side that should win.
fn oracles(phi: &QbfFormula, opts: &SolveOptions) -> Check {
    let red = reduce_qbf_to_ae(phi);
    let mut history = Vec::new();
    match solve_qbf_game(phi) {
        QbfWinner::FalsifierWins => {
            let oracle = EnforcerOracle::new(&red);
            let mut lines = 0u64;
            let mut off_script = 0u64;
            enforcer_search(&red, &oracle, &mut history, &mut lines, &mut off_script)?;
            Ok(format!("enforcer oracle held {lines} lines, {off_script} unscripted moves"))
        }
        QbfWinner::SatisfierWins => {
            let mut oracle = AvoiderOracle::new(&red, opts.clone()).map_err(|e| Failure::Fail(e.to_string()))?;
            let mut lines = 0u64;
            avoider_search(&red, &mut oracle, &mut history, &mut lines)?;
            Ok(format!("avoider oracle held {lines} lines, {} solver fallbacks", oracle.fallbacks()))
        }
    }
}

fn enforcer_search(
    red: &LabeledReduction,
    oracle: &EnforcerOracle<'_>,
    history: &mut Vec<Vertex>,
    lines: &mut u64,
    off_script: &mut u64,
) -> Result<(), Failure> {
    let state = PlayState::from_moves(red.num_vertices(), history).expect("legal line");
    if state.is_full() {
        *lines += 1;
        return ensure(avoider_filled(red.hypergraph(), state.first()).is_some(), || {
            format!("Avoider line {history:?} fills nothing")
        });
    }
    if state.to_move() == Player::Second {
        let mv = oracle.next_move(history).map_err(|e| Failure::Fail(e.to_string()))?;
        if mv.mode == OracleMode::Fallback {
            *off_script += 1;
        }
        history.push(mv.vertex);
        enforcer_search(red, oracle, history, lines, off_script)?;
        history.pop();
        return Ok(());
    }
    for v in state.unclaimed().iter() {
        history.push(v);
        enforcer_search(red, oracle, history, lines, off_script)?;
        history.pop();
    }
    Ok(())
}

fn avoider_search(
    red: &LabeledReduction,
    oracle: &mut AvoiderOracle<'_>,
    history: &mut Vec<Vertex>,
    lines: &mut u64,
) -> Result<(), Failure> {
    let state = PlayState::from_moves(red.num_vertices(), history).expect("legal line");
    if state.is_full() {
        *lines += 1;
        return ensure(avoider_filled(red.hypergraph(), state.first()).is_none(), || {
            format!("Enforcer line {history:?} makes Avoider fill an edge")
        });
    }
    if state.to_move() == Player::First {
        let mv = oracle.next_move(history).map_err(|e| Failure::Fail(e.to_string()))?;
        history.push(mv.vertex);
        avoider_search(red, oracle, history, lines)?;
        history.pop();
        return Ok(());
    }
    for v in state.unclaimed().iter() {
        history.push(v);
        avoider_search(red, oracle, history, lines)?;
        history.pop();
    }
    Ok(())
}

fn uniformize(seed: u64, opts: &SolveOptions) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(6..=12);
    let m = rng.random_range(1..=4);
    let h = random_hypergraph(&mut rng, n, m, 4..=6);
    let u = to_k_uniform(&h, 6).map_err(|e| Failure::Fail(e.to_string()))?;
    ensure(u.is_uniform(6), || "output is not 6-uniform".into())?;
    let before = solve_ae(&h, opts)?.outcome;
    let after = solve_ae(&u, opts)?.outcome;
    ensure(before == after, || format!("{before} before, {after} after"))?;
    Ok(format!("|V| {} -> {}, {before}", n, u.num_vertices()))
}

fn avoider_avoider(seed: u64, opts: &SolveOptions) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = 2 * rng.random_range(1..=5);
    let m = rng.random_range(1..=5);
    let h = random_hypergraph(&mut rng, n, m, 1..=4);
    let ae = solve_ae(&h, opts)?.outcome;
    let aa = solve_aa(&ae_to_aa(&h).map_err(|e| Failure::Fail(e.to_string()))?, opts)?.outcome;
    let expected = match ae {
        Outcome::AvoiderWins => Outcome::Draw,
        _ => Outcome::FirstPlayerLoses,
    };
    ensure(aa == expected, || format!("AE {ae} but AA {aa}"))?;
    Ok(format!("|V|={n} {ae} -> {aa}"))
}

fn pruning(seed: u64, opts: &SolveOptions) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(3..=11);
    let m = rng.random_range(1..=6);
    let h = random_hypergraph(&mut rng, n, m, 1..=4);
    let with = solve_ae(&h, opts)?;
    let without = solve_ae(&h, &opts.clone().without_pruning())?;
    ensure(with.outcome == without.outcome, || {
        format!("{} with pruning, {} without", with.outcome, without.outcome)
    })?;
    Ok(format!("|V|={n} {} nodes {} vs {}", with.outcome, with.nodes, without.nodes))
}

/// All families of at most three disjoint pairs on `1..=n`, canonically ordered.
pub fn pair_families(n: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    fn rec(n: usize, from: Vertex, used: VertexSet, cur: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
        out.push(cur.clone());
        if cur.len() == 3 {
            return;
        }
        for a in from..=n {
            if used.contains(a) {
                continue;
            }
            for b in a + 1..=n {
                if used.contains(b) {
                    continue;
                }
                cur.push((a, b));
                rec(n, a + 1, used.with(a).with(b), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, VertexSet::empty(), &mut Vec::new(), &mut out);
    out
}

// Plays every adversary line; `pairer` uses the pairing strategy. Calls
// `check` on the adversary's final set.
fn pairing_lines(
    state: PlayState,
    pairer: Player,
    pairs: &PairSet,
    role: PairingRole,
    check: &dyn Fn(VertexSet) -> bool,
    lines: &mut u64,
) -> Result<(), String> {
    if state.is_full() {
        *lines += 1;
        let adversary = state.claimed_by(pairer.opponent());
        return if check(adversary) {
            Ok(())
        } else {
            Err(format!("adversary ends with {adversary:?}"))
        };
    }
    if state.to_move() == pairer {
        let v = pairing_move(&state, pairs, role).map_err(|e| e.to_string())?;
        let next = state.apply_move(v).map_err(|e| e.to_string())?;
        return pairing_lines(next, pairer, pairs, role, check, lines);
    }
    for v in state.unclaimed().iter() {
        pairing_lines(state.apply_move(v).expect("free"), pairer, pairs, role, check, lines)?;
    }
    Ok(())
}

fn hits_every_pair(set: VertexSet, pairs: &PairSet) -> bool {
    pairs.pairs().iter().all(|&(a, b)| set.contains(a) || set.contains(b))
}

/// The player who claims the last vertex forces the other into every pair.
fn pairing_last_mover(n: usize) -> Check {
    let last = if n % 2 == 1 { Player::First } else { Player::Second };
    let mut lines = 0;
    let families = pair_families(n);
    for fam in &families {
        let pairs = PairSet::new(fam.clone(), None).map_err(|e| Failure::Fail(e.to_string()))?;
        let check = |s: VertexSet| hits_every_pair(s, &pairs);
        pairing_lines(PlayState::new(n).expect("small"), last, &pairs, PairingRole::LastMover, &check, &mut lines)
            .map_err(|e| Failure::Fail(format!("pairs {fam:?}: {e}")))?;
    }
    Ok(format!("{} pair families, {lines} lines", families.len()))
}

/// The other player forces the last mover into every pair and onto the
/// distinguished vertex.
fn pairing_not_last_mover(n: usize) -> Check {
    let last = if n % 2 == 1 { Player::First } else { Player::Second };
    let pairer = last.opponent();
    let mut lines = 0;
    let mut configs = 0;
    for fam in pair_families(n) {
        let used: VertexSet = fam.iter().flat_map(|&(a, b)| [a, b]).collect();
        for v in VertexSet::full(n).difference(used).iter() {
            configs += 1;
            let pairs = PairSet::new(fam.clone(), Some(v)).map_err(|e| Failure::Fail(e.to_string()))?;
            let check = |s: VertexSet| s.contains(v) && hits_every_pair(s, &pairs);
            pairing_lines(PlayState::new(n).expect("small"), pairer, &pairs, PairingRole::NotLastMover, &check, &mut lines)
                .map_err(|e| Failure::Fail(format!("pairs {fam:?}, v = {v}: {e}")))?;
        }
    }
    Ok(format!("{configs} configurations, {lines} lines"))
}

fn domination(seed: u64, opts: &SolveOptions) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(1..=4);
    let m = rng.random_range(1..=3);
    let h = random_covering_hypergraph(&mut rng, n, m, 1..=n);
    let (g, _) = ae_to_domination(&h).map_err(|e| Failure::Fail(e.to_string()))?;
    let ae = solve_ae(&h, opts)?.outcome;
    let dom = solve_domination(&g, opts)?.outcome;
    let expected = match ae {
        Outcome::AvoiderWins => Outcome::StallerWins,
        _ => Outcome::DominatorWins,
    };
    ensure(dom == expected, || format!("AE {ae} but domination {dom} on {:?}", h.edges()))?;
    Ok(format!("{:?} {ae} -> {dom}", h.edges()))
}

fn hgame_algebra() -> Check {
    let p2p2 = strong_product(&path2(), &path2());
    ensure(p2p2 == Graph::complete(4), || "P2 x P2 is not K4".into())?;
    for a in 1..=4 {
        for b in 1..=4 {
            let j = join(&independent_graph(a), &independent_graph(b));
            let ok = j.num_vertices() == a + b
                && j.num_edges() == a * b
                && (1..=a).all(|x| (a + 1..=a + b).all(|y| j.has_edge(x, y)));
            ensure(ok, || format!("I{a} join I{b} is not K({a},{b})"))?;
        }
    }
    Ok(String::new())
}

fn hgame_single_edge(opts: &SolveOptions) -> Check {
    let h = Hypergraph::new(6, [vec![1, 2, 3, 4, 5, 6]]).expect("valid");
    let spec = PatternSpec::new(6, Graph::complete(2)).map_err(|e| Failure::Fail(e.to_string()))?;
    let r = reduce_ae_to_hgame(&h, &spec).map_err(|e| Failure::Fail(e.to_string()))?;
    ensure(r.graph.num_vertices() == 10, || format!("{} vertices", r.graph.num_vertices()))?;
    let source = solve_ae(&h, opts)?.outcome;
    let target = solve_hgame(&r.graph, &r.pattern, opts)?.outcome;
    ensure(source == Outcome::AvoiderWins && target == Outcome::AvoiderWins, || {
        format!("source {source}, target {target}")
    })?;
    Ok(format!("{source} -> {target}"))
}

fn hgame_structure(seed: u64) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(6..=9);
    let m = rng.random_range(1..=3);
    let h = random_hypergraph(&mut rng, n, m, 6..=6);
    let k = rng.random_range(6..=8);
    let h0 = match rng.random_range(0..3) {
        0 => Graph::complete(2),
        1 => Graph::complete(3),
        _ => Graph::from_edges(3, [(1, 2), (2, 3)]).expect("valid"),
    };
    let spec = PatternSpec::new(k, h0.clone()).map_err(|e| Failure::Fail(e.to_string()))?;
    let r = reduce_ae_to_hgame(&h, &spec).map_err(|e| Failure::Fail(e.to_string()))?;
    let gadget = strong_product(&h0, &path2());
    let per_aux = 2 * (k - 6);
    let per_gadget = 2 * h0.num_vertices();
    let g = &r.graph;
    ensure(g.num_vertices() == n + m * (per_aux + per_gadget), || {
        format!("{} vertices", g.num_vertices())
    })?;
    ensure(
        g.num_edges() == m * (gadget.num_edges() + per_gadget * (6 + per_aux)),
        || format!("{} edges", g.num_edges()),
    )?;
    for c in 0..m {
        let copy = &r.gadgets[c];
        for (i, &a) in copy.iter().enumerate() {
            for (j, &b) in copy.iter().enumerate().skip(i + 1) {
                ensure(g.has_edge(a, b) == gadget.has_edge(i + 1, j + 1), || {
                    format!("gadget {c} differs from the product at ({a}, {b})")
                })?;
            }
            for &v in h.edge(c).iter().chain(&r.aux[c]) {
                ensure(g.has_edge(a, v), || format!("gadget vertex {a} misses {v}"))?;
            }
        }
    }
    let pattern = &r.pattern;
    ensure(
        pattern.num_vertices() == k + h0.num_vertices()
            && pattern.num_edges() == h0.num_edges() + k * h0.num_vertices(),
        || "pattern has the wrong shape".into(),
    )?;
    Ok(format!("|V|={} |E|={}", g.num_vertices(), g.num_edges()))
}

/// Injection enumeration: some injective map from the pattern into `s`
/// carries every pattern edge onto a host edge.
pub fn contains_by_injection(host: &Graph, s: VertexSet, pattern: &Graph) -> bool {
    let targets: Vec<Vertex> = s.iter().collect();
    let k = pattern.num_vertices();
    if k > targets.len() {
        return false;
    }
    let pedges: Vec<(Vertex, Vertex)> = pattern.edges().collect();
    fn rec(
        at: usize,
        k: usize,
        map: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        targets: &[Vertex],
        host: &Graph,
        pedges: &[(Vertex, Vertex)],
    ) -> bool {
        if at == k {
            return pedges.iter().all(|&(a, b)| host.has_edge(map[a - 1], map[b - 1]));
        }
        for (t, &v) in targets.iter().enumerate() {
            if used[t] {
                continue;
            }
            used[t] = true;
            map.push(v);
            let done = rec(at + 1, k, map, used, targets, host, pedges);
            map.pop();
            used[t] = false;
            if done {
                return true;
            }
        }
        false
    }
    rec(0, k, &mut Vec::new(), &mut vec![false; targets.len()], &targets, host, &pedges)
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.random_bool(p) {
                g.add_edge(a, b).expect("in range");
            }
        }
    }
    g
}

fn containment(seed: u64) -> Check {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(4..=10);
    let density = rng.random_range(0.3..0.9);
    let host = random_graph(&mut rng, n, density);
    let (k, density) = (rng.random_range(1..=5), rng.random_range(0.3..1.0));
    let pattern = random_graph(&mut rng, k, density);
    let mut agree = 0;
    for _ in 0..30 {
        let size = rng.random_range(0..=n.min(8));
        let mut vs: Vec<Vertex> = (1..=n).collect();
        vs.shuffle(&mut rng);
        let s: VertexSet = vs[..size].iter().copied().collect();
        let fast = crate::board::subgraph_contains(&host, s, &pattern);
        let slow = contains_by_injection(&host, s, &pattern);
        ensure(fast == slow, || format!("set {s:?}: matcher {fast}, enumeration {slow}"))?;
        agree += usize::from(fast);
    }
    Ok(format!("{agree}/30 sets contain the pattern"))
}

fn construction(seed: u64) -> Check {
    let mut rng = rng_from_seed(seed);
    let rounds = rng.random_range(1..=3);
    let m = rng.random_range(1..=6);
    let phi = random_formula(&mut rng, rounds, m);
    let red = reduce_qbf_to_ae(&phi);
    let h = red.hypergraph();
    ensure(h.num_vertices() == 10 * rounds, || format!("|V| = {}", h.num_vertices()))?;
    ensure(h.num_edges() == 8 * rounds + m, || format!("|E| = {}", h.num_edges()))?;
    ensure(h.max_edge_size().unwrap_or(0) <= 6, || "edge larger than 6".into())?;
    for i in 1..=4 * rounds {
        let s = s_set(&red, i).map_err(|e| Failure::Fail(e.to_string()))?;
        ensure(s.len() % 2 == 1, || format!("|S_{i}| = {}", s.len()))?;
    }
    let s1 = s_set(&red, 1).map_err(|e| Failure::Fail(e.to_string()))?;
    let expected: std::collections::BTreeSet<Vertex> = (1..=h.num_vertices()).filter(|&v| v != red.uu(1)).collect();
    ensure(s1 == expected, || "S_1 is not V minus u1".into())?;
    Ok(format!("n={rounds} m={m}"))
}
