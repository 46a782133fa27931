use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use avoidance::board::{parse_graph, parse_hypergraph, write_graph, write_hypergraph, Graph, Hypergraph, PlayState};
use avoidance::qbf::{parse_qdimacs, solve_qbf_game, QbfFormula};
use avoidance::reductions::{
    ae_to_aa, ae_to_domination, reduce_ae_to_hgame, reduce_qbf_to_ae, to_k_uniform, LabelFile, PatternSpec,
};
use avoidance::solver::{solve_aa, solve_ae, solve_domination, solve_hgame, SolveError, SolveOptions, SolveReport};
use avoidance::strategies::{AvoiderOracle, EnforcerOracle, OracleMode, StrategyError};
use avoidance::verify::{run_suite, select, CaseStatus, VerifyConfig};

#[derive(Parser)]
#[command(name = "avoidance", version, about = "Solve and reduce avoidance positional games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game from the empty position and print the winner.
    Solve {
        game: GameKind,
        /// Board file: .hg for ae/aa, graph for domination/hgame, QDIMACS for qbf.
        input: PathBuf,
        /// Forbidden pattern graph for `hgame`.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Apply a reduction and write the resulting board.
    Reduce {
        reduction: ReductionKind,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// JSON file mapping vertex ids to labels.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Target edge size for `uniformize`, independent-set size for `ae-to-hgame`.
        #[arg(short)]
        k: Option<usize>,
        /// Graph joined with the independent set in the `ae-to-hgame` pattern.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Print the strategy oracle's move for a position on a formula's board.
    Analyze {
        formula: PathBuf,
        /// Move history: vertex ids in play order, Avoider first.
        position: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run a property suite, or `all`/`reductions` for every suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Per-instance budget of the two-round equivalence suite.
        #[arg(long = "timeout-s")]
        timeout_s: Option<u64>,
        #[arg(long = "tt-bytes")]
        tt_bytes: Option<usize>,
    },
}

#[derive(Args)]
struct Limits {
    #[arg(long = "timeout-s")]
    timeout_s: Option<u64>,
    #[arg(long = "tt-bytes")]
    tt_bytes: Option<usize>,
    #[arg(long = "no-dominated-pruning")]
    no_dominated_pruning: bool,
}

impl Limits {
    fn options(&self) -> SolveOptions {
        let mut opts = SolveOptions::default();
        if let Some(s) = self.timeout_s {
            opts.timeout = Some(Duration::from_secs(s));
        }
        if let Some(b) = self.tt_bytes {
            opts.transposition_budget = b;
        }
        opts.use_dominated_pruning = !self.no_dominated_pruning;
        opts
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    Ae,
    Aa,
    Domination,
    Hgame,
    Qbf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionKind {
    QbfToAe,
    Uniformize,
    AeToAa,
    AeToDomination,
    AeToHgame,
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    fn invalid(err: impl Into<anyhow::Error>) -> Self {
        Failure { code: 2, err: err.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure {
            code: if e.is_limit() { 3 } else { 2 },
            err: e.into(),
        }
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Solve(s) => s.into(),
            other => Failure::invalid(other),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::invalid)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(Failure::invalid),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::invalid)
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::invalid)
}

fn load_formula(path: &Path) -> Result<QbfFormula> {
    parse_qdimacs(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::invalid)
}

/// Vertex ids separated by whitespace or commas; `c` and `#` lines are comments.
fn parse_position(text: &str) -> anyhow::Result<Vec<usize>> {
    let mut moves = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            moves.push(tok.parse().with_context(|| format!("bad vertex id {tok:?}"))?);
        }
    }
    Ok(moves)
}

fn print_report(r: &SolveReport) {
    println!("nodes {}", r.nodes);
    println!("table_hits {}", r.table_hits);
    println!("elapsed_ms {}", r.elapsed.as_millis());
    let pv: Vec<String> = r.principal_variation.iter().map(|v| v.to_string()).collect();
    println!("pv {}", pv.join(" "));
    println!("{}", r.outcome.token());
}

fn solve(game: GameKind, input: &Path, pattern: Option<&Path>, limits: &Limits) -> Result<()> {
    let opts = limits.options();
    let report = match game {
        GameKind::Qbf => {
            let phi = load_formula(input)?;
            println!("{}", solve_qbf_game(&phi).token());
            return Ok(());
        }
        GameKind::Ae => solve_ae(&load_hypergraph(input)?, &opts)?,
        GameKind::Aa => solve_aa(&load_hypergraph(input)?, &opts)?,
        GameKind::Domination => solve_domination(&load_graph(input)?, &opts)?,
        GameKind::Hgame => {
            let pattern = pattern.ok_or_else(|| Failure::invalid(anyhow!("hgame needs --pattern")))?;
            solve_hgame(&load_graph(input)?, &load_graph(pattern)?, &opts)?
        }
    };
    print_report(&report);
    Ok(())
}

fn reduce(
    kind: ReductionKind,
    input: &Path,
    output: Option<&Path>,
    labels: Option<&Path>,
    k: Option<usize>,
    pattern: Option<&Path>,
) -> Result<()> {
    let (text, label_file) = match kind {
        ReductionKind::QbfToAe => {
            let red = reduce_qbf_to_ae(&load_formula(input)?);
            (write_hypergraph(red.hypergraph()), red.label_file())
        }
        ReductionKind::Uniformize => {
            let k = k.ok_or_else(|| Failure::invalid(anyhow!("uniformize needs -k")))?;
            let out = to_k_uniform(&load_hypergraph(input)?, k).map_err(Failure::invalid)?;
            (write_hypergraph(&out), LabelFile::from_hypergraph(&out))
        }
        ReductionKind::AeToAa => {
            let out = ae_to_aa(&load_hypergraph(input)?).map_err(Failure::invalid)?;
            (write_hypergraph(&out), LabelFile::from_hypergraph(&out))
        }
        ReductionKind::AeToDomination => {
            let (g, l) = ae_to_domination(&load_hypergraph(input)?).map_err(Failure::invalid)?;
            (write_graph(&g), LabelFile::from_labels((1..).zip(l)))
        }
        ReductionKind::AeToHgame => {
            let k = k.ok_or_else(|| Failure::invalid(anyhow!("ae-to-hgame needs -k")))?;
            let h0 = pattern.ok_or_else(|| Failure::invalid(anyhow!("ae-to-hgame needs --pattern")))?;
            let spec = PatternSpec::new(k, load_graph(h0)?).map_err(Failure::invalid)?;
            let red = reduce_ae_to_hgame(&load_hypergraph(input)?, &spec).map_err(Failure::invalid)?;
            (write_graph(&red.graph), LabelFile::from_labels((1..).zip(red.labels)))
        }
    };
    write_out(output, &text)?;
    if let Some(path) = labels {
        write_out(Some(path), &label_file.to_json())?;
    }
    Ok(())
}

fn mode_name(mode: OracleMode) -> String {
    match mode {
        OracleMode::Legitimate => "legitimate".into(),
        OracleMode::Punish(i) => format!("punish({i})"),
        OracleMode::Repair => "repair".into(),
        OracleMode::Fallback => "fallback".into(),
    }
}

fn analyze(formula: &Path, position: &Path, limits: &Limits) -> Result<()> {
    let phi = load_formula(formula)?;
    let history = parse_position(&read(position)?).map_err(Failure::invalid)?;
    let red = reduce_qbf_to_ae(&phi);
    PlayState::from_moves(red.num_vertices(), &history).map_err(Failure::invalid)?;
    let (side, mv) = if history.len() % 2 == 0 {
        let mut oracle = AvoiderOracle::new(&red, limits.options())?;
        ("avoider", oracle.next_move(&history)?)
    } else {
        ("enforcer", EnforcerOracle::new(&red).next_move(&history)?)
    };
    println!("formula_winner {}", solve_qbf_game(&phi).token());
    println!("to_move {side}");
    println!("move {} {} {}", mv.vertex, red.label(mv.vertex), mode_name(mv.mode));
    Ok(())
}

fn verify(name: &str, seed: u64, timeout_s: Option<u64>, tt_bytes: Option<usize>) -> Result<bool> {
    let suites = select(name).ok_or_else(|| Failure::invalid(anyhow!("unknown suite {name:?}")))?;
    let mut cfg = VerifyConfig {
        seed,
        ..VerifyConfig::default()
    };
    if let Some(s) = timeout_s {
        cfg.stretch_timeout = Duration::from_secs(s);
    }
    if let Some(b) = tt_bytes {
        cfg.transposition_budget = b;
    }
    let mut ok = true;
    for suite in suites {
        let report = run_suite(suite, &cfg);
        for c in report.cases.iter().filter(|c| c.status != CaseStatus::Pass) {
            println!("{c}");
        }
        println!("{}", report.summary());
        ok &= report.passed();
    }
    println!("{}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve {
            game,
            input,
            pattern,
            limits,
        } => solve(game, &input, pattern.as_deref(), &limits).map(|_| true),
        Command::Reduce {
            reduction,
            input,
            output,
            labels,
            k,
            pattern,
        } => reduce(reduction, &input, output.as_deref(), labels.as_deref(), k, pattern.as_deref()).map(|_| true),
        Command::Analyze {
            formula,
            position,
            limits,
        } => analyze(&formula, &position, &limits).map(|_| true),
        Command::Verify {
            suite,
            seed,
            timeout_s,
            tt_bytes,
        } => verify(&suite, seed, timeout_s, tt_bytes),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            log::debug!("exit code {}", f.code);
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
