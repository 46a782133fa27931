use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avoidance")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

const ONE_ROUND: &str = "p cnf 2 1\na 1 0\ne 2 0\n1 2 2 0\n";

#[test]
fn single_vertex_edge_is_enforcer_win() {
    let b = scratch("single.hg", "p hg 1 1\ne 1\n");
    let o = run(&["solve", "ae", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_line(&o), "ENFORCER");
}

#[test]
fn aa_and_domination_tokens() {
    let b = scratch("pair.hg", "p hg 2 1\ne 1 2\n");
    let o = run(&["solve", "aa", b.to_str().unwrap()]);
    assert_eq!(last_line(&o), "DRAW");
    // Staller moves first and wins once Dominator's set dominates, which any
    // single vertex of an edge does.
    let g = scratch("k2.gr", "p edge 2 1\ne 1 2\n");
    let o = run(&["solve", "domination", g.to_str().unwrap()]);
    assert_eq!(last_line(&o), "STALLER");
}

#[test]
fn hgame_needs_pattern_and_reports_winner() {
    let g = scratch("path3.gr", "p edge 3 2\ne 1 2\ne 2 3\n");
    let o = run(&["solve", "hgame", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    // Avoider ends with two of three path vertices and Enforcer can keep
    // them from being 1 and 3.
    let p = scratch("k2pattern.gr", "p edge 2 1\ne 1 2\n");
    let o = run(&["solve", "hgame", g.to_str().unwrap(), "--pattern", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_line(&o), "ENFORCER");
}

#[test]
fn qbf_to_ae_header_and_labels() {
    let f = scratch("one.qdimacs", ONE_ROUND);
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    let out = dir.join("one.hg");
    let labels = dir.join("one.json");
    let o = run(&[
        "reduce",
        "qbf-to-ae",
        f.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--labels",
        labels.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let hg = fs::read_to_string(&out).unwrap();
    assert_eq!(hg.lines().find(|l| l.starts_with("p ")), Some("p hg 10 9"));
    let json = fs::read_to_string(&labels).unwrap();
    assert!(json.contains("\"kind\": \"xbar\""));
    assert!(json.contains("\"tag\""));

    let solved = run(&["solve", "ae", out.to_str().unwrap()]);
    let qbf = run(&["solve", "qbf", f.to_str().unwrap()]);
    assert_eq!(last_line(&qbf), "SATISFIER");
    assert_eq!(last_line(&solved), "AVOIDER");
}

#[test]
fn reduction_outputs_are_reproducible() {
    let h = scratch("tri.hg", "p hg 4 2\ne 1 2 3 4\ne 1 2\n");
    let a = run(&["reduce", "uniformize", h.to_str().unwrap(), "-k", "6"]);
    let b = run(&["reduce", "uniformize", h.to_str().unwrap(), "-k", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().filter(|l| l.starts_with("e ")).all(|l| l.split_whitespace().count() == 7));

    let aa = run(&["reduce", "ae-to-aa", h.to_str().unwrap()]);
    assert!(stdout(&aa).contains("p hg 5 2"));
    let dom = run(&["reduce", "ae-to-domination", h.to_str().unwrap()]);
    assert!(stdout(&dom).contains("p edge 8 12"));
}

#[test]
fn hgame_reduction_checks_pattern() {
    let h = scratch("six.hg", "p hg 6 1\ne 1 2 3 4 5 6\n");
    let h0 = scratch("h0.gr", "p edge 2 1\ne 1 2\n");
    let o = run(&["reduce", "ae-to-hgame", h.to_str().unwrap(), "-k", "5", "--pattern", h0.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["reduce", "ae-to-hgame", h.to_str().unwrap(), "-k", "6", "--pattern", h0.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p edge 10 "));
}

#[test]
fn analyze_prints_oracle_move() {
    let f = scratch("an.qdimacs", ONE_ROUND);
    let empty = scratch("empty.pos", "c nothing played yet\n");
    let o = run(&["analyze", f.to_str().unwrap(), empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("to_move avoider"));
    // Avoider opens on u1, which is vertex 5 when n = 1.
    assert_eq!(last_line(&o), "move 5 u(1) legitimate");

    let one = scratch("one.pos", "5\n");
    let o = run(&["analyze", f.to_str().unwrap(), one.to_str().unwrap()]);
    assert!(stdout(&o).contains("to_move enforcer"));
    assert!(last_line(&o).starts_with("move 6 u(2)"));

    let bad = scratch("bad.pos", "5, 5\n");
    let o = run(&["analyze", f.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let b = scratch("bad.hg", "p hg 2 1\ne 1 x\n");
    assert_eq!(run(&["solve", "ae", b.to_str().unwrap()]).status.code(), Some(2));
    let q = scratch("bad.qdimacs", "p cnf 2 1\na 1 0\n1 2 0\n");
    assert_eq!(run(&["solve", "qbf", q.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["solve", "ae", "/nonexistent/board.hg"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn timeout_exits_3() {
    // 40 vertices and 190 edges: far too big to finish in zero seconds.
    let mut text = String::new();
    let mut edges = Vec::new();
    for a in 1..=20 {
        for b in a + 1..=20 {
            edges.push(format!("e {a} {b} {} {}", a + 20, b + 20));
        }
    }
    text.push_str(&format!("p hg 40 {}\n", edges.len()));
    for e in edges {
        text.push_str(&e);
        text.push('\n');
    }
    let b = scratch("big.hg", &text);
    let o = run(&["solve", "ae", b.to_str().unwrap(), "--timeout-s", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_single_suite_is_deterministic() {
    let a = run(&["verify", "uniformize", "--seed", "11"]);
    let b = run(&["verify", "uniformize", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(last_line(&a), "PASS");
    let strip = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.split(" elapsed=").next().unwrap().to_string())
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
}
