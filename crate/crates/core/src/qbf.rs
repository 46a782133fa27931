//! Alternating quantified 3-CNF formulas and their two-player game.
//!
//! Variables `X1..X2n` are assigned in order; Falsifier picks the odd ones,
//! Satisfier the even ones. Satisfier wins iff every clause ends up with a true
//! literal.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("quantifier prefix: {0}")]
    Prefix(String),
    #[error("line {line}: clause has {found} literals, expected 3")]
    Arity { line: usize, found: usize },
    #[error("formula needs at least one round")]
    NoRounds,
    #[error("literal on variable {var} outside 1..={max}")]
    VariableOutOfRange { var: usize, max: usize },
    #[error("variable {0} is unassigned")]
    PartialAssignment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// DIMACS integer form: `var` or `-var`.
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "X{}", self.var)
        } else {
            write!(f, "!X{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QbfFormula {
    rounds: usize,
    clauses: Vec<Clause>,
}

impl QbfFormula {
    pub fn new(rounds: usize, clauses: Vec<Clause>) -> Result<Self, QbfError> {
        if rounds == 0 {
            return Err(QbfError::NoRounds);
        }
        let max = 2 * rounds;
        for lit in clauses.iter().flatten() {
            if lit.var == 0 || lit.var > max {
                return Err(QbfError::VariableOutOfRange { var: lit.var, max });
            }
        }
        Ok(QbfFormula { rounds, clauses })
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn num_vars(&self) -> usize {
        2 * self.rounds
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

/// Partial truth assignment keyed by variable index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<usize, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.0.insert(var, value);
    }

    pub fn unset(&mut self, var: usize) {
        self.0.remove(&var);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

impl FromIterator<(usize, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (usize, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QbfWinner {
    SatisfierWins,
    FalsifierWins,
}

impl QbfWinner {
    pub fn token(self) -> &'static str {
        match self {
            QbfWinner::SatisfierWins => "SATISFIER",
            QbfWinner::FalsifierWins => "FALSIFIER",
        }
    }
}

/// True iff every clause has a satisfied literal.
pub fn evaluate(clauses: &[Clause], a: &Assignment) -> Result<bool, QbfError> {
    let mut all = true;
    for clause in clauses {
        let mut sat = false;
        for lit in clause {
            let value = a.get(lit.var).ok_or(QbfError::PartialAssignment(lit.var))?;
            sat |= lit.holds(value);
        }
        all &= sat;
    }
    Ok(all)
}

// Bit `var - 1` of `bits` holds the value of variable `var`.
fn satisfied(clauses: &[Clause], bits: u64) -> bool {
    clauses.iter().all(|c| {
        c.iter()
            .any(|l| l.holds(bits >> (l.var - 1) & 1 == 1))
    })
}

// Satisfier's result when variables `1..next` are fixed by `bits`.
fn satisfier_wins_from(phi: &QbfFormula, next: usize, bits: u64) -> bool {
    if next > phi.num_vars() {
        return satisfied(&phi.clauses, bits);
    }
    let t = satisfier_wins_from(phi, next + 1, bits | 1 << (next - 1));
    if next % 2 == 1 {
        t && satisfier_wins_from(phi, next + 1, bits)
    } else {
        t || satisfier_wins_from(phi, next + 1, bits)
    }
}

fn prefix_bits(phi: &QbfFormula, prefix: &Assignment, upto: usize) -> Result<u64, QbfError> {
    let mut bits = 0u64;
    for var in 1..upto {
        match prefix.get(var) {
            Some(true) => bits |= 1 << (var - 1),
            Some(false) => {}
            None => return Err(QbfError::PartialAssignment(var)),
        }
    }
    debug_assert!(upto <= phi.num_vars() + 1);
    Ok(bits)
}

/// Exact winner of the assignment game by full recursion.
pub fn solve_qbf_game(phi: &QbfFormula) -> QbfWinner {
    if satisfier_wins_from(phi, 1, 0) {
        QbfWinner::SatisfierWins
    } else {
        QbfWinner::FalsifierWins
    }
}

/// Winner of the game continuing from a prefix assignment of `X1..X(next-1)`.
pub fn solve_from(phi: &QbfFormula, prefix: &Assignment, next: usize) -> Result<QbfWinner, QbfError> {
    let bits = prefix_bits(phi, prefix, next)?;
    Ok(if satisfier_wins_from(phi, next, bits) {
        QbfWinner::SatisfierWins
    } else {
        QbfWinner::FalsifierWins
    })
}

/// A value for `var` that wins for its owner given `X1..X(var-1)` in `prefix`.
///
/// `true` is preferred when both win; `None` when the owner is already lost.
pub fn winning_value(phi: &QbfFormula, prefix: &Assignment, var: usize) -> Result<Option<bool>, QbfError> {
    if var == 0 || var > phi.num_vars() {
        return Err(QbfError::VariableOutOfRange {
            var,
            max: phi.num_vars(),
        });
    }
    let bits = prefix_bits(phi, prefix, var)?;
    let satisfier_owns = var % 2 == 0;
    for value in [true, false] {
        let b = if value { bits | 1 << (var - 1) } else { bits };
        if satisfier_wins_from(phi, var + 1, b) == satisfier_owns {
            return Ok(Some(value));
        }
    }
    Ok(None)
}

pub fn parse_qdimacs(text: &str) -> Result<QbfFormula, QbfError> {
    let perr = |line: usize, msg: &str| QbfError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut next_var = 1usize;
    let mut clauses: Vec<Clause> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate problem line"));
                }
                let [_, "cnf", v, m] = toks[..] else {
                    return Err(perr(line, "expected \"p cnf <vars> <clauses>\""));
                };
                let v: usize = v.parse().map_err(|_| perr(line, "bad variable count"))?;
                let m: usize = m.parse().map_err(|_| perr(line, "bad clause count"))?;
                if v == 0 {
                    return Err(QbfError::NoRounds);
                }
                if v % 2 != 0 {
                    return Err(QbfError::Prefix(format!(
                        "{v} variables; the alternating prefix needs an even count"
                    )));
                }
                header = Some((v, m));
            }
            q @ ("a" | "e") => {
                let (v, _) = header.ok_or_else(|| perr(line, "quantifier before problem line"))?;
                if !clauses.is_empty() {
                    return Err(QbfError::Prefix("quantifier after clauses".into()));
                }
                if toks.len() != 3 || toks[2] != "0" {
                    return Err(QbfError::Prefix(format!(
                        "line {line}: each block must bind exactly one variable"
                    )));
                }
                let var: usize = toks[1].parse().map_err(|_| perr(line, "bad variable"))?;
                let expected_q = if next_var % 2 == 1 { "a" } else { "e" };
                if var != next_var || q != expected_q || var > v {
                    return Err(QbfError::Prefix(format!(
                        "line {line}: expected \"{expected_q} {next_var} 0\""
                    )));
                }
                next_var += 1;
            }
            _ => {
                let (v, _) = header.ok_or_else(|| perr(line, "clause before problem line"))?;
                if next_var != v + 1 {
                    return Err(QbfError::Prefix(format!(
                        "prefix binds {} of {v} variables",
                        next_var - 1
                    )));
                }
                let nums = toks
                    .iter()
                    .map(|s| s.parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| perr(line, "non-integer literal"))?;
                if nums.last() != Some(&0) {
                    return Err(perr(line, "clause must end with 0"));
                }
                let lits = &nums[..nums.len() - 1];
                if lits.contains(&0) {
                    return Err(perr(line, "0 inside clause"));
                }
                if lits.len() != 3 {
                    return Err(QbfError::Arity {
                        line,
                        found: lits.len(),
                    });
                }
                let mut clause = [Literal::pos(1); 3];
                for (slot, &x) in clause.iter_mut().zip(lits) {
                    *slot = Literal::from_dimacs(x).expect("nonzero");
                    if slot.var > v {
                        return Err(QbfError::VariableOutOfRange { var: slot.var, max: v });
                    }
                }
                clauses.push(clause);
            }
        }
    }
    let (v, m) = header.ok_or_else(|| perr(1, "missing problem line"))?;
    if next_var != v + 1 {
        return Err(QbfError::Prefix(format!(
            "prefix binds {} of {v} variables",
            next_var - 1
        )));
    }
    if clauses.len() != m {
        return Err(perr(
            text.lines().count(),
            &format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    QbfFormula::new(v / 2, clauses)
}

pub fn write_qdimacs(phi: &QbfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", phi.num_vars(), phi.clauses.len()).unwrap();
    for var in 1..=phi.num_vars() {
        let q = if var % 2 == 1 { 'a' } else { 'e' };
        writeln!(out, "{q} {var} 0").unwrap();
    }
    for c in &phi.clauses {
        writeln!(
            out,
            "{} {} {} 0",
            c[0].to_dimacs(),
            c[1].to_dimacs(),
            c[2].to_dimacs()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: usize) -> Literal {
        Literal::pos(v)
    }
    fn n(v: usize) -> Literal {
        Literal::neg(v)
    }

    #[test]
    fn parse_example() {
        let phi = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 2 0\n").unwrap();
        assert_eq!(phi.rounds(), 1);
        assert_eq!(phi.clauses(), &[[p(1), p(2), p(2)]]);
        assert_eq!(parse_qdimacs(&write_qdimacs(&phi)).unwrap(), phi);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 2 2 0\n"),
            Err(QbfError::Prefix(_))
        ));
        assert!(matches!(
            parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n"),
            Err(QbfError::Arity { found: 2, .. })
        ));
        assert!(matches!(
            parse_qdimacs("p cnf 2 1\na 1 2 0\n1 2 2 0\n"),
            Err(QbfError::Prefix(_))
        ));
        assert!(matches!(
            parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 x 2 0\n"),
            Err(QbfError::Parse { line: 4, .. })
        ));
        assert_eq!(parse_qdimacs("p cnf 0 0\n"), Err(QbfError::NoRounds));
    }

    #[test]
    fn solve_examples() {
        let f = |cs: Vec<Clause>| QbfFormula::new(1, cs).unwrap();
        assert_eq!(
            solve_qbf_game(&f(vec![[p(1), p(2), p(2)]])),
            QbfWinner::SatisfierWins
        );
        assert_eq!(
            solve_qbf_game(&f(vec![[p(1), p(1), p(1)]])),
            QbfWinner::FalsifierWins
        );
        assert_eq!(
            solve_qbf_game(&f(vec![[p(1), p(2), p(2)], [n(1), n(2), n(2)]])),
            QbfWinner::SatisfierWins
        );
    }

    #[test]
    fn evaluate_examples() {
        let a: Assignment = [(1, false), (2, true)].into_iter().collect();
        assert_eq!(evaluate(&[[p(1), p(2), p(2)]], &a), Ok(true));
        let a: Assignment = [(1, false)].into_iter().collect();
        assert_eq!(evaluate(&[[p(1), p(1), p(1)]], &a), Ok(false));
        assert_eq!(evaluate(&[], &Assignment::new()), Ok(true));
        assert_eq!(
            evaluate(&[[p(1), p(2), p(2)]], &a),
            Err(QbfError::PartialAssignment(2))
        );
    }

    #[test]
    fn winning_values() {
        let phi = QbfFormula::new(1, vec![[p(1), p(2), p(2)], [n(1), n(2), n(2)]]).unwrap();
        let a: Assignment = [(1, true)].into_iter().collect();
        assert_eq!(winning_value(&phi, &a, 2), Ok(Some(false)));
        let a: Assignment = [(1, false)].into_iter().collect();
        assert_eq!(winning_value(&phi, &a, 2), Ok(Some(true)));
        assert_eq!(winning_value(&phi, &Assignment::new(), 1), Ok(None));
    }
}
