use std::fmt;

use crate::board::{Hypergraph, Vertex};
use crate::qbf::{Literal, QbfFormula};

use super::labels::{LabelFile, TagEntry, VertexLabel};

/// Which gadget family an edge of the compiled board belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    /// Even-variable choice edge, indexed by the variable.
    A(usize),
    /// Odd-variable choice edge, indexed by the variable.
    B(usize),
    /// Chain edge through the positive literal, indexed by its lowest u.
    CPlus(usize),
    CMinus(usize),
    /// Clause edge, 1-based clause number.
    D(usize),
}

impl EdgeTag {
    pub fn name(self) -> &'static str {
        match self {
            EdgeTag::A(_) => "A",
            EdgeTag::B(_) => "B",
            EdgeTag::CPlus(_) => "Cplus",
            EdgeTag::CMinus(_) => "Cminus",
            EdgeTag::D(_) => "D",
        }
    }

    pub fn index(self) -> usize {
        match self {
            EdgeTag::A(i) | EdgeTag::B(i) | EdgeTag::CPlus(i) | EdgeTag::CMinus(i) | EdgeTag::D(i) => i,
        }
    }

    pub fn is_clause(self) -> bool {
        matches!(self, EdgeTag::D(_))
    }
}

impl fmt::Display for EdgeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.index())
    }
}

/// Compiled avoidance board of a formula, with per-vertex and per-edge metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledReduction {
    hypergraph: Hypergraph,
    formula: QbfFormula,
    labels: Vec<VertexLabel>,
    tags: Vec<EdgeTag>,
    truncated: Vec<bool>,
}

impl LabeledReduction {
    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn formula(&self) -> &QbfFormula {
        &self.formula
    }

    pub fn rounds(&self) -> usize {
        self.formula.rounds()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.clauses().len()
    }

    pub fn num_vertices(&self) -> usize {
        self.hypergraph.num_vertices()
    }

    /// Vertex of the positive literal of variable `i`.
    pub fn x(&self, i: usize) -> Vertex {
        assert!((1..=2 * self.rounds()).contains(&i), "variable {i} out of range");
        i
    }

    pub fn xbar(&self, i: usize) -> Vertex {
        assert!((1..=2 * self.rounds()).contains(&i), "variable {i} out of range");
        2 * self.rounds() + i
    }

    /// Vertex `u_j`, or `None` when `j` is outside `1..=6n`.
    pub fn u(&self, j: usize) -> Option<Vertex> {
        (1..=6 * self.rounds())
            .contains(&j)
            .then(|| 4 * self.rounds() + j)
    }

    /// Like [`Self::u`] for indices known to exist.
    pub fn uu(&self, j: usize) -> Vertex {
        self.u(j).unwrap_or_else(|| panic!("u({j}) does not exist"))
    }

    pub fn literal_vertex(&self, lit: Literal) -> Vertex {
        if lit.positive {
            self.x(lit.var)
        } else {
            self.xbar(lit.var)
        }
    }

    pub fn label(&self, v: Vertex) -> VertexLabel {
        self.labels[v - 1]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn tag(&self, edge: usize) -> EdgeTag {
        self.tags[edge]
    }

    pub fn tags(&self) -> &[EdgeTag] {
        &self.tags
    }

    /// Whether out-of-range u's were dropped from this edge.
    pub fn is_truncated(&self, edge: usize) -> bool {
        self.truncated[edge]
    }

    /// Index of the edge carrying `tag`.
    pub fn edge_index(&self, tag: EdgeTag) -> Option<usize> {
        self.tags.iter().position(|&t| t == tag)
    }

    pub fn label_file(&self) -> LabelFile {
        let mut f = LabelFile::from_labels(
            self.labels.iter().enumerate().map(|(i, &l)| (i + 1, l)),
        );
        f.edges = self
            .tags
            .iter()
            .zip(&self.truncated)
            .enumerate()
            .map(|(edge, (tag, &truncated))| TagEntry {
                edge,
                tag: tag.name().to_string(),
                index: tag.index(),
                truncated,
            })
            .collect();
        f
    }
}

enum Ref {
    X(usize),
    XBar(usize),
    U(usize),
}

/// Compiles a formula into an Avoider-Enforcer board on `10n` vertices.
///
/// Ids: `x_i = i`, `xbar_i = 2n + i`, `u_j = 4n + j`. Edge order is round by
/// round (`A`, `C±(6i)`, `C±(6i-2)`, `B`, `C±(6i-4)`) followed by one clause
/// edge per clause. References to `u_j` with `j > 6n` are dropped.
pub fn reduce_qbf_to_ae(phi: &QbfFormula) -> LabeledReduction {
    let n = phi.rounds();
    let nv = 10 * n;
    let resolve = |r: &Ref| -> Option<Vertex> {
        match *r {
            Ref::X(i) => Some(i),
            Ref::XBar(i) => Some(2 * n + i),
            Ref::U(j) => (j <= 6 * n).then_some(4 * n + j),
        }
    };

    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(8 * n + phi.clauses().len());
    let mut tags = Vec::new();
    let mut truncated = Vec::new();
    let mut push = |tag: EdgeTag, refs: Vec<Ref>| {
        let vs: Vec<Vertex> = refs.iter().filter_map(resolve).collect();
        truncated.push(vs.len() < refs.len());
        edges.push(vs);
        tags.push(tag);
    };

    for i in 1..=n {
        let (e, o) = (2 * i, 2 * i - 1);
        let s = 6 * i;
        push(EdgeTag::A(e), vec![Ref::X(e), Ref::XBar(e), Ref::U(s + 1), Ref::U(s + 3)]);
        push(EdgeTag::CPlus(s), vec![Ref::U(s), Ref::U(s + 1), Ref::U(s + 3), Ref::X(e)]);
        push(EdgeTag::CMinus(s), vec![Ref::U(s), Ref::U(s + 1), Ref::U(s + 3), Ref::XBar(e)]);
        push(EdgeTag::CPlus(s - 2), vec![Ref::U(s - 2), Ref::U(s - 1), Ref::U(s + 1), Ref::X(e)]);
        push(EdgeTag::CMinus(s - 2), vec![Ref::U(s - 2), Ref::U(s - 1), Ref::U(s + 1), Ref::XBar(e)]);
        push(EdgeTag::B(o), vec![Ref::X(o), Ref::XBar(o), Ref::U(s - 1)]);
        push(EdgeTag::CPlus(s - 4), vec![Ref::U(s - 4), Ref::U(s - 3), Ref::U(s - 1), Ref::X(o)]);
        push(EdgeTag::CMinus(s - 4), vec![Ref::U(s - 4), Ref::U(s - 3), Ref::U(s - 1), Ref::XBar(o)]);
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        let mut refs = Vec::with_capacity(6);
        for lit in clause {
            refs.push(if lit.positive { Ref::X(lit.var) } else { Ref::XBar(lit.var) });
            let t = lit.var.div_ceil(2);
            refs.push(Ref::U(if lit.var % 2 == 1 { 6 * t - 1 } else { 6 * t + 1 }));
        }
        push(EdgeTag::D(j + 1), refs);
    }

    let mut labels = Vec::with_capacity(nv);
    labels.extend((1..=2 * n).map(VertexLabel::X));
    labels.extend((1..=2 * n).map(VertexLabel::XBar));
    labels.extend((1..=6 * n).map(VertexLabel::U));

    let mut hypergraph = Hypergraph::new(nv, edges).expect("gadget edges are in range");
    for (i, l) in labels.iter().enumerate() {
        hypergraph.set_label(i + 1, l.to_string()).expect("in range");
    }
    let dups = hypergraph.duplicate_edges();
    if !dups.is_empty() {
        log::warn!("compiled board has duplicate edges {dups:?}");
    }
    LabeledReduction {
        hypergraph,
        formula: phi.clone(),
        labels,
        tags,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::Literal as L;

    fn one_round(clauses: Vec<[L; 3]>) -> LabeledReduction {
        reduce_qbf_to_ae(&QbfFormula::new(1, clauses).unwrap())
    }

    fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
        v.sort_unstable();
        v
    }

    #[test]
    fn single_round_edges() {
        let r = one_round(vec![[L::pos(1), L::pos(2), L::pos(2)]]);
        let (x1, x2, xb1, xb2) = (r.x(1), r.x(2), r.xbar(1), r.xbar(2));
        let u = |j| r.uu(j);
        let expect = [
            (EdgeTag::A(2), vec![x2, xb2]),
            (EdgeTag::CPlus(6), vec![u(6), x2]),
            (EdgeTag::CMinus(6), vec![u(6), xb2]),
            (EdgeTag::CPlus(4), vec![u(4), u(5), x2]),
            (EdgeTag::CMinus(4), vec![u(4), u(5), xb2]),
            (EdgeTag::B(1), vec![x1, xb1, u(5)]),
            (EdgeTag::CPlus(2), vec![u(2), u(3), u(5), x1]),
            (EdgeTag::CMinus(2), vec![u(2), u(3), u(5), xb1]),
            (EdgeTag::D(1), vec![x1, u(5), x2]),
        ];
        assert_eq!(r.hypergraph().num_vertices(), 10);
        assert_eq!(r.hypergraph().num_edges(), 9);
        for (idx, (tag, vs)) in expect.into_iter().enumerate() {
            assert_eq!(r.tag(idx), tag);
            assert_eq!(r.hypergraph().edge(idx), sorted(vs).as_slice(), "{tag}");
        }
        let truncated: Vec<usize> = (0..9).filter(|&e| r.is_truncated(e)).collect();
        // A, C±6, C±4 and the clause edge on X2 lose u's.
        assert_eq!(truncated, vec![0, 1, 2, 3, 4, 8]);
    }

    #[test]
    fn labels_and_ids() {
        let r = one_round(vec![]);
        assert_eq!(r.label(1), VertexLabel::X(1));
        assert_eq!(r.label(3), VertexLabel::XBar(1));
        assert_eq!(r.label(5), VertexLabel::U(1));
        assert_eq!(r.u(7), None);
        assert_eq!(r.hypergraph().label(10), Some("u(6)"));
        let f = r.label_file();
        assert_eq!(f.vertices.len(), 10);
        assert_eq!(f.edges.len(), 8);
    }
}
