use crate::board::{Graph, Hypergraph, Vertex};

use super::algebra::{independent_graph, join, path2, strong_product};
use super::labels::VertexLabel;
use super::ReductionError;

/// Adds one fresh vertex to every edge. Avoider-wins maps to a draw and
/// Enforcer-wins to a first-player loss in the Avoider-Avoider game.
pub fn ae_to_aa(h: &Hypergraph) -> Result<Hypergraph, ReductionError> {
    let n = h.num_vertices();
    if n % 2 != 0 {
        return Err(ReductionError::OddVertexCount(n));
    }
    let v0 = n + 1;
    let edges = h.edges().iter().map(|e| {
        let mut e = e.clone();
        e.push(v0);
        e
    });
    let mut out = Hypergraph::new(n + 1, edges)?;
    for (&v, text) in h.labels() {
        out.set_label(v, text.clone())?;
    }
    out.set_label(v0, VertexLabel::V0.to_string())?;
    Ok(out)
}

/// Bipartite incidence graph with two copies of every edge-vertex.
///
/// Vertex `i` keeps its id; edge `c` (0-based) gets `n + 2c + 1` and
/// `n + 2c + 2`. Returns the graph and a label per vertex.
pub fn ae_to_domination(h: &Hypergraph) -> Result<(Graph, Vec<VertexLabel>), ReductionError> {
    let n = h.num_vertices();
    if let Some(v) = (1..=n).find(|&v| h.degree(v) == 0) {
        return Err(ReductionError::IsolatedVertex(v));
    }
    let mut g = Graph::new(n + 2 * h.num_edges());
    let mut labels: Vec<VertexLabel> = (1..=n).map(VertexLabel::U).collect();
    for (c, e) in h.edges().iter().enumerate() {
        let (c1, c2) = (n + 2 * c + 1, n + 2 * c + 2);
        for &v in e {
            g.add_edge(v, c1)?;
            g.add_edge(v, c2)?;
        }
        labels.push(VertexLabel::PairVertex(c));
        labels.push(VertexLabel::PairVertex(c));
    }
    Ok((g, labels))
}

/// Parameters of the forbidden pattern `I_k` joined with `H0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpec {
    k: usize,
    h0: Graph,
}

impl PatternSpec {
    pub fn new(k: usize, h0: Graph) -> Result<Self, ReductionError> {
        if k < 6 {
            return Err(ReductionError::BadPattern(format!("k = {k}, need k >= 6")));
        }
        if h0.num_edges() == 0 && h0.num_vertices() < 6 {
            return Err(ReductionError::BadPattern(format!(
                "H0 has no edge and only {} vertices, need at least 6",
                h0.num_vertices()
            )));
        }
        Ok(PatternSpec { k, h0 })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h0(&self) -> &Graph {
        &self.h0
    }

    /// `I_k` joined with `H0`.
    pub fn pattern(&self) -> Graph {
        join(&independent_graph(self.k), &self.h0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGameReduction {
    pub graph: Graph,
    pub pattern: Graph,
    pub labels: Vec<VertexLabel>,
    /// Per source edge: its auxiliary vertices.
    pub aux: Vec<Vec<Vertex>>,
    /// Per source edge: the vertices of its product gadget, in product order.
    pub gadgets: Vec<Vec<Vertex>>,
}

/// Graph whose vertex H-game (pattern `I_k` joined with `H0`) has the same
/// winner as the Avoider-Enforcer game on the 6-uniform input.
///
/// Ids: source vertices first, then `2(k-6)` auxiliaries per edge, then one
/// copy of `H0 x P2` per edge, each joined to its edge's source and
/// auxiliary vertices.
pub fn reduce_ae_to_hgame(h: &Hypergraph, spec: &PatternSpec) -> Result<HGameReduction, ReductionError> {
    if !h.is_uniform(6) {
        return Err(ReductionError::NotUniform(6));
    }
    let n = h.num_vertices();
    let m = h.num_edges();
    let per_aux = 2 * (spec.k - 6);
    let gadget = strong_product(spec.h0(), &path2());
    let per_gadget = gadget.num_vertices();

    let mut g = Graph::new(n + m * (per_aux + per_gadget));
    let mut labels: Vec<VertexLabel> = (1..=n).map(VertexLabel::U).collect();
    let mut next = n + 1;
    let mut aux = Vec::with_capacity(m);
    for c in 0..m {
        aux.push((next..next + per_aux).collect::<Vec<_>>());
        labels.extend(std::iter::repeat_n(VertexLabel::Aux(c), per_aux));
        next += per_aux;
    }
    let mut gadgets = Vec::with_capacity(m);
    for (c, e) in h.edges().iter().enumerate() {
        let base = next - 1;
        for (a, b) in gadget.edges() {
            g.add_edge(base + a, base + b)?;
        }
        let copy: Vec<Vertex> = (next..next + per_gadget).collect();
        for &w in &copy {
            for &v in e.iter().chain(&aux[c]) {
                g.add_edge(w, v)?;
            }
        }
        labels.extend(std::iter::repeat_n(VertexLabel::PairVertex(c), per_gadget));
        next += per_gadget;
        gadgets.push(copy);
    }
    debug_assert_eq!(next - 1, g.num_vertices());
    Ok(HGameReduction {
        graph: g,
        pattern: spec.pattern(),
        labels,
        aux,
        gadgets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aa_lift_examples() {
        let h = Hypergraph::new(2, [vec![1, 2]]).unwrap();
        let a = ae_to_aa(&h).unwrap();
        assert_eq!(a.num_vertices(), 3);
        assert_eq!(a.edges(), &[vec![1, 2, 3]]);
        assert_eq!(a.label(3), Some("v0"));
        let odd = Hypergraph::new(3, [vec![1, 2]]).unwrap();
        assert_eq!(ae_to_aa(&odd), Err(ReductionError::OddVertexCount(3)));
    }

    #[test]
    fn domination_examples() {
        let h = Hypergraph::new(2, [vec![1, 2]]).unwrap();
        let (g, labels) = ae_to_domination(&h).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(labels[2], VertexLabel::PairVertex(0));

        let h = Hypergraph::new(4, [vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let (g, _) = ae_to_domination(&h).unwrap();
        assert_eq!(g.num_vertices(), 10);
        assert_eq!(g.degree(2), 4);
        assert_eq!(g.degree(5), 2);

        let iso = Hypergraph::new(3, [vec![1, 2]]).unwrap();
        assert_eq!(ae_to_domination(&iso), Err(ReductionError::IsolatedVertex(3)));
    }

    #[test]
    fn hgame_single_edge() {
        let h = Hypergraph::new(6, [vec![1, 2, 3, 4, 5, 6]]).unwrap();
        let spec = PatternSpec::new(6, Graph::complete(2)).unwrap();
        let r = reduce_ae_to_hgame(&h, &spec).unwrap();
        assert_eq!(r.graph.num_vertices(), 10);
        assert_eq!(r.pattern.num_vertices(), 8);
        // K4 gadget plus 6 * 4 join edges
        assert_eq!(r.graph.num_edges(), 6 + 24);
        assert_eq!(r.gadgets, vec![vec![7, 8, 9, 10]]);
    }

    #[test]
    fn hgame_rejections() {
        assert!(matches!(
            PatternSpec::new(5, Graph::complete(2)),
            Err(ReductionError::BadPattern(_))
        ));
        assert!(matches!(
            PatternSpec::new(6, Graph::new(5)),
            Err(ReductionError::BadPattern(_))
        ));
        let h = Hypergraph::new(5, [vec![1, 2, 3, 4, 5]]).unwrap();
        let spec = PatternSpec::new(7, Graph::complete(2)).unwrap();
        assert_eq!(reduce_ae_to_hgame(&h, &spec), Err(ReductionError::NotUniform(6)));
    }
}
