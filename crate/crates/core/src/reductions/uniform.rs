use crate::board::{Hypergraph, Vertex};

use super::labels::VertexLabel;
use super::ReductionError;

fn next_aux_index(h: &Hypergraph) -> usize {
    h.labels()
        .values()
        .filter(|t| matches!(t.parse(), Ok(VertexLabel::Aux(_))))
        .count()
        + 1
}

/// Adds two fresh vertices and splits every minimum-size edge `e` into
/// `e + a1` and `e + a2`, in place. The winner of the avoidance game is unchanged.
pub fn raise_min_edge_size(h: &Hypergraph) -> Result<Hypergraph, ReductionError> {
    let min = h.min_edge_size().ok_or(ReductionError::EmptyEdgeSet)?;
    let n = h.num_vertices();
    let (a1, a2) = (n + 1, n + 2);
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(2 * h.num_edges());
    for e in h.edges() {
        if e.len() == min {
            for a in [a1, a2] {
                let mut grown = e.clone();
                grown.push(a);
                edges.push(grown);
            }
        } else {
            edges.push(e.clone());
        }
    }
    let mut out = Hypergraph::new(n + 2, edges)?;
    for (&v, text) in h.labels() {
        out.set_label(v, text.clone())?;
    }
    let aux = next_aux_index(h);
    out.set_label(a1, VertexLabel::Aux(aux).to_string())?;
    out.set_label(a2, VertexLabel::Aux(aux + 1).to_string())?;
    Ok(out)
}

/// Repeats [`raise_min_edge_size`] until every edge has exactly `k` vertices.
pub fn to_k_uniform(h: &Hypergraph, k: usize) -> Result<Hypergraph, ReductionError> {
    if h.num_edges() == 0 {
        return Err(ReductionError::EmptyEdgeSet);
    }
    if let Some((edge, e)) = h.edges().iter().enumerate().find(|(_, e)| e.len() > k) {
        return Err(ReductionError::EdgeTooLarge {
            edge,
            size: e.len(),
            k,
        });
    }
    let mut cur = h.clone();
    while !cur.is_uniform(k) {
        cur = raise_min_edge_size(&cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raise_examples() {
        let h = Hypergraph::new(3, [vec![1, 2], vec![1, 2, 3]]).unwrap();
        let r = raise_min_edge_size(&h).unwrap();
        assert_eq!(r.num_vertices(), 5);
        assert_eq!(r.edges(), &[vec![1, 2, 4], vec![1, 2, 5], vec![1, 2, 3]]);
        assert_eq!(r.label(4), Some("aux(1)"));

        let h = Hypergraph::new(1, [vec![1]]).unwrap();
        assert_eq!(raise_min_edge_size(&h).unwrap().edges(), &[vec![1, 2], vec![1, 3]]);

        let empty = Hypergraph::new(2, Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(raise_min_edge_size(&empty), Err(ReductionError::EmptyEdgeSet));
    }

    #[test]
    fn uniform_examples() {
        let h = Hypergraph::new(5, [vec![1, 2, 3, 4, 5]]).unwrap();
        let u = to_k_uniform(&h, 6).unwrap();
        assert_eq!((u.num_vertices(), u.num_edges()), (7, 2));
        assert!(u.is_uniform(6));

        let h = Hypergraph::new(6, [vec![1, 2, 3, 4], vec![1, 2, 3, 4, 5, 6]]).unwrap();
        let u = to_k_uniform(&h, 6).unwrap();
        assert_eq!(u.num_vertices(), 10);
        assert!(u.is_uniform(6));
        assert_eq!(u.label(10), Some("aux(4)"));

        assert!(matches!(
            to_k_uniform(&h, 5),
            Err(ReductionError::EdgeTooLarge { edge: 1, size: 6, k: 5 })
        ));
    }
}
