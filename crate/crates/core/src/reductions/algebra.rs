//! Small graph algebra: edgeless graphs, joins and strong products.

use crate::board::Graph;

/// `I_k`: `k` vertices, no edges.
pub fn independent_graph(k: usize) -> Graph {
    Graph::new(k)
}

/// The single-edge graph on two vertices.
pub fn path2() -> Graph {
    Graph::complete(2)
}

/// Disjoint union plus every edge between the two sides. `h`'s vertices are
/// shifted by `|V(g)|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let mut out = Graph::new(ng + nh);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
    }
    for (u, v) in h.edges() {
        out.add_edge(ng + u, ng + v).expect("in range");
    }
    for u in 1..=ng {
        for v in 1..=nh {
            out.add_edge(u, ng + v).expect("in range");
        }
    }
    out
}

/// Pairs `(a, b)` numbered `(a - 1) * |V(h)| + b`, adjacent when each coordinate
/// is equal or adjacent and the pairs differ.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let id = |a: usize, b: usize| (a - 1) * nh + b;
    let close = |gr: &Graph, x: usize, y: usize| x == y || gr.has_edge(x, y);
    let mut out = Graph::new(ng * nh);
    for a1 in 1..=ng {
        for b1 in 1..=nh {
            for a2 in 1..=ng {
                for b2 in 1..=nh {
                    let (p, q) = (id(a1, b1), id(a2, b2));
                    if p < q && close(g, a1, a2) && close(h, b1, b2) {
                        out.add_edge(p, q).expect("in range");
                    }
                }
            }
        }
    }
    out
}
