use super::{Graph, Vertex, VertexSet};

/// Precomputed matcher deciding whether `G[S]` contains a copy of a pattern.
///
/// Copies need not be induced. Only host vertices `1..=64` can take part, which
/// is all a [`VertexSet`] can name anyway.
#[derive(Debug, Clone)]
pub struct SubgraphMatcher {
    host: Vec<VertexSet>,
    order: Vec<usize>,
    // For each position in `order`, earlier positions adjacent to it in the pattern.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
    pattern_edges: usize,
}

impl SubgraphMatcher {
    pub fn new(host: &Graph, pattern: &Graph) -> Self {
        let k = pattern.num_vertices();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = vec![false; k + 1];
        while order.len() < k {
            let next = (1..=k)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let links = pattern.neighbors(p).filter(|&q| placed[q]).count();
                    (links, pattern.degree(p), std::cmp::Reverse(p))
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..i).filter(|&j| pattern.has_edge(p, order[j])).collect())
            .collect();
        let degree = order.iter().map(|&p| pattern.degree(p)).collect();
        SubgraphMatcher {
            host: (1..=host.num_vertices().min(VertexSet::CAPACITY))
                .map(|v| host.neighbor_mask(v))
                .collect(),
            order,
            back,
            degree,
            pattern_edges: pattern.num_edges(),
        }
    }

    pub fn pattern_size(&self) -> usize {
        self.order.len()
    }

    fn nbr(&self, v: Vertex) -> VertexSet {
        self.host.get(v - 1).copied().unwrap_or_default()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        let s = s.intersection(VertexSet::full(self.host.len()));
        if s.len() < self.order.len() {
            return false;
        }
        let mut deg_in_s = [0u8; VertexSet::CAPACITY];
        let mut edges = 0usize;
        for v in s {
            let d = self.nbr(v).intersection(s).len();
            deg_in_s[v - 1] = d as u8;
            edges += d;
        }
        if edges / 2 < self.pattern_edges {
            return false;
        }
        let mut image = vec![0usize; self.order.len()];
        self.extend(0, s, VertexSet::empty(), &deg_in_s, &mut image)
    }

    fn extend(
        &self,
        pos: usize,
        s: VertexSet,
        used: VertexSet,
        deg_in_s: &[u8; VertexSet::CAPACITY],
        image: &mut [usize],
    ) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let mut cand = s.difference(used);
        for &j in &self.back[pos] {
            cand = cand.intersection(self.nbr(image[j]));
        }
        for c in cand {
            if (deg_in_s[c - 1] as usize) < self.degree[pos] {
                continue;
            }
            image[pos] = c;
            if self.extend(pos + 1, s, used.with(c), deg_in_s, image) {
                return true;
            }
        }
        false
    }
}

/// True iff `G[S]` contains a (not necessarily induced) copy of `P`.
pub fn subgraph_contains(g: &Graph, s: VertexSet, p: &Graph) -> bool {
    SubgraphMatcher::new(g, p).contains(s)
}
