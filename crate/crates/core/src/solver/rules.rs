//! Per-convention terminal tests and move generation over claim bitsets.
//!
//! Scores are from the first player's point of view: `1` first player wins,
//! `-1` first player loses, `0` draw.

use crate::board::{Graph, Hypergraph, SubgraphMatcher, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Verdict {
    pub score: i8,
    /// The game is actually over, not merely decided.
    pub ended: bool,
}

impl Verdict {
    fn decided(score: i8) -> Option<Verdict> {
        Some(Verdict {
            score,
            ended: false,
        })
    }

    fn over(score: i8) -> Option<Verdict> {
        Some(Verdict { score, ended: true })
    }
}

pub(crate) struct EdgeBoard {
    n: usize,
    edges: Vec<u64>,
    by_vertex: Vec<Vec<u64>>,
}

impl EdgeBoard {
    fn new(h: &Hypergraph) -> Self {
        let edges: Vec<u64> = h
            .edge_masks()
            .expect("board size checked by caller")
            .into_iter()
            .map(VertexSet::bits)
            .collect();
        let by_vertex = (0..h.num_vertices())
            .map(|i| edges.iter().copied().filter(|e| e >> i & 1 == 1).collect())
            .collect();
        EdgeBoard {
            n: h.num_vertices(),
            edges,
            by_vertex,
        }
    }

    #[inline]
    fn fills(&self, owner: u64, last: Option<Vertex>) -> bool {
        let list = match last {
            Some(v) => &self.by_vertex[v - 1],
            None => &self.edges,
        };
        list.iter().any(|&e| e & !owner == 0)
    }
}

pub(crate) enum Rules {
    AvoiderEnforcer { board: EdgeBoard, prune: bool },
    AvoiderAvoider { board: EdgeBoard, dominated: Vec<(Vertex, Vertex)> },
    Domination { n: usize, closed: Vec<u64> },
    HGame {
        n: usize,
        matcher: Box<SubgraphMatcher>,
    },
}

fn full(n: usize) -> u64 {
    VertexSet::full(n).bits()
}

impl Rules {
    pub(crate) fn avoider_enforcer(h: &Hypergraph, prune: bool) -> Self {
        Rules::AvoiderEnforcer {
            board: EdgeBoard::new(h),
            prune,
        }
    }

    pub(crate) fn avoider_avoider(h: &Hypergraph) -> Self {
        Rules::AvoiderAvoider {
            board: EdgeBoard::new(h),
            dominated: crate::strategies::dominated_pairs(h),
        }
    }

    pub(crate) fn domination(g: &Graph) -> Self {
        Rules::Domination {
            n: g.num_vertices(),
            closed: g
                .closed_neighborhoods()
                .expect("board size checked by caller")
                .into_iter()
                .map(VertexSet::bits)
                .collect(),
        }
    }

    pub(crate) fn hgame(g: &Graph, pattern: &Graph) -> Self {
        Rules::HGame {
            n: g.num_vertices(),
            matcher: Box::new(SubgraphMatcher::new(g, pattern)),
        }
    }

    pub(crate) fn board_size(&self) -> usize {
        match self {
            Rules::AvoiderEnforcer { board, .. } | Rules::AvoiderAvoider { board, .. } => board.n,
            Rules::Domination { n, .. } | Rules::HGame { n, .. } => *n,
        }
    }

    /// Terminal test; `last` is the vertex just claimed, `None` to check everything.
    pub(crate) fn verdict(&self, first: u64, second: u64, last: Option<Vertex>) -> Option<Verdict> {
        let n = self.board_size();
        let claimed = first | second;
        let is_full = claimed == full(n);
        // The player who made the last move owns `last`.
        let last_by_first = last.map(|v| first >> (v - 1) & 1 == 1);
        match self {
            Rules::AvoiderEnforcer { board, .. } => {
                if last_by_first != Some(false) && board.fills(first, last) {
                    return Verdict::over(-1);
                }
                if is_full {
                    return Verdict::over(1);
                }
                if board.edges.iter().all(|&e| e & second != 0) {
                    return Verdict::decided(1);
                }
                None
            }
            Rules::AvoiderAvoider { board, .. } => {
                match last_by_first {
                    Some(true) if board.fills(first, last) => return Verdict::over(-1),
                    Some(false) if board.fills(second, last) => return Verdict::over(1),
                    None => {
                        let f = board.fills(first, None);
                        let s = board.fills(second, None);
                        if f || s {
                            // Whoever completed first lost; with both complete the
                            // position is unreachable, report the first player's loss.
                            return Verdict::over(if f { -1 } else { 1 });
                        }
                    }
                    _ => {}
                }
                if is_full {
                    return Verdict::over(0);
                }
                if board
                    .edges
                    .iter()
                    .all(|&e| e & first != 0 && e & second != 0)
                {
                    return Verdict::decided(0);
                }
                None
            }
            Rules::Domination { closed, .. } => {
                if closed.iter().all(|&nb| nb & second != 0) {
                    return Some(Verdict {
                        score: 1,
                        ended: is_full,
                    });
                }
                if closed.iter().any(|&nb| nb & !first == 0) {
                    return Some(Verdict {
                        score: -1,
                        ended: is_full,
                    });
                }
                debug_assert!(!is_full);
                None
            }
            Rules::HGame { matcher, .. } => {
                if last_by_first != Some(false) && matcher.contains(VertexSet::from_bits(first)) {
                    return Verdict::over(-1);
                }
                if is_full {
                    return Verdict::over(1);
                }
                let free = (n - claimed.count_ones() as usize) as u32;
                let first_to_move = first.count_ones() == second.count_ones();
                let still = if first_to_move { free.div_ceil(2) } else { free / 2 };
                if ((first.count_ones() + still) as usize) < matcher.pattern_size()
                    || !matcher.contains(VertexSet::from_bits(full(n) & !second))
                {
                    return Verdict::decided(1);
                }
                None
            }
        }
    }

    /// Candidate moves in search order. Every optimal move may be missing, but
    /// at least one move achieving the position's value is always present.
    pub(crate) fn moves(&self, first: u64, second: u64, out: &mut Vec<Vertex>) {
        out.clear();
        let free = full(self.board_size()) & !(first | second);
        match self {
            Rules::AvoiderEnforcer { board, prune } => {
                if *prune {
                    undominated_moves(board, second, free, out);
                } else {
                    out.extend(VertexSet::from_bits(free));
                }
            }
            Rules::AvoiderAvoider { board, dominated } => {
                // Vertices that no edge can still hurt either player with are
                // interchangeable; keep only the lowest of them.
                let mut relevant = 0u64;
                for &e in &board.edges {
                    if e & second == 0 || e & first == 0 {
                        relevant |= e;
                    }
                }
                let idle = free & !relevant;
                let mut late = Vec::new();
                for v in VertexSet::from_bits(free & relevant) {
                    let deferred = dominated
                        .iter()
                        .any(|&(u, w)| w == v && free >> (u - 1) & 1 == 1);
                    if deferred {
                        late.push(v);
                    } else {
                        out.push(v);
                    }
                }
                if idle != 0 {
                    out.push(idle.trailing_zeros() as usize + 1);
                }
                out.extend(late);
            }
            Rules::Domination { .. } | Rules::HGame { .. } => {
                out.extend(VertexSet::from_bits(free));
            }
        }
    }
}

/// Unclaimed vertices not dominated in the residual game.
///
/// `u` dominates `v` when every live edge through `u` also passes through `v`
/// (restricted to unclaimed vertices); a vertex on no live edge dominates all.
/// Mutually dominating vertices keep the lowest id. Domination is transitive,
/// so a maximal vertex always survives.
fn undominated_moves(board: &EdgeBoard, enforcer: u64, free: u64, out: &mut Vec<Vertex>) {
    let mut cover = [0u64; 64];
    let mut on_live = 0u64;
    for v in VertexSet::from_bits(free) {
        cover[v - 1] = free;
    }
    for &e in &board.edges {
        if e & enforcer != 0 {
            continue;
        }
        let r = e & free;
        on_live |= r;
        for u in VertexSet::from_bits(r) {
            cover[u - 1] &= r;
        }
    }
    // Vertices on no live edge are all equivalent: keep the lowest and treat
    // it as dominating every other move.
    let idle = free & !on_live;
    if idle != 0 {
        out.push(idle.trailing_zeros() as usize + 1);
        return;
    }
    for v in VertexSet::from_bits(free) {
        let vb = 1u64 << (v - 1);
        let dominated = VertexSet::from_bits(free & !vb).iter().any(|u| {
            cover[u - 1] & vb != 0 && (cover[v - 1] >> (u - 1) & 1 == 0 || u < v)
        });
        if !dominated {
            out.push(v);
        }
    }
}
