//! Game boards, play states and terminal checks shared by every convention.
//!
//! Vertices are 1-based dense integers. Play states and solver keys use a
//! 64-bit [`VertexSet`], so only boards of at most 64 vertices can be played;
//! larger boards can still be built, reduced and serialized.

mod format;
mod subgraph;

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use format::{
    parse_graph, parse_hypergraph, write_graph, write_hypergraph, FormatError,
};
pub use subgraph::{subgraph_contains, SubgraphMatcher};

/// A vertex id, always in `1..=num_vertices`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("vertex {vertex} out of range 1..={num_vertices}")]
    OutOfRange { vertex: Vertex, num_vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("board has {0} vertices; play is limited to {cap}", cap = VertexSet::CAPACITY)]
    TooLarge(usize),
    #[error("claimed sets overlap on vertex {0}")]
    Overlap(Vertex),
    #[error("claim counts {first}/{second} do not alternate with the first player starting")]
    BadTurnCount { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(Vertex),
    #[error("vertex {vertex} out of range 1..={board_size}")]
    OutOfRange { vertex: Vertex, board_size: usize },
}

/// Set of vertex ids `1..=64` backed by one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "vertex set capacity exceeded");
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        (1..=Self::CAPACITY).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        assert!((1..=Self::CAPACITY).contains(&v), "vertex {v} outside set capacity");
        self.0 |= 1u64 << (v - 1);
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        if (1..=Self::CAPACITY).contains(&v) {
            self.0 &= !(1u64 << (v - 1));
        }
    }

    #[inline]
    pub fn with(mut self, v: Vertex) -> Self {
        self.insert(v);
        self
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest vertex in the set.
    #[inline]
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

/// Ascending iterator over a [`VertexSet`].
pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Vertex universe plus a family of losing sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    edges: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
}

impl Hypergraph {
    /// Builds a hypergraph; repeated vertices inside an edge collapse. Duplicate
    /// edges are kept so edge indices stay stable (see [`Hypergraph::duplicate_edges`]).
    pub fn new<E, I>(num_vertices: usize, edges: E) -> Result<Self, BoardError>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = Vertex>,
    {
        let mut out = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let set: BTreeSet<Vertex> = edge.into_iter().collect();
            if set.is_empty() {
                return Err(BoardError::EmptyEdge { edge: idx });
            }
            if let Some(&v) = set.iter().find(|&&v| v == 0 || v > num_vertices) {
                return Err(BoardError::OutOfRange {
                    vertex: v,
                    num_vertices,
                });
            }
            out.push(set.into_iter().collect());
        }
        Ok(Hypergraph {
            num_vertices,
            edges: out,
            labels: BTreeMap::new(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[Vertex] {
        &self.edges[index]
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) -> Result<(), BoardError> {
        if v == 0 || v > self.num_vertices {
            return Err(BoardError::OutOfRange {
                vertex: v,
                num_vertices: self.num_vertices,
            });
        }
        self.labels.insert(v, label.into());
        Ok(())
    }

    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    pub fn max_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).max()
    }

    /// True when every edge has exactly `k` vertices (vacuously true without edges).
    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Pairs `(i, j)`, `i < j`, of edges with identical vertex sets.
    pub fn duplicate_edges(&self) -> Vec<(usize, usize)> {
        let mut seen: BTreeMap<&[Vertex], usize> = BTreeMap::new();
        let mut dups = Vec::new();
        for (j, e) in self.edges.iter().enumerate() {
            match seen.get(e.as_slice()) {
                Some(&i) => dups.push((i, j)),
                None => {
                    seen.insert(e, j);
                }
            }
        }
        dups
    }

    /// Edges as bitsets; fails for boards beyond [`VertexSet::CAPACITY`].
    pub fn edge_masks(&self) -> Result<Vec<VertexSet>, BoardError> {
        if self.num_vertices > VertexSet::CAPACITY {
            return Err(BoardError::TooLarge(self.num_vertices));
        }
        Ok(self
            .edges
            .iter()
            .map(|e| e.iter().copied().collect())
            .collect())
    }
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, BoardError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), BoardError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(BoardError::OutOfRange {
                    vertex: w,
                    num_vertices: n,
                });
            }
        }
        if u == v {
            return Err(BoardError::SelfLoop(u));
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1 && u <= self.adj.len() && self.adj[u - 1].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v - 1].iter().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nb)| {
            let u = i + 1;
            nb.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn neighbor_mask(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).filter(|&w| w <= VertexSet::CAPACITY).collect()
    }

    /// `N[v]` as bitsets for every vertex; fails beyond [`VertexSet::CAPACITY`].
    pub fn closed_neighborhoods(&self) -> Result<Vec<VertexSet>, BoardError> {
        if self.num_vertices() > VertexSet::CAPACITY {
            return Err(BoardError::TooLarge(self.num_vertices()));
        }
        Ok((1..=self.num_vertices())
            .map(|v| self.neighbor_mask(v).with(v))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    First,
    Second,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }
}

/// One node of the game tree: the two disjoint claim sets.
///
/// The player to move is derived from the claim counts.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlayState {
    first: VertexSet,
    second: VertexSet,
    board_size: usize,
}

impl PlayState {
    pub fn new(board_size: usize) -> Result<Self, BoardError> {
        if board_size > VertexSet::CAPACITY {
            return Err(BoardError::TooLarge(board_size));
        }
        Ok(PlayState {
            first: VertexSet::empty(),
            second: VertexSet::empty(),
            board_size,
        })
    }

    pub fn from_sets(
        board_size: usize,
        first: VertexSet,
        second: VertexSet,
    ) -> Result<Self, BoardError> {
        let state = PlayState::new(board_size)?;
        let board = VertexSet::full(board_size);
        if let Some(v) = first.union(second).difference(board).first() {
            return Err(BoardError::OutOfRange {
                vertex: v,
                num_vertices: board_size,
            });
        }
        if let Some(v) = first.intersection(second).first() {
            return Err(BoardError::Overlap(v));
        }
        let (a, b) = (first.len(), second.len());
        if a != b && a != b + 1 {
            return Err(BoardError::BadTurnCount {
                first: a,
                second: b,
            });
        }
        Ok(PlayState {
            first,
            second,
            ..state
        })
    }

    /// Replays a move sequence from the empty board.
    pub fn from_moves(board_size: usize, moves: &[Vertex]) -> Result<Self, PositionError> {
        let mut state = PlayState::new(board_size)?;
        for &v in moves {
            state = state.apply_move(v)?;
        }
        Ok(state)
    }

    pub fn board_size(&self) -> usize {
        self.board_size
    }

    pub fn first(&self) -> VertexSet {
        self.first
    }

    pub fn second(&self) -> VertexSet {
        self.second
    }

    pub fn claimed_by(&self, player: Player) -> VertexSet {
        match player {
            Player::First => self.first,
            Player::Second => self.second,
        }
    }

    pub fn claimed(&self) -> VertexSet {
        self.first.union(self.second)
    }

    pub fn unclaimed(&self) -> VertexSet {
        VertexSet::full(self.board_size).difference(self.claimed())
    }

    pub fn moves_made(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn is_full(&self) -> bool {
        self.moves_made() == self.board_size
    }

    pub fn to_move(&self) -> Player {
        if self.first.len() == self.second.len() {
            Player::First
        } else {
            Player::Second
        }
    }

    /// Claims `v` for the player to move.
    pub fn apply_move(&self, v: Vertex) -> Result<PlayState, MoveError> {
        if v == 0 || v > self.board_size {
            return Err(MoveError::OutOfRange {
                vertex: v,
                board_size: self.board_size,
            });
        }
        if self.claimed().contains(v) {
            return Err(MoveError::AlreadyClaimed(v));
        }
        let mut next = *self;
        match self.to_move() {
            Player::First => next.first.insert(v),
            Player::Second => next.second.insert(v),
        }
        Ok(next)
    }
}

impl fmt::Debug for PlayState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PlayState {{ first: {:?}, second: {:?}, n: {} }}",
            self.first, self.second, self.board_size
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Which avoidance game is being played.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convention {
    AvoiderEnforcer,
    AvoiderAvoider,
    DominationAE,
    /// Vertex H-game with the given forbidden pattern.
    HGame(Graph),
}

impl Convention {
    pub fn name(&self) -> &'static str {
        match self {
            Convention::AvoiderEnforcer => "avoider-enforcer",
            Convention::AvoiderAvoider => "avoider-avoider",
            Convention::DominationAE => "domination",
            Convention::HGame(_) => "h-game",
        }
    }
}

/// Result of a finished game under perfect play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    AvoiderWins,
    EnforcerWins,
    FirstPlayerLoses,
    SecondPlayerLoses,
    Draw,
    DominatorWins,
    StallerWins,
}

impl Outcome {
    /// Stable winner token printed by the CLI.
    pub fn token(self) -> &'static str {
        match self {
            Outcome::AvoiderWins => "AVOIDER",
            Outcome::EnforcerWins => "ENFORCER",
            Outcome::FirstPlayerLoses => "FIRST_LOSES",
            Outcome::SecondPlayerLoses => "SECOND_LOSES",
            Outcome::Draw => "DRAW",
            Outcome::DominatorWins => "DOMINATOR",
            Outcome::StallerWins => "STALLER",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Least index of an edge entirely inside `claimed`.
pub fn avoider_filled(h: &Hypergraph, claimed: VertexSet) -> Option<usize> {
    h.edges()
        .iter()
        .position(|e| e.iter().all(|&v| claimed.contains(v)))
}

/// Closed-neighbourhood domination: every vertex is in `s` or adjacent to it.
pub fn is_dominating(g: &Graph, s: VertexSet) -> bool {
    (1..=g.num_vertices()).all(|w| s.contains(w) || g.neighbors(w).any(|x| s.contains(x)))
}
