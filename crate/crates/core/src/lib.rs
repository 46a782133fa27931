//! Exact solver and reduction toolkit for avoidance positional games.
//!
//! Covers the Avoider-Enforcer, Avoider-Avoider, Domination and vertex H-game
//! conventions on small boards, the quantified-formula game, and constructions
//! that carry winners between them.

pub mod batch;
pub mod board;
pub mod qbf;
pub mod reductions;
pub mod rng;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use board::{
    avoider_filled, is_dominating, subgraph_contains, Convention, Graph, Hypergraph, Outcome,
    PlayState, Player, Vertex, VertexSet,
};
