//! Board constructions: formula gadget compiler, edge-size raising, the
//! Avoider-Avoider lift, and the Domination / H-game graph reductions.

mod algebra;
mod gadget;
mod graphs;
mod labels;
mod uniform;

use thiserror::Error;

use crate::board::BoardError;

pub use algebra::{independent_graph, join, path2, strong_product};
pub use gadget::{reduce_qbf_to_ae, EdgeTag, LabeledReduction};
pub use graphs::{ae_to_aa, ae_to_domination, reduce_ae_to_hgame, HGameReduction, PatternSpec};
pub use labels::{LabelEntry, LabelFile, TagEntry, VertexLabel};
pub use uniform::{raise_min_edge_size, to_k_uniform};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("hypergraph has no edges")]
    EmptyEdgeSet,
    #[error("edge {edge} has {size} vertices, more than k = {k}")]
    EdgeTooLarge { edge: usize, size: usize, k: usize },
    #[error("board has {0} vertices; the lift needs an even count")]
    OddVertexCount(usize),
    #[error("vertex {0} lies in no edge")]
    IsolatedVertex(usize),
    #[error("hypergraph is not {0}-uniform")]
    NotUniform(usize),
    #[error("bad pattern: {0}")]
    BadPattern(String),
    #[error(transparent)]
    Board(#[from] BoardError),
}
