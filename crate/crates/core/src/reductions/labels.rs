use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{Hypergraph, Vertex};

/// What a constructed vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    X(usize),
    XBar(usize),
    U(usize),
    Aux(usize),
    V0,
    /// Vertex of a per-edge gadget, indexed by the 0-based source edge.
    PairVertex(usize),
}

impl VertexLabel {
    pub fn kind(self) -> &'static str {
        match self {
            VertexLabel::X(_) => "x",
            VertexLabel::XBar(_) => "xbar",
            VertexLabel::U(_) => "u",
            VertexLabel::Aux(_) => "aux",
            VertexLabel::V0 => "v0",
            VertexLabel::PairVertex(_) => "pairvertex",
        }
    }

    pub fn index(self) -> Option<usize> {
        match self {
            VertexLabel::X(i)
            | VertexLabel::XBar(i)
            | VertexLabel::U(i)
            | VertexLabel::Aux(i)
            | VertexLabel::PairVertex(i) => Some(i),
            VertexLabel::V0 => None,
        }
    }

    pub fn from_parts(kind: &str, index: Option<usize>) -> Option<Self> {
        Some(match (kind, index) {
            ("x", Some(i)) => VertexLabel::X(i),
            ("xbar", Some(i)) => VertexLabel::XBar(i),
            ("u", Some(i)) => VertexLabel::U(i),
            ("aux", Some(i)) => VertexLabel::Aux(i),
            ("pairvertex", Some(i)) => VertexLabel::PairVertex(i),
            ("v0", None) => VertexLabel::V0,
            _ => return None,
        })
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{}({i})", self.kind()),
            None => f.write_str(self.kind()),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let s = s.trim();
        if let Some((kind, rest)) = s.split_once('(') {
            let idx = rest.strip_suffix(')').ok_or(())?.parse().map_err(|_| ())?;
            VertexLabel::from_parts(kind, Some(idx)).ok_or(())
        } else {
            VertexLabel::from_parts(s, None).ok_or(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub id: Vertex,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagEntry {
    pub edge: usize,
    pub tag: String,
    pub index: usize,
    #[serde(default)]
    pub truncated: bool,
}

/// JSON sidecar written next to reduction outputs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelFile {
    pub vertices: Vec<LabelEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub edges: Vec<TagEntry>,
}

impl LabelFile {
    pub fn from_labels<I>(labels: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, VertexLabel)>,
    {
        LabelFile {
            vertices: labels
                .into_iter()
                .map(|(id, l)| LabelEntry {
                    id,
                    kind: l.kind().to_string(),
                    index: l.index(),
                })
                .collect(),
            edges: Vec::new(),
        }
    }

    /// Collects the recognised text labels of a hypergraph.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        Self::from_labels(
            h.labels()
                .iter()
                .filter_map(|(&id, text)| text.parse().ok().map(|l| (id, l))),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("label file serializes") + "\n"
    }
}
