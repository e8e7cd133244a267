use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },

    #[error("edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("no such vertex: {0}")]
    NoSuchVertex(VertexId),

    #[error("no such edge: {0}")]
    NoSuchEdge(EdgeId),

    #[error("graph is not cubic")]
    NotCubic,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has parallel edges; graph6 needs a simple graph")]
    NotSimple,

    #[error("graph has a bridge (edge {0}) and is not 3-edge-colorable")]
    Bridge(EdgeId),

    #[error("invalid edge cut: {0}")]
    InvalidCut(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid switch: {0}")]
    InvalidSwitch(String),

    #[error("invalid composition plan: {0}")]
    InvalidPlan(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("colorings disagree on the edges at vertex {0}")]
    EndpointMismatch(VertexId),

    #[error("parity lemma violated on cut {cut:?}: colors {colors:?}")]
    ParityViolation { cut: Vec<EdgeId>, colors: Vec<u8> },

    #[error("state space exceeds the limit of {limit} colorings")]
    StateSpaceTooLarge { limit: usize },

    #[error("order {requested} exceeds the census limit of {limit}")]
    CensusTooLarge { requested: usize, limit: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
