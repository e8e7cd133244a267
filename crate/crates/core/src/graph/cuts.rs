use serde::Serialize;

use super::{EdgeId, MultiGraph, VertexId};
use crate::error::{Error, Result};

/// A 2- or 3-edge cut separating the graph into exactly two sides, with every
/// cut edge running between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeCut {
    /// Sorted ascending.
    pub edge_ids: Vec<EdgeId>,
    /// The side containing vertex 0. Sorted.
    pub side_one: Vec<VertexId>,
    pub side_two: Vec<VertexId>,
    pub nontrivial: bool,
}

impl EdgeCut {
    /// Validates `edges` as a cut of `g` and packages its sides.
    pub fn new(g: &MultiGraph, edges: &[EdgeId]) -> Result<Self> {
        let mut edge_ids = edges.to_vec();
        edge_ids.sort_unstable();
        edge_ids.dedup();
        if edge_ids.len() != edges.len() {
            return Err(Error::InvalidCut("repeated edge".into()));
        }
        if let Some(&e) = edge_ids.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::NoSuchEdge(e));
        }
        Self::try_build(g, edge_ids)
            .ok_or_else(|| Error::InvalidCut(format!("{edges:?} does not split the graph in two")))
    }

    fn try_build(g: &MultiGraph, edge_ids: Vec<EdgeId>) -> Option<Self> {
        let labels = g.components_without(&edge_ids);
        if labels.iter().any(|&l| l > 1) || labels.iter().all(|&l| l == 0) {
            return None;
        }
        if edge_ids.iter().any(|&e| {
            let (a, b) = g.endpoints(e);
            labels[a] == labels[b]
        }) {
            return None;
        }
        let (side_one, side_two): (Vec<_>, Vec<_>) =
            (0..g.vertex_count()).partition(|&v| labels[v] == 0);
        let nontrivial = match edge_ids.len() {
            3 => side_one.len() >= 2 && side_two.len() >= 2,
            2 => {
                let (a0, b0) = g.endpoints(edge_ids[0]);
                let (a1, b1) = g.endpoints(edge_ids[1]);
                a0 != a1 && a0 != b1 && b0 != a1 && b0 != b1
            }
            _ => false,
        };
        Some(EdgeCut {
            edge_ids,
            side_one,
            side_two,
            nontrivial,
        })
    }

    pub fn size(&self) -> usize {
        self.edge_ids.len()
    }

    /// `true` when `v` is on side one.
    pub fn on_side_one(&self, v: VertexId) -> bool {
        self.side_one.binary_search(&v).is_ok()
    }

    /// Endpoint of cut edge `e` on side one, then on side two.
    pub fn oriented(&self, g: &MultiGraph, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = g.endpoints(e);
        if self.on_side_one(a) {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// All cuts of `size` edges in lexicographic order of their sorted edge ids.
pub fn find_edge_cuts(g: &MultiGraph, size: usize, nontrivial_only: bool) -> Result<Vec<EdgeCut>> {
    if !(2..=3).contains(&size) {
        return Err(Error::InvalidCut(format!("cut size must be 2 or 3, got {size}")));
    }
    g.check_connected()?;
    let m = g.edge_count();
    let mut out = Vec::new();
    let mut keep = |ids: Vec<EdgeId>| {
        if let Some(cut) = EdgeCut::try_build(g, ids) {
            if cut.nontrivial || !nontrivial_only {
                out.push(cut);
            }
        }
    };
    for a in 0..m {
        for b in a + 1..m {
            if size == 2 {
                keep(vec![a, b]);
            } else {
                for c in b + 1..m {
                    keep(vec![a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

/// Edges whose removal disconnects the graph, ascending.
pub fn find_bridges(g: &MultiGraph) -> Vec<EdgeId> {
    let base = g.component_count_without(&[]);
    (0..g.edge_count())
        .filter(|&e| g.component_count_without(&[e]) > base)
        .collect()
}
