//! Loopless multigraphs with stable edge identities.
//!
//! Vertices are `0..vertex_count`, edges are `0..edge_count` in insertion
//! order. A [`MultiGraph`] is immutable once built; every query is a pure
//! function of the value.

mod canon;
mod cuts;
mod format;
mod planarity;

pub use canon::{canonical_form, CanonicalCode};
pub use cuts::{find_bridges, find_edge_cuts, EdgeCut};
pub use planarity::is_planar;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    /// Builds a graph, rejecting loops and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge: id,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::Loop { edge: id, vertex: a });
            }
            incidence[a].push(id);
            incidence[b].push(id);
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident edge ids of `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn touches(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.other_end(e, v))
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == 3)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|&(a, b)| seen.insert((a.min(b), a.max(b))))
    }

    /// Same vertex count and same endpoint pair for every edge id, ignoring orientation.
    pub fn same_labeling(&self, other: &MultiGraph) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(&(a, b), &(c, d))| (a, b) == (c, d) || (a, b) == (d, c))
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.incidence[a]
            .iter()
            .filter(|&&e| self.other_end(e, a) == b)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count_without(&[]) <= 1
    }

    /// Component label for every vertex after deleting `removed` edges.
    /// Labels are assigned in order of the smallest vertex of each component.
    pub fn components_without(&self, removed: &[EdgeId]) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.vertex_count {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &e in &self.incidence[u] {
                    if removed.contains(&e) {
                        continue;
                    }
                    let w = self.other_end(e, u);
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count_without(&self, removed: &[EdgeId]) -> usize {
        self.components_without(removed)
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Deterministic 2-coloring of the vertices, side containing vertex 0 first.
    pub fn bipartition(&self) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let mut side = vec![u8::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        for root in 0..self.vertex_count {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        let (zero, one): (Vec<_>, Vec<_>) = (0..self.vertex_count).partition(|&v| side[v] == 0);
        Some((zero, one))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Relabels vertices by `perm` (old vertex `v` becomes `perm[v]`), keeping edge ids.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(Error::Internal("relabeling has the wrong length".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        MultiGraph::new(self.vertex_count, edges)
    }

    /// Same graph with the edge list permuted: new edge `i` is old edge `order[i]`.
    pub fn reorder_edges(&self, order: &[EdgeId]) -> Result<Self> {
        let edges = order.iter().map(|&e| self.edges[e]).collect();
        MultiGraph::new(self.vertex_count, edges)
    }

    pub fn check_cubic(&self) -> Result<()> {
        if self.is_cubic() {
            Ok(())
        } else {
            Err(Error::NotCubic)
        }
    }

    pub fn check_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

pub fn validate_cubic(g: &MultiGraph) -> bool {
    g.is_cubic()
}

pub fn is_bipartite(g: &MultiGraph) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    g.bipartition()
}
