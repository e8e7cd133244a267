//! Canonical codes for multigraphs by partition refinement and
//! individualization.
//!
//! Every leaf of the search tree is a discrete ordered partition, i.e. a
//! relabeling of the vertices; the code is the lexicographically smallest
//! relabeled multiplicity matrix over all leaves. Refinement and target-cell
//! choice are label-equivariant, so the leaf set (and the minimum) depends
//! only on the isomorphism class. No automorphism pruning is done; at the
//! orders this crate works with the leaf count stays small.

use std::fmt;

use super::{MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

struct Search<'a> {
    n: usize,
    /// (neighbor, multiplicity), one entry per distinct neighbor.
    adj: &'a [Vec<(VertexId, u8)>],
    mult: &'a [u8],
    best: Option<Vec<u8>>,
}

pub fn canonical_form(g: &MultiGraph) -> CanonicalCode {
    let n = g.vertex_count();
    let mut mult = vec![0u8; n * n];
    for &(a, b) in g.edges() {
        mult[a * n + b] += 1;
        mult[b * n + a] += 1;
    }
    let adj: Vec<Vec<(VertexId, u8)>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&w| mult[v * n + w] > 0)
                .map(|w| (w, mult[v * n + w]))
                .collect()
        })
        .collect();
    let mut search = Search {
        n,
        adj: &adj,
        mult: &mult,
        best: None,
    };
    let start = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    search.explore(start);
    let mut code = Vec::with_capacity(2 + n * n.saturating_sub(1) / 2);
    code.extend_from_slice(&(n as u16).to_be_bytes());
    code.extend(search.best.unwrap_or_default());
    CanonicalCode(code)
}

impl Search<'_> {
    fn explore(&mut self, partition: Vec<Vec<VertexId>>) {
        let partition = self.refine(partition);
        match partition.iter().position(|cell| cell.len() > 1) {
            None => {
                let order: Vec<VertexId> = partition.iter().map(|cell| cell[0]).collect();
                let code = self.leaf_code(&order);
                if self.best.as_ref().map_or(true, |b| code < *b) {
                    self.best = Some(code);
                }
            }
            Some(target) => {
                for &v in &partition[target] {
                    let mut next = Vec::with_capacity(partition.len() + 1);
                    next.extend_from_slice(&partition[..target]);
                    next.push(vec![v]);
                    next.push(partition[target].iter().copied().filter(|&w| w != v).collect());
                    next.extend_from_slice(&partition[target + 1..]);
                    self.explore(next);
                }
            }
        }
    }

    /// Splits cells by each vertex's multiset of (cell, multiplicity) counts
    /// until the partition is equitable.
    fn refine(&self, mut partition: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
        let mut cell_of = vec![0usize; self.n];
        loop {
            for (i, cell) in partition.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next = Vec::with_capacity(partition.len());
            for cell in &partition {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, VertexId)> = cell
                    .iter()
                    .map(|&v| {
                        let mut counts: Vec<(usize, u32)> = Vec::with_capacity(self.adj[v].len());
                        for &(w, m) in &self.adj[v] {
                            let c = cell_of[w];
                            match counts.iter_mut().find(|(cc, _)| *cc == c) {
                                Some(entry) => entry.1 += u32::from(m),
                                None => counts.push((c, u32::from(m))),
                            }
                        }
                        counts.sort_unstable();
                        (counts, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == partition.len() {
                return next;
            }
            partition = next;
        }
    }

    fn leaf_code(&self, order: &[VertexId]) -> Vec<u8> {
        let n = self.n;
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(self.mult[order[i] * n + order[j]]);
            }
        }
        code
    }
}
