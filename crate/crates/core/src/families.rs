//! Named cubic graphs, parametrized families, a small census of connected
//! cubic graphs, and searches over it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use crate::compose::{y_compose, YPlan};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, find_edge_cuts, is_planar, CanonicalCode, EdgeId, MultiGraph};
use crate::kempe::{count_classes, Method};

/// Largest order the census will generate.
pub const CENSUS_LIMIT: usize = 14;

pub fn theta() -> MultiGraph {
    MultiGraph::new(2, vec![(0, 1); 3]).expect("valid")
}

pub fn k4() -> MultiGraph {
    MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid")
}

/// Parts `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> MultiGraph {
    let edges = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
    MultiGraph::new(6, edges).expect("valid")
}

fn require(k: usize, min: usize, name: &str) -> Result<()> {
    if k < min {
        return Err(Error::InvalidFamily(format!("{name} needs k >= {min}, got {k}")));
    }
    Ok(())
}

/// Cycle `0..2k` plus chords `i, i+k`.
pub fn moebius_ladder(k: usize) -> Result<MultiGraph> {
    require(k, 3, "moebius_ladder")?;
    let n = 2 * k;
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..k).map(|i| (i, i + k)));
    MultiGraph::new(n, edges)
}

/// Cycles `u_i = i` and `w_i = k + i`, rungs `u_i w_i`.
pub fn prism(k: usize) -> Result<MultiGraph> {
    require(k, 3, "prism")?;
    let mut edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    edges.extend((0..k).map(|i| (k + i, k + (i + 1) % k)));
    edges.extend((0..k).map(|i| (i, k + i)));
    MultiGraph::new(2 * k, edges)
}

/// Cycles `u_i = i` and `w_i = 2k + i` of length `2k`; for even `i`, spokes
/// `u_i w_{i+1}` and `u_{i+1} w_i`.
pub fn crossed_prism(k: usize) -> Result<MultiGraph> {
    require(k, 2, "crossed_prism")?;
    let m = 2 * k;
    let mut edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    edges.extend((0..m).map(|i| (m + i, m + (i + 1) % m)));
    for i in (0..m).step_by(2) {
        edges.push((i, m + i + 1));
        edges.push((i + 1, m + i));
    }
    MultiGraph::new(2 * m, edges)
}

/// `base Y base Y ... Y base` (`k` copies), folded from the left with the
/// default plan.
pub fn y_power_of(base: &MultiGraph, k: usize) -> Result<MultiGraph> {
    require(k, 1, "y_power")?;
    let mut acc = base.clone();
    for _ in 1..k {
        acc = y_compose(&acc, base, &YPlan::default_for(&acc, base)?)?;
    }
    Ok(acc)
}

pub fn y_power_k33(k: usize) -> Result<MultiGraph> {
    y_power_of(&k33(), k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    K33,
    K4,
    Theta,
    MoebiusLadder,
    Prism,
    CrossedPrism,
    YPowerK33,
    YPowerOf,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::K33,
        FamilyKind::K4,
        FamilyKind::Theta,
        FamilyKind::MoebiusLadder,
        FamilyKind::Prism,
        FamilyKind::CrossedPrism,
        FamilyKind::YPowerK33,
        FamilyKind::YPowerOf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::K33 => "k33",
            FamilyKind::K4 => "k4",
            FamilyKind::Theta => "theta",
            FamilyKind::MoebiusLadder => "moebius_ladder",
            FamilyKind::Prism => "prism",
            FamilyKind::CrossedPrism => "crossed_prism",
            FamilyKind::YPowerK33 => "y_power_k33",
            FamilyKind::YPowerOf => "y_power_of",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "ml" | "mobius_ladder" => FamilyKind::MoebiusLadder,
            "pr" => FamilyKind::Prism,
            "cpr" => FamilyKind::CrossedPrism,
            _ => *FamilyKind::ALL
                .iter()
                .find(|k| k.name() == s)
                .ok_or_else(|| Error::InvalidFamily(format!("unknown family `{s}`")))?,
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub k: usize,
    /// Required by `YPowerOf` only.
    pub base: Option<MultiGraph>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, k: usize) -> Self {
        FamilySpec { kind, k, base: None }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<MultiGraph> {
    match spec.kind {
        FamilyKind::K33 => Ok(k33()),
        FamilyKind::K4 => Ok(k4()),
        FamilyKind::Theta => Ok(theta()),
        FamilyKind::MoebiusLadder => moebius_ladder(spec.k),
        FamilyKind::Prism => prism(spec.k),
        FamilyKind::CrossedPrism => crossed_prism(spec.k),
        FamilyKind::YPowerK33 => y_power_k33(spec.k),
        FamilyKind::YPowerOf => {
            let base = spec
                .base
                .as_ref()
                .ok_or_else(|| Error::InvalidFamily("y_power_of needs a base graph".into()))?;
            base.check_cubic()?;
            y_power_of(base, spec.k)
        }
    }
}

const ONE_CLASS_WITNESS: &str = include_str!("../data/one_class_12.txt");

/// A simple bipartite nonplanar cubic graph on 12 vertices with a single
/// edge-Kempe class, found by [`search_one_class`] and stored with the crate.
pub fn one_class_witness() -> MultiGraph {
    MultiGraph::parse_text(ONE_CLASS_WITNESS).expect("stored witness parses")
}

/// Which census graphs to keep. `None` means either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusFilter {
    /// Keep multigraphs too.
    pub multigraphs: bool,
    pub bipartite: Option<bool>,
    pub planar: Option<bool>,
}

impl CensusFilter {
    pub fn simple() -> Self {
        CensusFilter::default()
    }

    pub fn matches(&self, g: &MultiGraph) -> bool {
        (self.multigraphs || g.is_simple())
            && self.bipartite.map_or(true, |b| g.is_bipartite() == b)
            && self.planar.map_or(true, |p| is_planar(g) == p)
    }
}

/// Subdivides `e` and `f` (twice if equal) and joins the two new vertices.
fn insert_edge(g: &MultiGraph, e: EdgeId, f: EdgeId) -> MultiGraph {
    let (s, t) = (g.vertex_count(), g.vertex_count() + 1);
    let mut edges: Vec<_> = Vec::with_capacity(g.edge_count() + 3);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if i == e && i == f {
            edges.extend([(a, s), (s, t), (t, b)]);
        } else if i == e {
            edges.extend([(a, s), (s, b)]);
        } else if i == f {
            edges.extend([(a, t), (t, b)]);
        } else {
            edges.push((a, b));
        }
    }
    edges.push((s, t));
    MultiGraph::new(g.vertex_count() + 2, edges).expect("insertion keeps the graph loopless")
}

/// Subdivides edge `e`; the new vertex (last) has degree 2.
fn subdivide(g: &MultiGraph, e: EdgeId) -> MultiGraph {
    let s = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let (a, b) = edges[e];
    edges[e] = (a, s);
    edges.push((s, b));
    MultiGraph::new(s + 1, edges).expect("subdivision keeps the graph loopless")
}

/// Hangs a new root `s` off `root` through a digon: `s = a`, `a - root`.
fn digon_head(p: &MultiGraph, root: usize) -> MultiGraph {
    let (s, a) = (p.vertex_count(), p.vertex_count() + 1);
    let mut edges = p.edges().to_vec();
    edges.extend([(s, a), (s, a), (a, root)]);
    MultiGraph::new(s + 2, edges).expect("valid")
}

fn root_of(p: &MultiGraph) -> usize {
    (0..p.vertex_count()).find(|&v| p.degree(v) == 2).expect("pendant pieces have a root")
}

/// Joins the roots of two pendant pieces by a bridge.
fn bridge_join(p: &MultiGraph, q: &MultiGraph) -> MultiGraph {
    let offset = p.vertex_count();
    let mut edges = p.edges().to_vec();
    edges.extend(q.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
    edges.push((root_of(p), offset + root_of(q)));
    MultiGraph::new(offset + q.vertex_count(), edges).expect("valid")
}

/// Keeps the first graph for each canonical code, ordered by code.
fn dedup(graphs: impl IntoParallelIterator<Item = MultiGraph>) -> Vec<MultiGraph> {
    let coded: Vec<(CanonicalCode, MultiGraph)> = graphs
        .into_par_iter()
        .map(|g| (canonical_form(&g), g))
        .collect();
    let mut unique: BTreeMap<CanonicalCode, MultiGraph> = BTreeMap::new();
    for (code, g) in coded {
        unique.entry(code).or_insert(g);
    }
    unique.into_values().collect()
}

/// Every connected loopless cubic multigraph on `n` vertices for even `n` in
/// `2..=max_n`, one per isomorphism class, ordered by canonical code within
/// each order.
///
/// Bridgeless graphs of order `n + 2` arise from order `n` by edge
/// insertion (subdivide two edges, or one edge twice, and join the new
/// vertices). Graphs with a bridge are two pendant pieces (connected, one
/// vertex of degree 2, the rest cubic) joined at their roots; a pendant
/// piece is a smaller census graph with one edge subdivided, or a smaller
/// pendant piece behind a digon.
pub fn census_levels(max_n: usize) -> Result<Vec<Vec<MultiGraph>>> {
    if max_n > CENSUS_LIMIT {
        return Err(Error::CensusTooLarge {
            requested: max_n,
            limit: CENSUS_LIMIT,
        });
    }
    let mut levels: Vec<Vec<MultiGraph>> = Vec::new();
    // pendant[i] holds pieces on 2i + 3 vertices.
    let mut pendant: Vec<Vec<MultiGraph>> = Vec::new();
    let mut n = 2;
    while n <= max_n {
        let level = if n == 2 {
            vec![theta()]
        } else {
            let previous = levels.last().expect("smaller order present");
            let mut candidates: Vec<MultiGraph> = previous
                .par_iter()
                .flat_map_iter(|g| {
                    let m = g.edge_count();
                    (0..m).flat_map(move |e| (e..m).map(move |f| insert_edge(g, e, f)))
                })
                .collect();
            for (i, p) in pendant.iter().enumerate() {
                let Some(j) = ((n - 2) / 2).checked_sub(i + 2) else {
                    continue;
                };
                if j < i || j >= pendant.len() {
                    continue;
                }
                for a in p {
                    for b in &pendant[j] {
                        candidates.push(bridge_join(a, b));
                    }
                }
            }
            dedup(candidates)
        };
        let mut pieces: Vec<MultiGraph> = level
            .iter()
            .flat_map(|g| (0..g.edge_count()).map(move |e| subdivide(g, e)))
            .collect();
        if let Some(smaller) = pendant.last() {
            pieces.extend(smaller.iter().map(|p| digon_head(p, root_of(p))));
        }
        pendant.push(dedup(pieces));
        levels.push(level);
        n += 2;
    }
    Ok(levels)
}

/// Connected cubic graphs of order up to `max_n` matching `filter`, ordered
/// by order and then canonical code.
pub fn census(max_n: usize, filter: &CensusFilter) -> Result<Vec<MultiGraph>> {
    Ok(census_levels(max_n)?
        .into_iter()
        .flatten()
        .filter(|g| filter.matches(g))
        .collect())
}

/// No bridge and no 2-edge cut at all.
pub fn is_three_edge_connected(g: &MultiGraph) -> bool {
    g.is_connected()
        && (0..g.edge_count()).all(|e| g.component_count_without(&[e]) == 1)
        && find_edge_cuts(g, 2, false).map_or(false, |c| c.is_empty())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OneClassRequirements {
    pub nonplanar: bool,
    pub bipartite: bool,
    pub simple: bool,
    pub three_connected: bool,
}

/// Census graphs of order exactly `n` meeting `require` with `K'(G, 3) = 1`.
pub fn search_one_class(n: usize, require: &OneClassRequirements) -> Result<Vec<MultiGraph>> {
    let filter = CensusFilter {
        multigraphs: !require.simple,
        bipartite: require.bipartite.then_some(true),
        planar: require.nonplanar.then_some(false),
    };
    let candidates: Vec<MultiGraph> = census(n, &filter)?
        .into_iter()
        .filter(|g| g.vertex_count() == n)
        .filter(|g| !require.three_connected || is_three_edge_connected(g))
        .collect();
    let keep = candidates
        .par_iter()
        .map(|g| Ok(count_classes(g, 3, Method::FixedVertex)?.class_count == 1))
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect())
}

/// Observed `K'(G, 3)` values with the first witness in census order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub max_n: usize,
    pub graphs_examined: usize,
    /// Value to (first witness, number of graphs with that value).
    pub values: BTreeMap<usize, (MultiGraph, usize)>,
}

impl Spectrum {
    pub fn to_json(&self) -> String {
        let values: Vec<_> = self
            .values
            .iter()
            .map(|(k, (g, count))| {
                json!({
                    "k_prime": k,
                    "count": count,
                    "vertices": g.vertex_count(),
                    "code": canonical_form(g).to_hex(),
                    "graph": g.to_text(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&json!({
            "max_n": self.max_n,
            "graphs_examined": self.graphs_examined,
            "values": values,
        }))
        .expect("spectrum serializes")
    }
}

pub fn kprime_spectrum(max_n: usize, filter: &CensusFilter) -> Result<Spectrum> {
    let graphs = census(max_n, filter)?;
    let counts = graphs
        .par_iter()
        .map(|g| Ok(count_classes(g, 3, Method::FixedVertex)?.class_count))
        .collect::<Result<Vec<usize>>>()?;
    let mut values: BTreeMap<usize, (MultiGraph, usize)> = BTreeMap::new();
    for (g, k) in graphs.iter().zip(&counts) {
        values.entry(*k).or_insert_with(|| (g.clone(), 0)).1 += 1;
    }
    Ok(Spectrum {
        max_n,
        graphs_examined: graphs.len(),
        values,
    })
}
