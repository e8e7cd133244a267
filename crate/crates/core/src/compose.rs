//! Y (3-cut) and H (2-cut) composition of cubic graphs, the matching
//! splits, and the same calculus on colorings.
//!
//! Plans are kept apart from the graphs they apply to, and every layout is
//! fixed:
//!
//! * `y_compose`: vertices of `g1 - v1`, then of `g2 - v2`; edges of
//!   `g1 - v1`, then the three merged edges in plan order, then `g2 - v2`.
//! * `h_compose`: vertices of `g1`, then of `g2`; edges of `g1 - x`, then the
//!   two new edges in plan order, then `g2 - y`.
//! * Splits put the new apex vertex (Y) or new edge (H) last in each piece.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{cut_color_check, Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, find_bridges, find_edge_cuts, EdgeCut, EdgeId, MultiGraph, VertexId};
use crate::kempe::{KempeSpace, Method};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YPlan {
    pub v1: VertexId,
    pub v2: VertexId,
    /// `(x_i, y_i)`: edge `x_i` at `v1` is merged with edge `y_i` at `v2`.
    pub correspondence: [(EdgeId, EdgeId); 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPlan {
    /// Deleted edge of `g1`.
    pub x: EdgeId,
    /// Deleted edge of `g2`.
    pub y: EdgeId,
    /// `(s_1j, s_2j)`: endpoint of `x` joined to endpoint of `y`.
    pub pairing: [(VertexId, VertexId); 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Plan {
    Y(YPlan),
    H(HPlan),
}

fn check_cubic_pair(g1: &MultiGraph, g2: &MultiGraph) -> Result<()> {
    g1.check_cubic()?;
    g2.check_cubic()
}

impl YPlan {
    /// Vertex 0 of each graph, edges paired in edge-id order.
    pub fn default_for(g1: &MultiGraph, g2: &MultiGraph) -> Result<Self> {
        if g1.vertex_count() == 0 || g2.vertex_count() == 0 {
            return Err(Error::InvalidPlan("empty graph".into()));
        }
        let (a, b) = (g1.incident(0), g2.incident(0));
        if a.len() != 3 || b.len() != 3 {
            return Err(Error::NotCubic);
        }
        Ok(YPlan {
            v1: 0,
            v2: 0,
            correspondence: [(a[0], b[0]), (a[1], b[1]), (a[2], b[2])],
        })
    }

    pub fn validate(&self, g1: &MultiGraph, g2: &MultiGraph) -> Result<()> {
        for (g, v, side) in [(g1, self.v1, 0), (g2, self.v2, 1)] {
            if v >= g.vertex_count() {
                return Err(Error::InvalidPlan(format!("vertex {v} is not in graph {}", side + 1)));
            }
            if g.degree(v) != 3 {
                return Err(Error::InvalidPlan(format!("vertex {v} does not have degree 3")));
            }
            let mut listed: Vec<EdgeId> = self
                .correspondence
                .iter()
                .map(|p| if side == 0 { p.0 } else { p.1 })
                .collect();
            listed.sort_unstable();
            if listed != g.incident(v) {
                return Err(Error::InvalidPlan(format!(
                    "edges {listed:?} are not exactly the edges at vertex {v} of graph {}",
                    side + 1
                )));
            }
        }
        Ok(())
    }
}

impl HPlan {
    /// Edge 0 of each graph, endpoints paired in stored order.
    pub fn default_for(g1: &MultiGraph, g2: &MultiGraph) -> Result<Self> {
        if g1.edge_count() == 0 || g2.edge_count() == 0 {
            return Err(Error::InvalidPlan("graph without edges".into()));
        }
        let (a1, b1) = g1.endpoints(0);
        let (a2, b2) = g2.endpoints(0);
        Ok(HPlan {
            x: 0,
            y: 0,
            pairing: [(a1, a2), (b1, b2)],
        })
    }

    pub fn validate(&self, g1: &MultiGraph, g2: &MultiGraph) -> Result<()> {
        for (g, e, side) in [(g1, self.x, 0), (g2, self.y, 1)] {
            if e >= g.edge_count() {
                return Err(Error::InvalidPlan(format!("edge {e} is not in graph {}", side + 1)));
            }
            let (a, b) = g.endpoints(e);
            let (p, q) = if side == 0 {
                (self.pairing[0].0, self.pairing[1].0)
            } else {
                (self.pairing[0].1, self.pairing[1].1)
            };
            if !((p == a && q == b) || (p == b && q == a)) {
                return Err(Error::InvalidPlan(format!(
                    "pairing endpoints {p},{q} do not match edge {e} = ({a},{b}) of graph {}",
                    side + 1
                )));
            }
        }
        Ok(())
    }
}

impl Plan {
    pub fn validate(&self, g1: &MultiGraph, g2: &MultiGraph) -> Result<()> {
        match self {
            Plan::Y(p) => p.validate(g1, g2),
            Plan::H(p) => p.validate(g1, g2),
        }
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Plan::Y(_))
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Plan::Y(p) => {
                write!(f, "y {} {}", p.v1, p.v2)?;
                for (x, y) in p.correspondence {
                    write!(f, " {x}:{y}")?;
                }
                Ok(())
            }
            Plan::H(p) => {
                write!(f, "h {} {}", p.x, p.y)?;
                for (s, t) in p.pairing {
                    write!(f, " {s}:{t}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Plan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidPlan(format!("{m} in `{}`", s.trim()));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("bad number `{t}`")));
        let pair = |t: &str| -> Result<(usize, usize)> {
            let (a, b) = t.split_once(':').ok_or_else(|| bad(&format!("expected a:b, got `{t}`")))?;
            Ok((num(a)?, num(b)?))
        };
        match tokens.first().copied() {
            Some("y") if tokens.len() == 6 => Ok(Plan::Y(YPlan {
                v1: num(tokens[1])?,
                v2: num(tokens[2])?,
                correspondence: [pair(tokens[3])?, pair(tokens[4])?, pair(tokens[5])?],
            })),
            Some("h") if tokens.len() == 5 => Ok(Plan::H(HPlan {
                x: num(tokens[1])?,
                y: num(tokens[2])?,
                pairing: [pair(tokens[3])?, pair(tokens[4])?],
            })),
            Some("y") | Some("h") => Err(bad("wrong number of fields")),
            _ => Err(bad("plan must start with `y` or `h`")),
        }
    }
}

/// A composite graph and the kept edges of each input.
struct Layout {
    graph: MultiGraph,
    /// Kept edges of `g1` and `g2`, in composite order.
    kept_one: Vec<EdgeId>,
    kept_two: Vec<EdgeId>,
}

fn y_layout(g1: &MultiGraph, g2: &MultiGraph, plan: &YPlan) -> Result<Layout> {
    check_cubic_pair(g1, g2)?;
    plan.validate(g1, g2)?;
    let renumber = |g: &MultiGraph, skip: VertexId, offset: usize| -> Vec<Option<VertexId>> {
        let mut next = offset;
        (0..g.vertex_count())
            .map(|v| {
                (v != skip).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let vertex_one = renumber(g1, plan.v1, 0);
    let vertex_two = renumber(g2, plan.v2, g1.vertex_count() - 1);
    let kept_one: Vec<EdgeId> = (0..g1.edge_count()).filter(|&e| !g1.touches(e, plan.v1)).collect();
    let kept_two: Vec<EdgeId> = (0..g2.edge_count()).filter(|&e| !g2.touches(e, plan.v2)).collect();

    let mut edges = Vec::with_capacity(kept_one.len() + kept_two.len() + 3);
    let map = |m: &[Option<VertexId>], v: VertexId| m[v].expect("kept vertex");
    for &e in &kept_one {
        let (a, b) = g1.endpoints(e);
        edges.push((map(&vertex_one, a), map(&vertex_one, b)));
    }
    for &(x, y) in &plan.correspondence {
        let a = g1.other_end(x, plan.v1);
        let b = g2.other_end(y, plan.v2);
        edges.push((map(&vertex_one, a), map(&vertex_two, b)));
    }
    for &e in &kept_two {
        let (a, b) = g2.endpoints(e);
        edges.push((map(&vertex_two, a), map(&vertex_two, b)));
    }
    let graph = MultiGraph::new(g1.vertex_count() + g2.vertex_count() - 2, edges)?;
    Ok(Layout {
        graph,
        kept_one,
        kept_two,
    })
}

fn h_layout(g1: &MultiGraph, g2: &MultiGraph, plan: &HPlan) -> Result<Layout> {
    check_cubic_pair(g1, g2)?;
    plan.validate(g1, g2)?;
    let n1 = g1.vertex_count();
    let kept_one: Vec<EdgeId> = (0..g1.edge_count()).filter(|&e| e != plan.x).collect();
    let kept_two: Vec<EdgeId> = (0..g2.edge_count()).filter(|&e| e != plan.y).collect();
    let mut edges: Vec<(VertexId, VertexId)> = kept_one.iter().map(|&e| g1.endpoints(e)).collect();
    for &(s, t) in &plan.pairing {
        edges.push((s, n1 + t));
    }
    edges.extend(kept_two.iter().map(|&e| {
        let (a, b) = g2.endpoints(e);
        (n1 + a, n1 + b)
    }));
    let graph = MultiGraph::new(n1 + g2.vertex_count(), edges)?;
    Ok(Layout {
        graph,
        kept_one,
        kept_two,
    })
}

fn layout(g1: &MultiGraph, g2: &MultiGraph, plan: &Plan) -> Result<Layout> {
    match plan {
        Plan::Y(p) => y_layout(g1, g2, p),
        Plan::H(p) => h_layout(g1, g2, p),
    }
}

pub fn y_compose(g1: &MultiGraph, g2: &MultiGraph, plan: &YPlan) -> Result<MultiGraph> {
    Ok(y_layout(g1, g2, plan)?.graph)
}

pub fn h_compose(g1: &MultiGraph, g2: &MultiGraph, plan: &HPlan) -> Result<MultiGraph> {
    Ok(h_layout(g1, g2, plan)?.graph)
}

pub fn compose(g1: &MultiGraph, g2: &MultiGraph, plan: &Plan) -> Result<MultiGraph> {
    Ok(layout(g1, g2, plan)?.graph)
}

/// Edge ids of the composite that form the composition cut.
pub fn composition_cut(g1: &MultiGraph, plan: &Plan) -> Vec<EdgeId> {
    match plan {
        Plan::Y(_) => {
            let start = g1.edge_count() - 3;
            (start..start + 3).collect()
        }
        Plan::H(_) => {
            let start = g1.edge_count() - 1;
            vec![start, start + 1]
        }
    }
}

/// The two pieces of a graph cut along an edge cut, with the plan that
/// recomposes them and the index maps back to the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub g1: MultiGraph,
    pub g2: MultiGraph,
    pub plan: Plan,
    pub cut: EdgeCut,
    /// Original edge behind each edge of `g1`; apex or new edges map to cut
    /// edges.
    pub edges_one: Vec<EdgeId>,
    pub edges_two: Vec<EdgeId>,
    /// Original vertex behind each vertex of the recomposed graph.
    pub vertex_origin: Vec<VertexId>,
    /// Original edge behind each edge of the recomposed graph.
    pub edge_origin: Vec<EdgeId>,
}

impl Split {
    /// Moves a coloring of the recomposed graph back onto the original
    /// edge ids.
    pub fn pull_back(&self, c: &EdgeColoring) -> EdgeColoring {
        let mut colors = vec![0; c.colors().len()];
        for (i, &e) in self.edge_origin.iter().enumerate() {
            colors[e] = c.color(i);
        }
        EdgeColoring::from_raw(c.palette(), colors)
    }

    /// Relabels the recomposed graph onto the original vertex and edge ids.
    pub fn pull_back_graph(&self, composite: &MultiGraph) -> Result<MultiGraph> {
        let mut edges = vec![(0, 0); composite.edge_count()];
        for (i, &e) in self.edge_origin.iter().enumerate() {
            let (a, b) = composite.endpoints(i);
            edges[e] = (self.vertex_origin[a], self.vertex_origin[b]);
        }
        MultiGraph::new(composite.vertex_count(), edges)
    }
}

struct SideLocal {
    index: Vec<Option<VertexId>>,
    inner: Vec<EdgeId>,
}

fn side_local(g: &MultiGraph, side: &[VertexId]) -> SideLocal {
    let mut index = vec![None; g.vertex_count()];
    for (i, &v) in side.iter().enumerate() {
        index[v] = Some(i);
    }
    let inner = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            index[a].is_some() && index[b].is_some()
        })
        .collect();
    SideLocal { index, inner }
}

fn piece(g: &MultiGraph, side: &SideLocal, size: usize, extra: &[(VertexId, VertexId)], extra_vertices: usize) -> Result<MultiGraph> {
    let mut edges: Vec<(VertexId, VertexId)> = side
        .inner
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (side.index[a].unwrap(), side.index[b].unwrap())
        })
        .collect();
    edges.extend_from_slice(extra);
    MultiGraph::new(size + extra_vertices, edges)
}

fn split_origins(cut: &EdgeCut, one: &SideLocal, two: &SideLocal) -> (Vec<VertexId>, Vec<EdgeId>) {
    let vertex_origin = cut.side_one.iter().chain(&cut.side_two).copied().collect();
    let edge_origin = one.inner.iter().chain(&cut.edge_ids).chain(&two.inner).copied().collect();
    (vertex_origin, edge_origin)
}

/// Splits a cubic graph over a 3-edge cut; each side gains an apex joined to
/// its three cut endpoints.
pub fn y_split(g: &MultiGraph, cut: &EdgeCut) -> Result<Split> {
    g.check_cubic()?;
    if cut.size() != 3 {
        return Err(Error::InvalidCut("a Y split needs a 3-edge cut".into()));
    }
    let cut = EdgeCut::new(g, &cut.edge_ids)?;
    let one = side_local(g, &cut.side_one);
    let two = side_local(g, &cut.side_two);
    let (n1, n2) = (cut.side_one.len(), cut.side_two.len());
    let mut apex_one = Vec::new();
    let mut apex_two = Vec::new();
    for &e in &cut.edge_ids {
        let (a, b) = cut.oriented(g, e);
        apex_one.push((one.index[a].unwrap(), n1));
        apex_two.push((two.index[b].unwrap(), n2));
    }
    let g1 = piece(g, &one, n1, &apex_one, 1)?;
    let g2 = piece(g, &two, n2, &apex_two, 1)?;
    let (m1, m2) = (one.inner.len(), two.inner.len());
    let plan = Plan::Y(YPlan {
        v1: n1,
        v2: n2,
        correspondence: [(m1, m2), (m1 + 1, m2 + 1), (m1 + 2, m2 + 2)],
    });
    let edges_one = one.inner.iter().chain(&cut.edge_ids).copied().collect();
    let edges_two = two.inner.iter().chain(&cut.edge_ids).copied().collect();
    let (vertex_origin, edge_origin) = split_origins(&cut, &one, &two);
    Ok(Split {
        g1,
        g2,
        plan,
        cut,
        edges_one,
        edges_two,
        vertex_origin,
        edge_origin,
    })
}

/// Splits a cubic graph over a 2-edge cut with independent edges; each side
/// gains one edge joining its two cut endpoints.
pub fn h_split(g: &MultiGraph, cut: &EdgeCut) -> Result<Split> {
    g.check_cubic()?;
    if cut.size() != 2 {
        return Err(Error::InvalidCut("an H split needs a 2-edge cut".into()));
    }
    let cut = EdgeCut::new(g, &cut.edge_ids)?;
    if !cut.nontrivial {
        return Err(Error::InvalidCut("the two cut edges share a vertex".into()));
    }
    let one = side_local(g, &cut.side_one);
    let two = side_local(g, &cut.side_two);
    let (a0, b0) = cut.oriented(g, cut.edge_ids[0]);
    let (a1, b1) = cut.oriented(g, cut.edge_ids[1]);
    let (a0, a1) = (one.index[a0].unwrap(), one.index[a1].unwrap());
    let (b0, b1) = (two.index[b0].unwrap(), two.index[b1].unwrap());
    let g1 = piece(g, &one, cut.side_one.len(), &[(a0, a1)], 0)?;
    let g2 = piece(g, &two, cut.side_two.len(), &[(b0, b1)], 0)?;
    let plan = Plan::H(HPlan {
        x: one.inner.len(),
        y: two.inner.len(),
        pairing: [(a0, b0), (a1, b1)],
    });
    let edges_one = one.inner.iter().chain(&cut.edge_ids[..1]).copied().collect();
    let edges_two = two.inner.iter().chain(&cut.edge_ids[..1]).copied().collect();
    let (vertex_origin, edge_origin) = split_origins(&cut, &one, &two);
    Ok(Split {
        g1,
        g2,
        plan,
        cut,
        edges_one,
        edges_two,
        vertex_origin,
        edge_origin,
    })
}

/// Y split for 3-edge cuts, H split for 2-edge cuts.
pub fn split(g: &MultiGraph, cut: &EdgeCut) -> Result<Split> {
    match cut.size() {
        3 => y_split(g, cut),
        2 => h_split(g, cut),
        k => Err(Error::InvalidCut(format!("cannot split over a {k}-edge cut"))),
    }
}

/// Glues a 3-edge-coloring `c` of `g1` and `d` of `g2` into a coloring of
/// the composite. Side one keeps `c`; side two is recolored by the color
/// permutation that makes it agree with `c` on the cut.
pub fn color_compose(
    g1: &MultiGraph,
    g2: &MultiGraph,
    plan: &Plan,
    c: &EdgeColoring,
    d: &EdgeColoring,
) -> Result<EdgeColoring> {
    for (g, col, name) in [(g1, c, "first"), (g2, d, "second")] {
        if col.palette() != 3 || !col.is_proper(g) {
            return Err(Error::InvalidColoring(format!(
                "{name} coloring is not a proper 3-edge-coloring of its graph"
            )));
        }
    }
    let lay = layout(g1, g2, plan)?;
    let mut rho: [Color; 3] = [0, 1, 2];
    let bridge: Vec<Color> = match plan {
        Plan::Y(p) => {
            for &(x, y) in &p.correspondence {
                rho[usize::from(d.color(y))] = c.color(x);
            }
            p.correspondence.iter().map(|&(x, _)| c.color(x)).collect()
        }
        Plan::H(p) => {
            let (cx, dy) = (c.color(p.x), d.color(p.y));
            rho.swap(usize::from(cx), usize::from(dy));
            vec![cx, cx]
        }
    };
    let mut colors: Vec<Color> = lay.kept_one.iter().map(|&e| c.color(e)).collect();
    colors.extend(bridge);
    colors.extend(lay.kept_two.iter().map(|&e| rho[usize::from(d.color(e))]));
    EdgeColoring::new(&lay.graph, 3, colors)
}

/// Restricts a proper 3-edge-coloring of the split graph to both pieces.
pub fn color_split(split: &Split, f: &EdgeColoring) -> Result<(EdgeColoring, EdgeColoring)> {
    if f.palette() != 3 || f.colors().len() != split.edge_origin.len() {
        return Err(Error::InvalidColoring("coloring does not match the split graph".into()));
    }
    cut_color_check(f, &split.cut)?;
    let restrict = |g: &MultiGraph, map: &[EdgeId]| {
        EdgeColoring::new(g, 3, map.iter().map(|&e| f.color(e)).collect())
    };
    Ok((restrict(&split.g1, &split.edges_one)?, restrict(&split.g2, &split.edges_two)?))
}

/// Outcome of checking `K'(composite) = K'(g1) K'(g2)` and the class
/// bijection given by composing representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub plan: String,
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub product_holds: bool,
    pub bijection_holds: bool,
    /// First failing representative pair, if any.
    pub counterexample: Option<String>,
}

impl MultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.product_holds && self.bijection_holds
    }
}

pub fn verify_multiplicativity(g1: &MultiGraph, g2: &MultiGraph, plan: &Plan) -> Result<MultiplicativityReport> {
    let composite = compose(g1, g2, plan)?;
    let (s1, (s2, s)) = rayon::join(
        || KempeSpace::build(g1, 3, Method::FixedVertex),
        || {
            rayon::join(
                || KempeSpace::build(g2, 3, Method::FixedVertex),
                || KempeSpace::build(&composite, 3, Method::FixedVertex),
            )
        },
    );
    let (s1, s2, s) = (s1?, s2?, s?);
    let (r1, r2) = (s1.report().representatives, s2.report().representatives);
    let (a, b, k) = (r1.len(), r2.len(), s.class_count());

    let mut hit = vec![None; k];
    let mut counterexample = None;
    for (i, c) in r1.iter().enumerate() {
        for (j, d) in r2.iter().enumerate() {
            let f = color_compose(g1, g2, plan, c, d)?;
            let class = s.class_of(&f)?;
            if let Some((pi, pj)) = hit[class] {
                counterexample.get_or_insert_with(|| {
                    format!(
                        "representative pairs ({pi},{pj}) and ({i},{j}) compose into the same class {class}: {}",
                        f.to_text()
                    )
                });
            } else {
                hit[class] = Some((i, j));
            }
        }
    }
    if counterexample.is_none() {
        if let Some(missed) = hit.iter().position(Option::is_none) {
            counterexample = Some(format!("class {missed} of the composite is not reached"));
        }
    }
    Ok(MultiplicativityReport {
        plan: plan.to_string(),
        a,
        b,
        k,
        product_holds: k == a * b,
        bijection_holds: counterexample.is_none(),
        counterexample,
    })
}

/// A recursive split of a graph into pieces without the chosen kind of
/// nontrivial cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub graph: MultiGraph,
    pub node: DecompositionNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionNode {
    Leaf,
    Split {
        cut: EdgeCut,
        plan: Plan,
        /// Original vertex and edge ids behind the recomposed children.
        vertex_origin: Vec<VertexId>,
        edge_origin: Vec<EdgeId>,
        children: Box<[DecompositionTree; 2]>,
    },
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&MultiGraph> {
        match &self.node {
            DecompositionNode::Leaf => vec![&self.graph],
            DecompositionNode::Split { children, .. } => {
                let mut out = children[0].leaves();
                out.extend(children[1].leaves());
                out
            }
        }
    }

    /// Leaf canonical codes in hex, sorted.
    pub fn leaf_codes(&self) -> Vec<String> {
        let mut codes: Vec<String> = self.leaves().iter().map(|g| canonical_form(g).to_hex()).collect();
        codes.sort();
        codes
    }

    /// Rebuilds the root graph from the leaves, following the recorded plans.
    pub fn recompose(&self) -> Result<MultiGraph> {
        match &self.node {
            DecompositionNode::Leaf => Ok(self.graph.clone()),
            DecompositionNode::Split {
                plan,
                vertex_origin,
                edge_origin,
                children,
                ..
            } => {
                let g1 = children[0].recompose()?;
                let g2 = children[1].recompose()?;
                let composite = compose(&g1, &g2, plan)?;
                let mut edges = vec![(0, 0); composite.edge_count()];
                for (i, &e) in edge_origin.iter().enumerate() {
                    let (a, b) = composite.endpoints(i);
                    edges[e] = (vertex_origin[a], vertex_origin[b]);
                }
                MultiGraph::new(composite.vertex_count(), edges)
            }
        }
    }

    pub fn to_json_value(&self) -> Value {
        let edges: Vec<[VertexId; 2]> = self.graph.edges().iter().map(|&(a, b)| [a, b]).collect();
        let mut obj = json!({
            "vertices": self.graph.vertex_count(),
            "edges": edges,
            "code": canonical_form(&self.graph).to_hex(),
        });
        if let DecompositionNode::Split { cut, plan, children, .. } = &self.node {
            obj["cut"] = json!(cut.edge_ids);
            obj["plan"] = json!(plan.to_string());
            obj["children"] = json!([children[0].to_json_value(), children[1].to_json_value()]);
        } else {
            obj["leaf"] = json!(true);
        }
        obj
    }

    pub fn to_json(&self) -> String {
        let leaves = self.leaf_codes();
        serde_json::to_string_pretty(&json!({ "tree": self.to_json_value(), "leaves": leaves }))
            .expect("tree serializes")
    }
}

fn decompose(g: &MultiGraph, with_three_cuts: bool) -> Result<DecompositionTree> {
    g.check_cubic()?;
    g.check_connected()?;
    if let Some(&e) = find_bridges(g).first() {
        return Err(Error::Bridge(e));
    }
    let mut cut = find_edge_cuts(g, 2, true)?.into_iter().next();
    if cut.is_none() && with_three_cuts {
        cut = find_edge_cuts(g, 3, true)?.into_iter().next();
    }
    let Some(cut) = cut else {
        return Ok(DecompositionTree {
            graph: g.clone(),
            node: DecompositionNode::Leaf,
        });
    };
    let s = split(g, &cut)?;
    let left = decompose(&s.g1, with_three_cuts)?;
    let right = decompose(&s.g2, with_three_cuts)?;
    Ok(DecompositionTree {
        graph: g.clone(),
        node: DecompositionNode::Split {
            cut: s.cut,
            plan: s.plan,
            vertex_origin: s.vertex_origin,
            edge_origin: s.edge_origin,
            children: Box::new([left, right]),
        },
    })
}

/// H-splits along the lexicographically least nontrivial 2-edge cut until no
/// piece has one. Leaves are 3-edge-connected.
pub fn decompose_to_3connected(g: &MultiGraph) -> Result<DecompositionTree> {
    decompose(g, false)
}

/// As [`decompose_to_3connected`], then Y-splits leaves along their least
/// nontrivial 3-edge cut as well.
pub fn decompose_fully(g: &MultiGraph) -> Result<DecompositionTree> {
    decompose(g, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{all_chains, enumerate_colorings, ColorPair};
    use crate::families;
    use crate::graph::{is_planar, validate_cubic};
    use crate::kempe::count_classes;

    fn code(g: &MultiGraph) -> String {
        canonical_form(g).to_hex()
    }

    fn theta_h_theta() -> MultiGraph {
        let t = families::theta();
        h_compose(&t, &t, &HPlan::default_for(&t, &t).unwrap()).unwrap()
    }

    fn k_prime(g: &MultiGraph) -> usize {
        count_classes(g, 3, Method::FixedVertex).unwrap().class_count
    }

    #[test]
    fn y_compose_sizes_and_shapes() {
        let k33 = families::k33();
        let g = y_compose(&k33, &k33, &YPlan::default_for(&k33, &k33).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(validate_cubic(&g));

        let k4 = families::k4();
        let pr = y_compose(&k4, &k4, &YPlan::default_for(&k4, &k4).unwrap()).unwrap();
        assert_eq!(code(&pr), code(&families::prism(3).unwrap()));

        let t = families::theta();
        let tt = y_compose(&t, &t, &YPlan::default_for(&t, &t).unwrap()).unwrap();
        assert_eq!(code(&tt), code(&t));
    }

    #[test]
    fn y_merged_edges_form_a_cut() {
        let k33 = families::k33();
        let plan = Plan::Y(YPlan::default_for(&k33, &k33).unwrap());
        let g = compose(&k33, &k33, &plan).unwrap();
        let cut = composition_cut(&k33, &plan);
        assert_eq!(g.component_count_without(&cut), 2);
        assert!(EdgeCut::new(&g, &cut).unwrap().nontrivial);
    }

    #[test]
    fn h_compose_sizes_and_cut() {
        let g = theta_h_theta();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        let cuts = find_edge_cuts(&g, 2, true).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].edge_ids, vec![2, 3]);

        let pr4 = families::prism(4).unwrap();
        let k33 = families::k33();
        let h = h_compose(&pr4, &k33, &HPlan::default_for(&pr4, &k33).unwrap()).unwrap();
        assert_eq!(h.vertex_count(), 8 + 6);
        assert!(validate_cubic(&h));
    }

    #[test]
    fn plan_validation() {
        let k33 = families::k33();
        let mut p = YPlan::default_for(&k33, &k33).unwrap();
        p.correspondence[0].0 = 8;
        assert!(matches!(y_compose(&k33, &k33, &p), Err(Error::InvalidPlan(_))));
        let mut h = HPlan::default_for(&k33, &k33).unwrap();
        h.pairing[0].0 = 5;
        assert!(matches!(h_compose(&k33, &k33, &h), Err(Error::InvalidPlan(_))));
        h = HPlan::default_for(&k33, &k33).unwrap();
        h.x = 99;
        assert!(matches!(h_compose(&k33, &k33, &h), Err(Error::InvalidPlan(_))));
        let path = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(compose(&path, &k33, &Plan::H(h)), Err(Error::NotCubic));
    }

    #[test]
    fn plan_text_round_trip() {
        for text in ["y 0 5 0:3 1:4 2:5", "h 3 0 1:2 0:3"] {
            let plan: Plan = text.parse().unwrap();
            assert_eq!(plan.to_string(), text);
        }
        assert!("y 0 1 0:1".parse::<Plan>().is_err());
        assert!("q 0 1".parse::<Plan>().is_err());
        assert!("h 0 0 1-2 0:3".parse::<Plan>().is_err());
    }

    #[test]
    fn y_split_prism_gives_two_k4() {
        let pr3 = families::prism(3).unwrap();
        let cut = EdgeCut::new(&pr3, &[6, 7, 8]).unwrap();
        let s = y_split(&pr3, &cut).unwrap();
        assert_eq!(code(&s.g1), code(&families::k4()));
        assert_eq!(code(&s.g2), code(&families::k4()));
        let back = compose(&s.g1, &s.g2, &s.plan).unwrap();
        assert_eq!(s.pull_back_graph(&back).unwrap(), pr3);
    }

    #[test]
    fn trivial_y_split_gives_graph_and_theta() {
        let g = families::k33();
        let cut = EdgeCut::new(&g, g.incident(4)).unwrap();
        assert!(!cut.nontrivial);
        let s = y_split(&g, &cut).unwrap();
        let codes = [code(&s.g1), code(&s.g2)];
        assert!(codes.contains(&code(&g)));
        assert!(codes.contains(&code(&families::theta())));
    }

    #[test]
    fn h_split_round_trips() {
        let g = theta_h_theta();
        let cut = find_edge_cuts(&g, 2, true).unwrap().remove(0);
        let s = h_split(&g, &cut).unwrap();
        assert_eq!(code(&s.g1), code(&families::theta()));
        assert_eq!(code(&s.g2), code(&families::theta()));
        let back = compose(&s.g1, &s.g2, &s.plan).unwrap();
        assert_eq!(s.pull_back_graph(&back).unwrap(), g);

        let k33 = families::k33();
        let pr4 = families::prism(4).unwrap();
        let plan = HPlan {
            x: 5,
            y: 2,
            pairing: [(pr4.endpoints(5).1, k33.endpoints(2).0), (pr4.endpoints(5).0, k33.endpoints(2).1)],
        };
        let g = h_compose(&pr4, &k33, &plan).unwrap();
        let cut = EdgeCut::new(&g, &composition_cut(&pr4, &Plan::H(plan))).unwrap();
        let s = h_split(&g, &cut).unwrap();
        assert_eq!(code(&s.g1), code(&pr4));
        assert_eq!(code(&s.g2), code(&k33));
    }

    #[test]
    fn h_split_rejects_adjacent_cut_edges() {
        let ring = MultiGraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)]).unwrap();
        let cut = EdgeCut::new(&ring, &[2, 5]).unwrap();
        assert!(cut.nontrivial);
        assert!(h_split(&ring, &cut).is_ok());
        // Vertex 2 sits next to a bridge; its other two edges form a cut.
        let bridged = MultiGraph::new(
            6,
            vec![(0, 1), (0, 1), (0, 2), (2, 1), (3, 4), (3, 4), (3, 5), (5, 4), (2, 5)],
        )
        .unwrap();
        let cut = EdgeCut::new(&bridged, &[2, 3]).unwrap();
        assert!(!cut.nontrivial);
        assert!(matches!(h_split(&bridged, &cut), Err(Error::InvalidCut(_))));
        let pr3 = families::prism(3).unwrap();
        let cut = EdgeCut::new(&pr3, &[6, 7, 8]).unwrap();
        assert!(h_split(&pr3, &cut).is_err());
    }

    #[test]
    fn h_split_keeps_bipartite_sides() {
        let k33 = families::k33();
        let g = h_compose(&k33, &k33, &HPlan::default_for(&k33, &k33).unwrap()).unwrap();
        assert!(g.is_bipartite());
        let cut = find_edge_cuts(&g, 2, true).unwrap().remove(0);
        let s = h_split(&g, &cut).unwrap();
        assert!(s.g1.is_bipartite() && s.g2.is_bipartite());
    }

    #[test]
    fn color_compose_y_k33() {
        let k33 = families::k33();
        let plan = Plan::Y(YPlan::default_for(&k33, &k33).unwrap());
        let g = compose(&k33, &k33, &plan).unwrap();
        let reps = count_classes(&k33, 3, Method::FixedVertex).unwrap().representatives;
        for c in &reps {
            for d in &reps {
                let f = color_compose(&k33, &k33, &plan, c, d).unwrap();
                assert!(f.is_proper(&g));
                // Side one keeps c: its kept edges come first, in order.
                let kept: Vec<EdgeId> = (0..9).filter(|&e| !k33.touches(e, 0)).collect();
                for (i, &e) in kept.iter().enumerate() {
                    assert_eq!(f.color(i), c.color(e));
                }
            }
        }
    }

    #[test]
    fn color_compose_h_equal_colors_keeps_d() {
        let t = families::theta();
        let plan = Plan::H(HPlan::default_for(&t, &t).unwrap());
        let c = EdgeColoring::new(&t, 3, vec![1, 0, 2]).unwrap();
        let d = EdgeColoring::new(&t, 3, vec![1, 2, 0]).unwrap();
        let f = color_compose(&t, &t, &plan, &c, &d).unwrap();
        assert_eq!(f.colors(), &[0, 2, 1, 1, 2, 0]);
    }

    #[test]
    fn color_compose_k4_into_prism_is_proper() {
        let k4 = families::k4();
        let all = enumerate_colorings(&k4, 3, None).unwrap();
        let (a, b) = (k4.incident(1), k4.incident(3));
        let plans = [
            Plan::Y(YPlan::default_for(&k4, &k4).unwrap()),
            Plan::Y(YPlan {
                v1: 1,
                v2: 3,
                correspondence: [(a[0], b[1]), (a[1], b[2]), (a[2], b[0])],
            }),
        ];
        for plan in &plans {
            let g = compose(&k4, &k4, plan).unwrap();
            assert_eq!(code(&g), code(&families::prism(3).unwrap()));
            for c in &all {
                for d in &all {
                    assert!(color_compose(&k4, &k4, plan, c, d).unwrap().is_proper(&g));
                }
            }
        }
    }

    #[test]
    fn color_split_over_prism_rungs() {
        let pr3 = families::prism(3).unwrap();
        let s = y_split(&pr3, &EdgeCut::new(&pr3, &[6, 7, 8]).unwrap()).unwrap();
        for f in enumerate_colorings(&pr3, 3, None).unwrap() {
            let (c1, c2) = color_split(&s, &f).unwrap();
            assert!(c1.is_proper(&s.g1) && c2.is_proper(&s.g2));
            let back = color_compose(&s.g1, &s.g2, &s.plan, &c1, &c2).unwrap();
            assert_eq!(s.pull_back(&back), f);
        }
    }

    #[test]
    fn color_split_over_two_cut() {
        let g = theta_h_theta();
        let s = h_split(&g, &find_edge_cuts(&g, 2, true).unwrap().remove(0)).unwrap();
        for f in enumerate_colorings(&g, 3, None).unwrap() {
            let (c1, c2) = color_split(&s, &f).unwrap();
            let shared = f.color(s.cut.edge_ids[0]);
            assert_eq!(c1.color(s.g1.edge_count() - 1), shared);
            assert_eq!(c2.color(s.g2.edge_count() - 1), shared);
            let back = color_compose(&s.g1, &s.g2, &s.plan, &c1, &c2).unwrap();
            assert_eq!(s.pull_back(&back), f);
        }
    }

    #[test]
    fn chains_cross_cuts_in_pairs() {
        let k33 = families::k33();
        let plan = Plan::Y(YPlan::default_for(&k33, &k33).unwrap());
        let g = compose(&k33, &k33, &plan).unwrap();
        let cut = composition_cut(&k33, &plan);
        for f in enumerate_colorings(&g, 3, Some(0)).unwrap() {
            for pair in ColorPair::all(3) {
                for chain in all_chains(&g, &f, pair) {
                    let crossing = chain.edges.iter().filter(|e| cut.contains(e)).count();
                    assert!(crossing == 0 || crossing == 2, "chain crosses {crossing} times");
                }
            }
        }
    }

    #[test]
    fn multiplicativity_examples() {
        let k33 = families::k33();
        let pr4 = families::prism(4).unwrap();
        let k4 = families::k4();
        let cases = [
            (&k33, &k33, 4),
            (&k33, &pr4, 2),
            (&k4, &k4, 1),
        ];
        for (g1, g2, expected) in cases {
            let plan = Plan::Y(YPlan::default_for(g1, g2).unwrap());
            let r = verify_multiplicativity(g1, g2, &plan).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.k, expected);
            let plan = Plan::H(HPlan::default_for(g1, g2).unwrap());
            let r = verify_multiplicativity(g1, g2, &plan).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.k, expected);
        }
    }

    #[test]
    fn composition_preserves_planarity_and_bipartiteness() {
        let pieces = [families::k4(), families::k33(), families::prism(3).unwrap(), families::prism(4).unwrap()];
        for g1 in &pieces {
            for g2 in &pieces {
                for plan in [
                    Plan::Y(YPlan::default_for(g1, g2).unwrap()),
                    Plan::H(HPlan::default_for(g1, g2).unwrap()),
                ] {
                    let g = compose(g1, g2, &plan).unwrap();
                    assert_eq!(is_planar(&g), is_planar(g1) && is_planar(g2));
                    assert_eq!(g.is_bipartite(), g1.is_bipartite() && g2.is_bipartite());
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let t = families::theta();
        let g = theta_h_theta();
        let tree = decompose_to_3connected(&g).unwrap();
        assert_eq!(tree.leaves().len(), 2);
        assert!(tree.leaf_codes().iter().all(|c| *c == code(&t)));
        assert!(tree.recompose().unwrap().same_labeling(&g));

        let k33 = families::k33();
        let tree = decompose_to_3connected(&k33).unwrap();
        assert_eq!(tree.node, DecompositionNode::Leaf);

        let g3 = h_compose(&g, &t, &HPlan::default_for(&g, &t).unwrap()).unwrap();
        let tree = decompose_to_3connected(&g3).unwrap();
        assert_eq!(tree.leaves().len(), 3);
        assert!(tree.leaf_codes().iter().all(|c| *c == code(&t)));
        assert!(tree.recompose().unwrap().same_labeling(&g3));
    }

    #[test]
    fn decomposition_rejects_bridges() {
        let g = MultiGraph::new(
            6,
            vec![(0, 1), (0, 1), (0, 2), (2, 1), (3, 4), (3, 4), (3, 5), (5, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(decompose_to_3connected(&g).unwrap_err(), Error::Bridge(8));
    }

    #[test]
    fn full_decomposition_multiplies() {
        let k33 = families::k33();
        let pr4 = families::prism(4).unwrap();
        let g = y_compose(&k33, &pr4, &YPlan::default_for(&k33, &pr4).unwrap()).unwrap();
        let tree = decompose_fully(&g).unwrap();
        assert!(tree.leaves().len() >= 2);
        let product: usize = tree.leaves().iter().map(|l| k_prime(l)).product();
        assert_eq!(product, k_prime(&g));
        assert!(tree.recompose().unwrap().same_labeling(&g));
    }

    #[test]
    fn tree_json() {
        let tree = decompose_to_3connected(&theta_h_theta()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&tree.to_json()).unwrap();
        assert_eq!(v["leaves"].as_array().unwrap().len(), 2);
        assert_eq!(v["tree"]["children"].as_array().unwrap().len(), 2);
        assert_eq!(v["tree"]["plan"].as_str().unwrap().chars().next(), Some('h'));
    }
}
