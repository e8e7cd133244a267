//! The edge-Kempe state space: equivalence classes, witnesses, global color
//! permutations realized by switches, and switch-sequence normalization
//! around a vertex.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{
    all_chains, for_each_coloring, kempe_chain, switch_chain, Color, ColorPair, EdgeColoring,
    Switch,
};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, MultiGraph, VertexId};

/// Largest number of colorings any state-space search will hold.
pub const STATE_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Every proper coloring.
    Raw,
    /// Colorings with the edges at vertex 0 pinned to `0, 1, 2, ...`; only
    /// switches avoiding vertex 0 are followed.
    #[default]
    FixedVertex,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Method::Raw),
            "fixed" | "fixed-vertex" => Ok(Method::FixedVertex),
            other => Err(Error::parse(0, format!("unknown method `{other}`"))),
        }
    }
}

/// A permutation of `0..n` acting on colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorPermutation(Vec<Color>);

impl ColorPermutation {
    pub fn new(images: Vec<Color>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &c in &images {
            let slot = seen
                .get_mut(usize::from(c))
                .ok_or_else(|| Error::InvalidColoring(format!("{images:?} is not a permutation")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidColoring(format!("{images:?} is not a permutation")));
            }
        }
        Ok(ColorPermutation(images))
    }

    pub fn identity(n: Color) -> Self {
        ColorPermutation((0..n).collect())
    }

    pub fn transposition(n: Color, pair: ColorPair) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(usize::from(pair.low()), usize::from(pair.high()));
        p
    }

    pub fn image(&self, c: Color) -> Color {
        self.0[usize::from(c)]
    }

    pub fn images(&self) -> &[Color] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &c)| usize::from(c) == i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Self) -> Self {
        ColorPermutation(other.0.iter().map(|&c| self.image(c)).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            inv[usize::from(c)] = i as Color;
        }
        ColorPermutation(inv)
    }

    pub fn map_pair(&self, pair: ColorPair) -> ColorPair {
        ColorPair::new(self.image(pair.low()), self.image(pair.high()))
            .expect("permutations keep distinct colors distinct")
    }

    /// Transposition factors, to be applied left to right.
    pub fn transpositions(&self) -> Vec<ColorPair> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut x = usize::from(self.0[start]);
            while x != start {
                seen[x] = true;
                out.push(ColorPair::new(start as Color, x as Color).expect("distinct"));
                x = usize::from(self.0[x]);
            }
        }
        out
    }
}

/// A start coloring and the switches applied to it in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchSequence {
    pub start: EdgeColoring,
    pub steps: Vec<Switch>,
}

impl SwitchSequence {
    pub fn empty(start: EdgeColoring) -> Self {
        SwitchSequence {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every coloring along the sequence, start included.
    pub fn replay(&self, g: &MultiGraph) -> Result<Vec<EdgeColoring>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start.clone());
        for &s in &self.steps {
            let cur = out.last().expect("nonempty");
            let chain = kempe_chain(g, cur, s.pair, s.seed)?;
            out.push(switch_chain(cur, &chain));
        }
        Ok(out)
    }

    pub fn end(&self, g: &MultiGraph) -> Result<EdgeColoring> {
        let mut cur = self.start.clone();
        for &s in &self.steps {
            let chain = kempe_chain(g, &cur, s.pair, s.seed)?;
            cur = switch_chain(&cur, &chain);
        }
        Ok(cur)
    }
}

impl fmt::Display for SwitchSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps.iter().map(Switch::to_string).collect();
        write!(f, "{} : [{}]", self.start.to_text(), steps.join(", "))
    }
}

/// The class structure of a coloring space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub class_count: usize,
    /// Lexicographically least coloring of each class, in increasing order.
    pub representatives: Vec<EdgeColoring>,
    pub class_sizes: Vec<usize>,
    pub method: Method,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    graph: String,
    n: Color,
    k_prime: usize,
    class_sizes: &'a [usize],
    representatives: Vec<&'a [Color]>,
}

impl ClassReport {
    pub fn to_json(&self, g: &MultiGraph, palette: Color) -> String {
        let json = ReportJson {
            graph: canonical_form(g).to_hex(),
            n: palette,
            k_prime: self.class_count,
            class_sizes: &self.class_sizes,
            representatives: self.representatives.iter().map(|c| c.colors()).collect(),
        };
        serde_json::to_string(&json).expect("report serializes")
    }
}

/// The switch graph over all colorings of one method, with its components.
pub struct KempeSpace<'g> {
    graph: &'g MultiGraph,
    palette: Color,
    method: Method,
    pinned: Option<VertexId>,
    colorings: Vec<Vec<Color>>,
    index: HashMap<Vec<Color>, usize>,
    neighbors: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    class_count: usize,
}

impl<'g> KempeSpace<'g> {
    pub fn build(g: &'g MultiGraph, palette: Color, method: Method) -> Result<Self> {
        let pinned = match method {
            Method::FixedVertex if g.vertex_count() > 0 => Some(0),
            _ => None,
        };
        let mut colorings = Vec::new();
        let mut overflow = false;
        for_each_coloring(g, palette, pinned, |c| {
            if colorings.len() == STATE_LIMIT {
                overflow = true;
                return false;
            }
            colorings.push(c.to_vec());
            true
        })?;
        if overflow {
            return Err(Error::StateSpaceTooLarge { limit: STATE_LIMIT });
        }
        let index: HashMap<Vec<Color>, usize> = colorings
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();

        let neighbors = colorings
            .par_iter()
            .map(|colors| {
                let c = EdgeColoring::from_raw(palette, colors.clone());
                let mut out = Vec::new();
                for pair in ColorPair::all(palette) {
                    for chain in all_chains(g, &c, pair) {
                        if pinned.is_some_and(|v| chain.touches_vertex(g, v)) {
                            continue;
                        }
                        let next = switch_chain(&c, &chain);
                        let j = *index.get(next.colors()).ok_or_else(|| {
                            Error::Internal("switch left the coloring space".into())
                        })?;
                        out.push(j);
                    }
                }
                out.sort_unstable();
                out.dedup();
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;

        // BFS from each unvisited coloring in lexicographic order, so each
        // class is numbered by (and rooted at) its least member.
        let mut class_of = vec![usize::MAX; colorings.len()];
        let mut class_count = 0;
        let mut queue = VecDeque::new();
        for root in 0..colorings.len() {
            if class_of[root] != usize::MAX {
                continue;
            }
            class_of[root] = class_count;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in &neighbors[u] {
                    if class_of[w] == usize::MAX {
                        class_of[w] = class_count;
                        queue.push_back(w);
                    }
                }
            }
            class_count += 1;
        }

        Ok(KempeSpace {
            graph: g,
            palette,
            method,
            pinned,
            colorings,
            index,
            neighbors,
            class_of,
            class_count,
        })
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn state_count(&self) -> usize {
        self.colorings.len()
    }

    pub fn pinned_vertex(&self) -> Option<VertexId> {
        self.pinned
    }

    pub fn report(&self) -> ClassReport {
        let mut representatives: Vec<Option<EdgeColoring>> = vec![None; self.class_count];
        let mut class_sizes = vec![0; self.class_count];
        for (i, &k) in self.class_of.iter().enumerate() {
            class_sizes[k] += 1;
            representatives[k]
                .get_or_insert_with(|| EdgeColoring::from_raw(self.palette, self.colorings[i].clone()));
        }
        ClassReport {
            class_count: self.class_count,
            representatives: representatives.into_iter().map(Option::unwrap).collect(),
            class_sizes,
            method: self.method,
        }
    }

    /// Class index of any proper coloring of the graph. Under the
    /// fixed-vertex method the coloring is first moved into the pinned
    /// space by a global color permutation, which keeps its class.
    pub fn class_of(&self, c: &EdgeColoring) -> Result<usize> {
        if c.palette() != self.palette || !c.is_proper(self.graph) {
            return Err(Error::InvalidColoring("coloring does not belong to this space".into()));
        }
        let normalized = match self.pinned {
            Some(v) => c.permuted(pinning_permutation(self.graph, c, v).images()),
            None => c.clone(),
        };
        self.index
            .get(normalized.colors())
            .map(|&i| self.class_of[i])
            .ok_or_else(|| Error::Internal("coloring missing from the state space".into()))
    }

    /// The switch graph in DOT, one node per coloring of this space.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph kempe {\n");
        for (i, c) in self.colorings.iter().enumerate() {
            let label: Vec<String> = c.iter().map(u8::to_string).collect();
            let _ = writeln!(
                out,
                "  c{i} [label=\"{}\", class={}];",
                label.join(" "),
                self.class_of[i]
            );
        }
        for (i, adj) in self.neighbors.iter().enumerate() {
            for &j in adj.iter().filter(|&&j| j > i) {
                let _ = writeln!(out, "  c{i} -- c{j};");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors
            .iter()
            .enumerate()
            .map(|(i, adj)| adj.iter().filter(|&&j| j > i).count())
            .sum()
    }
}

/// The permutation sending the colors at `v` (in edge-id order) to
/// `0, 1, 2, ...`, with the remaining colors kept in increasing order.
fn pinning_permutation(g: &MultiGraph, c: &EdgeColoring, v: VertexId) -> ColorPermutation {
    let n = usize::from(c.palette());
    let mut images = vec![Color::MAX; n];
    let mut next = 0;
    for &e in g.incident(v) {
        images[usize::from(c.color(e))] = next;
        next += 1;
    }
    for slot in images.iter_mut().filter(|s| **s == Color::MAX) {
        *slot = next;
        next += 1;
    }
    ColorPermutation(images)
}

/// `K'(g, palette)` with class representatives.
pub fn count_classes(g: &MultiGraph, palette: Color, method: Method) -> Result<ClassReport> {
    Ok(KempeSpace::build(g, palette, method)?.report())
}

/// Shortest switch sequence from `c` to `d`, if they are equivalent.
pub fn are_equivalent(
    g: &MultiGraph,
    c: &EdgeColoring,
    d: &EdgeColoring,
) -> Result<Option<SwitchSequence>> {
    if c.palette() != d.palette() || c.colors().len() != d.colors().len() {
        return Err(Error::InvalidColoring("colorings of different spaces".into()));
    }
    if c == d {
        return Ok(Some(SwitchSequence::empty(c.clone())));
    }
    let mut parent: HashMap<EdgeColoring, Option<(EdgeColoring, Switch)>> = HashMap::new();
    parent.insert(c.clone(), None);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(cur) = queue.pop_front() {
        for pair in ColorPair::all(cur.palette()) {
            for chain in all_chains(g, &cur, pair) {
                let next = switch_chain(&cur, &chain);
                if parent.contains_key(&next) {
                    continue;
                }
                if parent.len() >= STATE_LIMIT {
                    return Err(Error::StateSpaceTooLarge { limit: STATE_LIMIT });
                }
                parent.insert(next.clone(), Some((cur.clone(), chain.switch())));
                if &next == d {
                    let mut steps = Vec::new();
                    let mut at = next;
                    while let Some(Some((prev, s))) = parent.get(&at) {
                        steps.push(*s);
                        at = prev.clone();
                    }
                    steps.reverse();
                    return Ok(Some(SwitchSequence {
                        start: c.clone(),
                        steps,
                    }));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Realizes the global permutation `perm` by switches: for each
/// transposition factor, every chain of that color pair is switched.
pub fn permute_colors_via_switches(
    g: &MultiGraph,
    c: &EdgeColoring,
    perm: &ColorPermutation,
) -> Result<SwitchSequence> {
    if perm.images().len() != usize::from(c.palette()) {
        return Err(Error::InvalidColoring("permutation size differs from palette".into()));
    }
    let mut steps = Vec::new();
    let mut cur = c.clone();
    for pair in perm.transpositions() {
        for chain in all_chains(g, &cur, pair) {
            steps.push(chain.switch());
            cur = switch_chain(&cur, &chain);
        }
    }
    Ok(SwitchSequence {
        start: c.clone(),
        steps,
    })
}

/// Rewrites `seq` so that no switch changes a color at `v`, tracking the
/// accumulated global permutation `σ`:
///
/// * a switch on a chain avoiding `v` is kept, with its pair renamed by `σ`;
/// * a switch on the chain through `v` is replaced by switches on every
///   other chain of that pair (possibly none), and `σ ← σ ∘ π`.
///
/// When colors missing at `v` end up permuted (palettes larger than
/// `deg(v) + 1`), switches realizing `σ⁻¹` are appended. The result ends at
/// the same coloring as `seq`.
pub fn normalize_switch_sequence(
    g: &MultiGraph,
    seq: &SwitchSequence,
    v: VertexId,
) -> Result<SwitchSequence> {
    if v >= g.vertex_count() {
        return Err(Error::NoSuchVertex(v));
    }
    let start = &seq.start;
    let end = seq.end(g)?;
    if g.incident(v).iter().any(|&e| start.color(e) != end.color(e)) {
        return Err(Error::EndpointMismatch(v));
    }

    let mut original = start.clone();
    let mut rewritten = start.clone();
    let mut sigma = ColorPermutation::identity(start.palette());
    let mut steps = Vec::new();
    for &s in &seq.steps {
        let chain = kempe_chain(g, &original, s.pair, s.seed)?;
        let renamed = sigma.map_pair(s.pair);
        if chain.touches_vertex(g, v) {
            for other in all_chains(g, &original, s.pair) {
                if other.id() == chain.id() {
                    continue;
                }
                let step = Switch::new(renamed, other.id());
                rewritten = switch_chain(&rewritten, &kempe_chain(g, &rewritten, renamed, step.seed)?);
                steps.push(step);
            }
            sigma = sigma.after(&ColorPermutation::transposition(start.palette(), s.pair));
        } else {
            let step = Switch::new(renamed, chain.id());
            rewritten = switch_chain(&rewritten, &kempe_chain(g, &rewritten, renamed, step.seed)?);
            steps.push(step);
        }
        original = switch_chain(&original, &chain);
    }
    if !sigma.is_identity() {
        let fix = permute_colors_via_switches(g, &rewritten, &sigma.inverse())?;
        rewritten = fix.end(g)?;
        steps.extend(fix.steps);
    }
    if rewritten != end {
        return Err(Error::Internal("normalized sequence missed its endpoint".into()));
    }
    Ok(SwitchSequence {
        start: start.clone(),
        steps,
    })
}

/// DOT rendering of the fixed-vertex switch graph.
pub fn export_kempe_graph(g: &MultiGraph, palette: Color) -> Result<String> {
    Ok(KempeSpace::build(g, palette, Method::FixedVertex)?.to_dot())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{apply_switch, enumerate_colorings};
    use crate::families;
    use rand::{Rng, SeedableRng};

    fn k_prime(g: &MultiGraph) -> usize {
        count_classes(g, 3, Method::FixedVertex).unwrap().class_count
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(k_prime(&families::k33()), 2);
        assert_eq!(k_prime(&families::theta()), 1);
        assert_eq!(k_prime(&families::k4()), 1);
        assert_eq!(k_prime(&families::moebius_ladder(3).unwrap()), 2);
        assert_eq!(k_prime(&families::moebius_ladder(4).unwrap()), 1);
        assert_eq!(k_prime(&families::prism(3).unwrap()), 1);
        assert_eq!(k_prime(&families::prism(4).unwrap()), 1);
        assert_eq!(k_prime(&families::crossed_prism(2).unwrap()), 1);
    }

    #[test]
    fn raw_and_fixed_agree_and_sizes_sum() {
        for g in [families::k33(), families::prism(4).unwrap(), families::theta()] {
            let raw = count_classes(&g, 3, Method::Raw).unwrap();
            let fixed = count_classes(&g, 3, Method::FixedVertex).unwrap();
            assert_eq!(raw.class_count, fixed.class_count);
            let total = enumerate_colorings(&g, 3, None).unwrap().len();
            assert_eq!(raw.class_sizes.iter().sum::<usize>(), total);
            assert_eq!(fixed.class_sizes.iter().sum::<usize>() * 6, total);
        }
    }

    #[test]
    fn four_colors_gives_one_class() {
        for g in [families::k33(), families::k4(), families::prism(3).unwrap()] {
            assert_eq!(count_classes(&g, 4, Method::FixedVertex).unwrap().class_count, 1);
        }
    }

    #[test]
    fn uncolorable_graph_reports_zero() {
        let bridged = MultiGraph::new(
            6,
            vec![(0, 1), (0, 1), (0, 2), (2, 1), (3, 4), (3, 4), (3, 5), (5, 4), (2, 5)],
        )
        .unwrap();
        let report = count_classes(&bridged, 3, Method::FixedVertex).unwrap();
        assert_eq!(report.class_count, 0);
        assert!(report.representatives.is_empty());
    }

    #[test]
    fn report_json_shape() {
        let g = families::k33();
        let json = count_classes(&g, 3, Method::FixedVertex).unwrap().to_json(&g, 3);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["k_prime"], 2);
        assert_eq!(v["n"], 3);
        assert_eq!(v["class_sizes"], serde_json::json!([1, 1]));
        assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
        assert_eq!(v["graph"], canonical_form(&g).to_hex());
    }

    #[test]
    fn equivalence_witnesses() {
        let g = families::k33();
        let reps = count_classes(&g, 3, Method::FixedVertex).unwrap().representatives;
        assert!(are_equivalent(&g, &reps[0], &reps[1]).unwrap().is_none());
        assert!(are_equivalent(&g, &reps[0], &reps[0]).unwrap().unwrap().is_empty());

        let p4 = families::prism(4).unwrap();
        let c = enumerate_colorings(&p4, 3, None).unwrap().remove(3);
        let pair = ColorPair::new(0, 2).unwrap();
        let s = all_chains(&p4, &c, pair)[0].switch();
        let d = apply_switch(&p4, &c, s).unwrap();
        let w = are_equivalent(&p4, &c, &d).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.end(&p4).unwrap(), d);
    }

    #[test]
    fn equivalence_is_symmetric_on_samples() {
        let g = families::prism(3).unwrap();
        let all = enumerate_colorings(&g, 3, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = &all[rng.gen_range(0..all.len())];
            let b = &all[rng.gen_range(0..all.len())];
            let c = &all[rng.gen_range(0..all.len())];
            let ab = are_equivalent(&g, a, b).unwrap();
            let ba = are_equivalent(&g, b, a).unwrap();
            assert_eq!(ab.is_some(), ba.is_some());
            assert_eq!(ab.as_ref().map(SwitchSequence::len), ba.as_ref().map(SwitchSequence::len));
            if let (Some(ab), Some(bc)) = (&ab, are_equivalent(&g, b, c).unwrap()) {
                assert_eq!(ab.end(&g).unwrap(), *b);
                assert_eq!(bc.end(&g).unwrap(), *c);
                assert!(are_equivalent(&g, a, c).unwrap().is_some());
            }
        }
    }

    #[test]
    fn permutation_factors() {
        let p = ColorPermutation::new(vec![1, 2, 0]).unwrap();
        let factors = p.transpositions();
        assert_eq!(factors.len(), 2);
        let mut composed = ColorPermutation::identity(3);
        for pair in factors {
            composed = ColorPermutation::transposition(3, pair).after(&composed);
        }
        assert_eq!(composed, p);
        assert!(ColorPermutation::new(vec![0, 0, 1]).is_err());
        assert!(ColorPermutation::identity(3).transpositions().is_empty());
    }

    #[test]
    fn global_permutation_via_switches() {
        let theta = families::theta();
        let c = EdgeColoring::new(&theta, 3, vec![0, 1, 2]).unwrap();
        let id = permute_colors_via_switches(&theta, &c, &ColorPermutation::identity(3)).unwrap();
        assert!(id.is_empty());
        let t = ColorPermutation::new(vec![1, 0, 2]).unwrap();
        let seq = permute_colors_via_switches(&theta, &c, &t).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.end(&theta).unwrap().colors(), &[1, 0, 2]);

        let p4 = families::prism(4).unwrap();
        let cycle = ColorPermutation::new(vec![1, 2, 0]).unwrap();
        for c in enumerate_colorings(&p4, 3, None).unwrap().iter().take(20) {
            let seq = permute_colors_via_switches(&p4, c, &cycle).unwrap();
            assert_eq!(seq.end(&p4).unwrap(), c.permuted(cycle.images()));
        }
    }

    #[test]
    fn normalization_of_theta_double_switch_is_empty() {
        let g = families::theta();
        let c = EdgeColoring::new(&g, 3, vec![0, 1, 2]).unwrap();
        let s = Switch::new(ColorPair::new(0, 1).unwrap(), 0);
        let seq = SwitchSequence {
            start: c.clone(),
            steps: vec![s, s],
        };
        let normalized = normalize_switch_sequence(&g, &seq, 0).unwrap();
        assert!(normalized.is_empty());
        assert_eq!(normalized.end(&g).unwrap(), c);
    }

    #[test]
    fn normalization_keeps_steps_away_from_v() {
        let g = families::prism(4).unwrap();
        let c = enumerate_colorings(&g, 3, None).unwrap().remove(0);
        // Find a chain avoiding vertex 0 and switch it twice.
        let chain = ColorPair::all(3)
            .flat_map(|p| all_chains(&g, &c, p))
            .find(|ch| !ch.touches_vertex(&g, 0))
            .unwrap();
        let seq = SwitchSequence {
            start: c.clone(),
            steps: vec![chain.switch(), chain.switch()],
        };
        let normalized = normalize_switch_sequence(&g, &seq, 0).unwrap();
        assert_eq!(normalized.steps, seq.steps);
    }

    #[test]
    fn normalization_rejects_mismatched_endpoints() {
        let g = families::theta();
        let c = EdgeColoring::new(&g, 3, vec![0, 1, 2]).unwrap();
        let seq = SwitchSequence {
            start: c,
            steps: vec![Switch::new(ColorPair::new(0, 1).unwrap(), 0)],
        };
        assert_eq!(normalize_switch_sequence(&g, &seq, 0), Err(Error::EndpointMismatch(0)));
    }

    #[test]
    fn normalization_with_four_colors_appends_permutation() {
        // With four colors a color absent at v can end up permuted.
        let g = families::prism(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let all = enumerate_colorings(&g, 4, None).unwrap();
        for _ in 0..50 {
            let c = all[rng.gen_range(0..all.len())].clone();
            let mut cur = c.clone();
            let mut steps = Vec::new();
            for _ in 0..6 {
                let pair = ColorPair::all(4).nth(rng.gen_range(0..6)).unwrap();
                let chains = all_chains(&g, &cur, pair);
                if chains.is_empty() {
                    continue;
                }
                let ch = &chains[rng.gen_range(0..chains.len())];
                steps.push(ch.switch());
                cur = switch_chain(&cur, ch);
            }
            // Undo any change at vertex 0 with a global permutation of the
            // colors seen there.
            let v = 0;
            let mut images: Vec<Color> = (0..4).collect();
            let mut fixed = vec![false; 4];
            for &e in g.incident(v) {
                images[usize::from(cur.color(e))] = c.color(e);
                fixed[usize::from(cur.color(e))] = true;
            }
            let mut spare: Vec<Color> = (0..4).filter(|x| !images.iter().enumerate().any(|(i, y)| fixed[i] && y == x)).collect();
            for (i, slot) in images.iter_mut().enumerate() {
                if !fixed[i] {
                    *slot = spare.remove(0);
                }
            }
            let perm = ColorPermutation::new(images).unwrap();
            let tail = permute_colors_via_switches(&g, &cur, &perm).unwrap();
            steps.extend(tail.steps);
            let seq = SwitchSequence { start: c.clone(), steps };
            let d = seq.end(&g).unwrap();
            let normalized = normalize_switch_sequence(&g, &seq, v).unwrap();
            assert_eq!(normalized.end(&g).unwrap(), d);
            for (before, after) in normalized.replay(&g).unwrap().windows(2).map(|w| (&w[0], &w[1])) {
                assert!(g.incident(v).iter().all(|&e| before.color(e) == after.color(e)));
            }
        }
    }

    #[test]
    fn dot_export() {
        let theta = export_kempe_graph(&families::theta(), 3).unwrap();
        assert_eq!(theta.matches("label=").count(), 1);
        assert!(!theta.contains("--"));

        let g = families::k33();
        let space = KempeSpace::build(&g, 3, Method::FixedVertex).unwrap();
        assert_eq!(space.state_count(), 2);
        assert_eq!(space.class_count(), 2);
        let pr4 = families::prism(4).unwrap();
        let space = KempeSpace::build(&pr4, 3, Method::FixedVertex).unwrap();
        assert_eq!(space.class_count(), 1);
        assert!(space.state_count() > 1);
        assert!(space.to_dot().contains("--"));
        assert!(space.edge_count() > 0);
    }

    #[test]
    fn class_lookup_normalizes_colors() {
        let g = families::k33();
        let space = KempeSpace::build(&g, 3, Method::FixedVertex).unwrap();
        let raw = KempeSpace::build(&g, 3, Method::Raw).unwrap();
        for c in enumerate_colorings(&g, 3, None).unwrap() {
            let a = space.class_of(&c).unwrap();
            let b = raw.class_of(&c).unwrap();
            // Class numbering may differ; the partition must not.
            for d in enumerate_colorings(&g, 3, None).unwrap() {
                assert_eq!(a == space.class_of(&d).unwrap(), b == raw.class_of(&d).unwrap());
            }
        }
    }
}
