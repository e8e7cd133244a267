//! Proper edge colorings, edge-Kempe chains and single switches.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeCut, EdgeId, MultiGraph, VertexId};

pub type Color = u8;

pub const MAX_PALETTE: Color = 32;

/// Unordered pair of distinct colors, stored low first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColorPair(Color, Color);

impl ColorPair {
    pub fn new(a: Color, b: Color) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidSwitch(format!("color pair {{{a}, {b}}} repeats a color")));
        }
        Ok(ColorPair(a.min(b), a.max(b)))
    }

    pub fn low(self) -> Color {
        self.0
    }

    pub fn high(self) -> Color {
        self.1
    }

    pub fn contains(self, c: Color) -> bool {
        c == self.0 || c == self.1
    }

    /// The other color of the pair; `c` must be a member.
    pub fn swap(self, c: Color) -> Color {
        if c == self.0 {
            self.1
        } else {
            self.0
        }
    }

    /// Every pair drawn from `0..palette`, lexicographically.
    pub fn all(palette: Color) -> impl Iterator<Item = ColorPair> {
        (0..palette).flat_map(move |a| (a + 1..palette).map(move |b| ColorPair(a, b)))
    }
}

impl fmt::Display for ColorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

/// A proper edge coloring, indexed by edge id. Colors are value objects;
/// switching produces a new coloring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeColoring {
    #[serde(rename = "n")]
    palette: Color,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// Checks totality, range and properness against `g`.
    pub fn new(g: &MultiGraph, palette: Color, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != g.edge_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} edges",
                colors.len(),
                g.edge_count()
            )));
        }
        if let Some((e, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= palette) {
            return Err(Error::InvalidColoring(format!(
                "edge {e} has color {c}, palette is {palette}"
            )));
        }
        let coloring = EdgeColoring { palette, colors };
        if let Some(v) = coloring.conflict(g) {
            return Err(Error::InvalidColoring(format!("two edges at vertex {v} share a color")));
        }
        Ok(coloring)
    }

    pub(crate) fn from_raw(palette: Color, colors: Vec<Color>) -> Self {
        EdgeColoring { palette, colors }
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    /// First vertex where two incident edges share a color, if any.
    pub fn conflict(&self, g: &MultiGraph) -> Option<VertexId> {
        (0..g.vertex_count()).find(|&v| {
            let mut seen = 0u64;
            g.incident(v).iter().any(|&e| {
                let bit = 1u64 << self.colors[e];
                let dup = seen & bit != 0;
                seen |= bit;
                dup
            })
        })
    }

    pub fn is_proper(&self, g: &MultiGraph) -> bool {
        self.conflict(g).is_none()
    }

    /// Applies a color permutation everywhere: edge `e` gets `perm[c(e)]`.
    pub fn permuted(&self, perm: &[Color]) -> Self {
        EdgeColoring {
            palette: self.palette,
            colors: self.colors.iter().map(|&c| perm[usize::from(c)]).collect(),
        }
    }

    /// Parses the one-line text format (space-separated colors in edge order).
    pub fn parse_text(g: &MultiGraph, palette: Color, input: &str) -> Result<Self> {
        let colors = input
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| {
                w.parse::<Color>()
                    .map_err(|_| Error::parse(1, format!("`{w}` is not a color index")))
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeColoring::new(g, palette, colors)
    }

    pub fn to_text(&self) -> String {
        let words: Vec<String> = self.colors.iter().map(u8::to_string).collect();
        words.join(" ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }
}

/// All proper `palette`-edge-colorings of `g`, in lexicographic order of
/// their color vectors. With `fix_vertex`, the edges at that vertex are
/// pinned to colors `0, 1, 2, ...` in edge-id order.
pub fn enumerate_colorings(
    g: &MultiGraph,
    palette: Color,
    fix_vertex: Option<VertexId>,
) -> Result<Vec<EdgeColoring>> {
    let mut out = Vec::new();
    for_each_coloring(g, palette, fix_vertex, |colors| {
        out.push(EdgeColoring::from_raw(palette, colors.to_vec()));
        true
    })?;
    Ok(out)
}

/// Streams colorings in the same order as [`enumerate_colorings`]. The
/// visitor returns `false` to stop early.
pub fn for_each_coloring(
    g: &MultiGraph,
    palette: Color,
    fix_vertex: Option<VertexId>,
    mut visit: impl FnMut(&[Color]) -> bool,
) -> Result<()> {
    if palette == 0 || palette > MAX_PALETTE {
        return Err(Error::InvalidColoring(format!(
            "palette size {palette} out of range 1..={MAX_PALETTE}"
        )));
    }
    let m = g.edge_count();
    let mut colors = vec![0 as Color; m];
    let mut pinned = vec![false; m];
    let mut used = vec![0u64; g.vertex_count()];
    if let Some(v) = fix_vertex {
        if v >= g.vertex_count() {
            return Err(Error::NoSuchVertex(v));
        }
        if g.degree(v) > usize::from(palette) {
            return Ok(());
        }
        for (c, &e) in g.incident(v).iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let bit = 1u64 << c;
            if used[a] & bit != 0 || used[b] & bit != 0 {
                return Ok(());
            }
            colors[e] = c as Color;
            pinned[e] = true;
            used[a] |= bit;
            used[b] |= bit;
        }
    }
    let free: Vec<EdgeId> = (0..m).filter(|&e| !pinned[e]).collect();
    let full = (1u64 << palette) - 1;

    // Iterative backtracking over the free edges in id order.
    let mut depth = 0;
    let mut next_try = vec![0 as Color; free.len() + 1];
    loop {
        if depth == free.len() {
            if !visit(&colors) {
                return Ok(());
            }
            if depth == 0 {
                return Ok(());
            }
            depth -= 1;
            let e = free[depth];
            let (a, b) = g.endpoints(e);
            let bit = 1u64 << colors[e];
            used[a] &= !bit;
            used[b] &= !bit;
            continue;
        }
        let e = free[depth];
        let (a, b) = g.endpoints(e);
        let blocked = used[a] | used[b];
        let start = next_try[depth];
        let avail = full & !blocked & !((1u64 << start) - 1);
        if avail == 0 {
            next_try[depth] = 0;
            if depth == 0 {
                return Ok(());
            }
            depth -= 1;
            let e = free[depth];
            let (a, b) = g.endpoints(e);
            let bit = 1u64 << colors[e];
            used[a] &= !bit;
            used[b] &= !bit;
            continue;
        }
        let c = avail.trailing_zeros() as Color;
        colors[e] = c;
        used[a] |= 1 << c;
        used[b] |= 1 << c;
        next_try[depth] = c + 1;
        depth += 1;
        next_try[depth] = 0;
    }
}

/// A maximal connected two-colored edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KempeChain {
    pub pair: ColorPair,
    /// Walk order, starting at the seed edge.
    pub edges: Vec<EdgeId>,
}

impl KempeChain {
    /// Chain identity: the smallest edge id it contains.
    pub fn id(&self) -> EdgeId {
        *self.edges.iter().min().expect("chains are nonempty")
    }

    pub fn touches_vertex(&self, g: &MultiGraph, v: VertexId) -> bool {
        self.edges.iter().any(|&e| g.touches(e, v))
    }

    /// `true` when the chain closes into a cycle.
    pub fn is_cycle(&self, g: &MultiGraph, c: &EdgeColoring) -> bool {
        self.edges.iter().all(|&e| {
            let (a, b) = g.endpoints(e);
            pair_edge_at(g, c, self.pair, a, e).is_some()
                && pair_edge_at(g, c, self.pair, b, e).is_some()
        })
    }

    pub fn switch(&self) -> Switch {
        Switch {
            pair: self.pair,
            seed: self.id(),
        }
    }
}

/// The edge at `v` other than `except` whose color lies in `pair`.
fn pair_edge_at(
    g: &MultiGraph,
    c: &EdgeColoring,
    pair: ColorPair,
    v: VertexId,
    except: EdgeId,
) -> Option<EdgeId> {
    g.incident(v)
        .iter()
        .copied()
        .find(|&f| f != except && pair.contains(c.colors[f]))
}

/// The chain of `pair` through `seed`. In a proper coloring every vertex has
/// at most one edge of each color, so the chain is a path or a cycle. The
/// walk leaves the seed through its higher-numbered endpoint (so the
/// lower-numbered one comes first); for a path, the part beyond the lower
/// endpoint follows.
pub fn kempe_chain(
    g: &MultiGraph,
    c: &EdgeColoring,
    pair: ColorPair,
    seed: EdgeId,
) -> Result<KempeChain> {
    if seed >= g.edge_count() {
        return Err(Error::NoSuchEdge(seed));
    }
    if !pair.contains(c.colors[seed]) {
        return Err(Error::InvalidSwitch(format!(
            "seed edge {seed} has color {}, not in pair {{{pair}}}",
            c.colors[seed]
        )));
    }
    let (a, b) = g.endpoints(seed);
    let (low, high) = (a.min(b), a.max(b));
    let mut edges = vec![seed];
    let walk = |from: VertexId, edges: &mut Vec<EdgeId>| -> bool {
        let (mut v, mut last) = (from, seed);
        while let Some(e) = pair_edge_at(g, c, pair, v, last) {
            if e == seed {
                return true;
            }
            edges.push(e);
            v = g.other_end(e, v);
            last = e;
        }
        false
    };
    if !walk(high, &mut edges) {
        walk(low, &mut edges);
    }
    Ok(KempeChain { pair, edges })
}

/// Every chain of `pair`, ordered by chain id. They partition the edges
/// colored with either color of the pair.
pub fn all_chains(g: &MultiGraph, c: &EdgeColoring, pair: ColorPair) -> Vec<KempeChain> {
    let mut seen = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if seen[e] || !pair.contains(c.colors[e]) {
            continue;
        }
        let chain = kempe_chain(g, c, pair, e).expect("seed color is in the pair");
        for &f in &chain.edges {
            seen[f] = true;
        }
        out.push(chain);
    }
    out
}

/// A switch names a chain by its pair and any edge on it (canonically the
/// smallest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Switch {
    pub pair: ColorPair,
    pub seed: EdgeId,
}

impl Switch {
    pub fn new(pair: ColorPair, seed: EdgeId) -> Self {
        Switch { pair, seed }
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}@{}", self.pair, self.seed)
    }
}

/// Exchanges the pair's colors along the switch's chain.
pub fn apply_switch(g: &MultiGraph, c: &EdgeColoring, s: Switch) -> Result<EdgeColoring> {
    let chain = kempe_chain(g, c, s.pair, s.seed)?;
    Ok(switch_chain(c, &chain))
}

/// Switches a chain already extracted from `c`.
pub fn switch_chain(c: &EdgeColoring, chain: &KempeChain) -> EdgeColoring {
    let mut colors = c.colors.clone();
    for &e in &chain.edges {
        colors[e] = chain.pair.swap(colors[e]);
    }
    EdgeColoring {
        palette: c.palette,
        colors,
    }
}

/// Colors on the cut edges, sorted, after checking the parity lemma for
/// proper 3-edge-colorings of cubic graphs: a 2-edge cut is monochromatic
/// and a 3-edge cut uses all three colors.
pub fn cut_color_check(c: &EdgeColoring, cut: &EdgeCut) -> Result<Vec<Color>> {
    let mut colors: Vec<Color> = cut.edge_ids.iter().map(|&e| c.colors[e]).collect();
    colors.sort_unstable();
    let holds = match colors.len() {
        2 => colors[0] == colors[1],
        3 => colors[0] != colors[1] && colors[1] != colors[2],
        _ => false,
    };
    if holds {
        Ok(colors)
    } else {
        Err(Error::ParityViolation {
            cut: cut.edge_ids.clone(),
            colors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::find_edge_cuts;

    fn pair(a: Color, b: Color) -> ColorPair {
        ColorPair::new(a, b).unwrap()
    }

    /// Counts proper colorings by trying every color vector.
    fn brute_count(g: &MultiGraph, palette: Color) -> usize {
        let m = g.edge_count() as u32;
        (0..u64::from(palette).pow(m))
            .filter(|&index| {
                let mut code = index;
                let colors: Vec<Color> = (0..m)
                    .map(|_| {
                        let c = (code % u64::from(palette)) as Color;
                        code /= u64::from(palette);
                        c
                    })
                    .collect();
                EdgeColoring::from_raw(palette, colors).is_proper(g)
            })
            .count()
    }

    #[test]
    fn counts_match_examples() {
        assert_eq!(enumerate_colorings(&families::theta(), 3, None).unwrap().len(), 6);
        assert_eq!(enumerate_colorings(&families::k33(), 3, None).unwrap().len(), 12);
        assert_eq!(enumerate_colorings(&families::k33(), 3, Some(0)).unwrap().len(), 2);
        assert_eq!(enumerate_colorings(&families::k4(), 3, None).unwrap().len(), 6);
        assert_eq!(brute_count(&families::k33(), 3), 12);
        assert_eq!(brute_count(&families::k4(), 3), 6);
    }

    #[test]
    fn enumeration_is_lexicographic_and_proper() {
        let g = families::prism(4).unwrap();
        let all = enumerate_colorings(&g, 3, None).unwrap();
        assert_eq!(all.len(), brute_count(&g, 3));
        assert!(all.windows(2).all(|w| w[0].colors < w[1].colors));
        assert!(all.iter().all(|c| c.is_proper(&g)));
    }

    #[test]
    fn too_few_colors_gives_nothing() {
        assert!(enumerate_colorings(&families::k4(), 2, None).unwrap().is_empty());
        assert!(enumerate_colorings(&families::k4(), 2, Some(0)).unwrap().is_empty());
    }

    #[test]
    fn fixed_vertex_pins_incident_edges() {
        let g = families::k33();
        for c in enumerate_colorings(&g, 3, Some(4)).unwrap() {
            let at: Vec<Color> = g.incident(4).iter().map(|&e| c.color(e)).collect();
            assert_eq!(at, vec![0, 1, 2]);
        }
    }

    #[test]
    fn theta_chain_is_a_two_cycle() {
        let g = families::theta();
        let c = EdgeColoring::new(&g, 3, vec![0, 1, 2]).unwrap();
        let chain = kempe_chain(&g, &c, pair(0, 1), 0).unwrap();
        assert_eq!(chain.edges, vec![0, 1]);
        assert!(chain.is_cycle(&g, &c));
        assert_eq!(all_chains(&g, &c, pair(0, 1)).len(), 1);
    }

    #[test]
    fn k33_chains_are_hamiltonian() {
        let g = families::k33();
        for c in enumerate_colorings(&g, 3, Some(0)).unwrap() {
            for p in ColorPair::all(3) {
                let chains = all_chains(&g, &c, p);
                assert_eq!(chains.len(), 1);
                assert_eq!(chains[0].edges.len(), 6);
                // Any switch only transposes two colors globally.
                let switched = switch_chain(&c, &chains[0]);
                let mut perm = [0, 1, 2];
                perm.swap(usize::from(p.low()), usize::from(p.high()));
                assert_eq!(switched, c.permuted(&perm));
            }
        }
    }

    #[test]
    fn chain_counts_on_prisms() {
        // On six vertices every two-colored 2-factor is a Hamiltonian cycle.
        let pr3 = families::prism(3).unwrap();
        for c in enumerate_colorings(&pr3, 3, None).unwrap() {
            assert!(ColorPair::all(3).all(|p| all_chains(&pr3, &c, p).len() == 1));
        }
        // Monochromatic rungs on Pr_4 leave the two 4-cycles as separate chains.
        let pr4 = families::prism(4).unwrap();
        let mut colors = vec![0, 1, 0, 1, 0, 1, 0, 1];
        colors.extend([2; 4]);
        let c = EdgeColoring::new(&pr4, 3, colors).unwrap();
        let chains = all_chains(&pr4, &c, pair(0, 1));
        assert_eq!(chains.len(), 2);
        assert!(chains.iter().all(|ch| ch.edges.len() == 4 && ch.is_cycle(&pr4, &c)));
    }

    #[test]
    fn chain_walk_order() {
        let g = families::k4();
        let c = enumerate_colorings(&g, 3, None).unwrap().remove(0);
        let chain = kempe_chain(&g, &c, pair(0, 1), 0).unwrap();
        assert_eq!(chain.edges[0], 0);
        let (a, b) = g.endpoints(0);
        // The second edge leaves through the higher endpoint of the seed.
        assert!(g.touches(chain.edges[1], a.max(b)));
    }

    #[test]
    fn switch_examples() {
        let g = families::theta();
        let c = EdgeColoring::new(&g, 3, vec![0, 1, 2]).unwrap();
        let s = Switch::new(pair(0, 1), 0);
        let d = apply_switch(&g, &c, s).unwrap();
        assert_eq!(d.colors(), &[1, 0, 2]);
        assert_eq!(apply_switch(&g, &d, s).unwrap(), c);
        // Edge 2 is colored 2, not in {0, 1}.
        assert!(apply_switch(&g, &c, Switch::new(pair(0, 1), 2)).is_err());
    }

    #[test]
    fn invalid_colorings_are_rejected() {
        let g = families::theta();
        assert!(EdgeColoring::new(&g, 3, vec![0, 0, 1]).is_err());
        assert!(EdgeColoring::new(&g, 3, vec![0, 1]).is_err());
        assert!(EdgeColoring::new(&g, 3, vec![0, 1, 3]).is_err());
        assert!(EdgeColoring::parse_text(&g, 3, "2 0 1").is_ok());
        assert!(EdgeColoring::parse_text(&g, 3, "2 x 1").is_err());
    }

    #[test]
    fn parity_on_prism_rung_cut() {
        let g = families::prism(3).unwrap();
        let cut = EdgeCut::new(&g, &[6, 7, 8]).unwrap();
        for c in enumerate_colorings(&g, 3, None).unwrap() {
            assert_eq!(cut_color_check(&c, &cut).unwrap(), vec![0, 1, 2]);
        }
        for cut in find_edge_cuts(&g, 3, false).unwrap() {
            for c in enumerate_colorings(&g, 3, None).unwrap() {
                assert!(cut_color_check(&c, &cut).is_ok());
            }
        }
    }

    #[test]
    fn parity_violation_reported() {
        let g = families::prism(3).unwrap();
        let cut = EdgeCut::new(&g, &[6, 7, 8]).unwrap();
        // Not a proper coloring, but it exercises the reporting path.
        let bogus = EdgeColoring::from_raw(3, vec![0; 9]);
        assert!(matches!(
            cut_color_check(&bogus, &cut),
            Err(Error::ParityViolation { .. })
        ));
    }

    #[test]
    fn json_export() {
        let g = families::theta();
        let c = EdgeColoring::new(&g, 3, vec![2, 0, 1]).unwrap();
        assert_eq!(c.to_json(), r#"{"n":3,"colors":[2,0,1]}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn switching_preserves_properness_and_is_involutive(
                which in 0usize..64, p in 0usize..3, seed in 0usize..12
            ) {
                let g = families::prism(4).unwrap();
                let all = enumerate_colorings(&g, 3, None).unwrap();
                let c = &all[which % all.len()];
                let pair = ColorPair::all(3).nth(p).unwrap();
                let seed = (0..12).cycle().skip(seed).take(12)
                    .find(|&e| pair.contains(c.color(e))).unwrap();
                let s = Switch::new(pair, seed);
                let d = apply_switch(&g, c, s).unwrap();
                prop_assert!(d.is_proper(&g));
                prop_assert_eq!(&apply_switch(&g, &d, s).unwrap(), c);
                let chains = all_chains(&g, c, pair);
                let covered: usize = chains.iter().map(|ch| ch.edges.len()).sum();
                let colored = (0..12).filter(|&e| pair.contains(c.color(e))).count();
                prop_assert_eq!(covered, colored);
                for ch in &chains {
                    prop_assert!(ch.is_cycle(&g, c));
                    prop_assert_eq!(ch.edges.len() % 2, 0);
                }
            }
        }
    }
}
