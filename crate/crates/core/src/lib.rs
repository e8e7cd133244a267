//! Edge-Kempe equivalence of 3-edge-colorings of cubic graphs.
//!
//! * [`graph`]: loopless multigraphs, file formats, cuts, canonical codes,
//!   planarity.
//! * [`coloring`]: proper edge colorings, Kempe chains, switches.
//! * [`kempe`]: class counting `K'(G, n)`, witnesses, sequence normalization.
//! * [`compose`]: Y and H composition and splitting of graphs and colorings.
//! * [`families`]: named graphs, families, census and searches.

pub mod coloring;
pub mod compose;
pub mod error;
pub mod families;
pub mod graph;
pub mod kempe;

pub use coloring::{
    all_chains, apply_switch, cut_color_check, enumerate_colorings, kempe_chain, switch_chain,
    Color, ColorPair, EdgeColoring, KempeChain, Switch,
};
pub use compose::{
    color_compose, color_split, compose, decompose_fully, decompose_to_3connected, h_compose,
    h_split, verify_multiplicativity, y_compose, y_split, DecompositionTree, HPlan,
    MultiplicativityReport, Plan, Split, YPlan,
};
pub use error::{Error, Result};
pub use families::{CensusFilter, FamilyKind, FamilySpec};
pub use graph::{
    canonical_form, find_edge_cuts, is_planar, validate_cubic, CanonicalCode, EdgeCut, EdgeId,
    MultiGraph, VertexId,
};
pub use kempe::{
    are_equivalent, count_classes, export_kempe_graph, normalize_switch_sequence,
    permute_colors_via_switches, ClassReport, ColorPermutation, KempeSpace, Method,
    SwitchSequence,
};
