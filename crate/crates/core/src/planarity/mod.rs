//! Planarity testing, spine layouts of incidence graphs, and crossing
//! enumeration.

mod layout;
mod lr;

pub use layout::{
    enumerate_crossings, on_segment, orient, spine_layout, spine_layout_attempt, Crossing, Layout, Point, Q,
    MAX_ATTEMPTS, SPACING,
};
pub use lr::{is_planar, planar_embedding, Embedding};

use crate::formula::{incidence_graph, CnfFormula};

/// Planarity of a formula's incidence graph.
pub fn formula_is_planar(f: &CnfFormula) -> bool {
    is_planar(&incidence_graph(f).to_graph())
}
