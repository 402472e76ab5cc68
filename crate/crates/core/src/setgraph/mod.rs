//! Set systems, graphs and 0/1 programs reached from exactly-one formulas
//! and exact covers.

mod graphs;
mod ilp;
mod ilp_chain;
mod rotation;
mod setsystem;
mod vc;
mod x3c;

pub use graphs::{
    x3c_to_bipartite_dominating_set, x3c_to_clique_cover, x3c_to_partition_into_claws,
    x3c_to_partition_into_triangles,
};
pub use ilp::{parse_ilp, IlpInstance};
pub use ilp_chain::sat_to_ilp;
pub use setsystem::{parse_set_system, SetFileKind, SetSystem};
pub use vc::{mono_to_vertex_cover, vc_to_dominating_set, vc_to_feedback_vertex_set, vc_to_hitting_set};
pub use x3c::{clause_gadget, mono_to_x3c, variable_gadget, Gadget, CLAUSE_SETS};
