//! Exact solution counters. These are the ground truth for every declared
//! count relation, so they never approximate: exceeding a budget is an error.

mod ilp;
pub mod kuratowski;
pub mod naive;
mod partition;
mod report;
pub mod sat;
mod subsets;

pub use ilp::{count_ilp_feasible, ilp_optimize};
pub use partition::{count_claw_partitions, count_exact_covers, count_triangle_partitions};
pub use report::{Budget, CountReport, SizeMode};
pub use sat::{count_ex1, count_naive, count_sat, count_under, Semantics};
pub use subsets::{
    count_dominating_sets, count_feedback_vertex_sets, count_hitting_sets, count_vertex_covers,
    min_dominating_set_size, min_feedback_vertex_set_size, min_vertex_cover_size,
};

use crate::error::{Error, Result};
use crate::reduction::{Instance, Problem};

/// Counts the solutions of `problem` on `instance` with the matching oracle.
pub fn count_instance(problem: Problem, instance: &Instance, budget: &Budget) -> Result<CountReport> {
    let mismatch = || Error::StageMismatch {
        stage: format!("count {problem}"),
        got: format!("a {} instance", instance.kind()),
    };
    match (problem, instance) {
        (Problem::Sat, Instance::Cnf(f)) => count_sat(f, budget),
        (Problem::ExactlyOne, Instance::Cnf(f)) => count_ex1(f, budget),
        (Problem::ExactCover, Instance::Sets(s)) => count_exact_covers(s, budget),
        (Problem::HittingSet(m), Instance::Sets(s)) => count_hitting_sets(s, m, budget),
        (Problem::VertexCover(m), Instance::Graph(g)) => count_vertex_covers(g, m, budget),
        (Problem::DominatingSet(m), Instance::Graph(g)) => count_dominating_sets(g, m, budget),
        (Problem::FeedbackVertexSet(m), Instance::Graph(g)) => count_feedback_vertex_sets(g, m, budget),
        (Problem::TrianglePartition, Instance::Graph(g)) => count_triangle_partitions(g, budget),
        (Problem::ClawPartition, Instance::Graph(g)) => count_claw_partitions(g, budget),
        (Problem::IlpFeasible, Instance::Ilp(i)) => count_ilp_feasible(i, budget),
        _ => Err(mismatch()),
    }
}
