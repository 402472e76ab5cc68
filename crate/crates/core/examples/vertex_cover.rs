//! Vertex cover from (x+y+z), and the three problems that follow from it
//! without changing the count.

use planred::formula::CnfFormula;
use planred::graph::LabeledGraph;
use planred::oracles::{
    count_dominating_sets, count_feedback_vertex_sets, count_hitting_sets, count_vertex_covers,
    min_dominating_set_size, min_feedback_vertex_set_size, min_vertex_cover_size, Budget, SizeMode,
};
use planred::setgraph::{mono_to_vertex_cover, vc_to_dominating_set, vc_to_feedback_vertex_set, vc_to_hitting_set};

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]])?;
    let out = mono_to_vertex_cover(&f)?;
    let g = out.target_graph();
    let k = out.k().expect("cover size");
    let at_k = count_vertex_covers(g, SizeMode::Exact(k), &b)?.count;
    println!(
        "{} vertices, {} edges, K={k}, multiplier {}, covers of size K: {at_k}, minimum {}",
        g.num_vertices(),
        g.num_edges(),
        out.multiplier,
        min_vertex_cover_size(g, &b)?
    );
    assert_eq!((k, at_k.clone()), (11, 6u32.into()));

    // a 5-cycle with a chord
    let h = LabeledGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])?;
    let k = min_vertex_cover_size(&h, &b)?;
    let covers = count_vertex_covers(&h, SizeMode::Exact(k), &b)?.count;
    let ds = vc_to_dominating_set(&h, k)?;
    let fvs = vc_to_feedback_vertex_set(&h, k)?;
    let hs = vc_to_hitting_set(&h, SizeMode::Exact(k))?;
    let (dg, fg) = (ds.target_graph(), fvs.target_graph());
    let counts = [
        count_dominating_sets(dg, SizeMode::Exact(min_dominating_set_size(dg, &b)?), &b)?.count,
        count_feedback_vertex_sets(fg, SizeMode::Exact(min_feedback_vertex_set_size(fg, &b)?), &b)?.count,
        count_hitting_sets(hs.target_sets(), SizeMode::Exact(k), &b)?.count,
    ];
    println!("min cover {k}: {covers} covers; dominating {}, feedback {}, hitting {}", counts[0], counts[1], counts[2]);
    assert!(counts.iter().all(|c| *c == covers));
    Ok(())
}

fn main() {
    run().expect("vertex cover");
}
