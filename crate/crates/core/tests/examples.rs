//! Every example under `examples/` runs to completion.

#[allow(dead_code)]
#[path = "../examples/crossover_box.rs"]
mod crossover_box;
#[allow(dead_code)]
#[path = "../examples/planarize_3sat.rs"]
mod planarize_3sat;
#[allow(dead_code)]
#[path = "../examples/sat_chain.rs"]
mod sat_chain;
#[allow(dead_code)]
#[path = "../examples/x3c_reduction.rs"]
mod x3c_reduction;
#[allow(dead_code)]
#[path = "../examples/vertex_cover.rs"]
mod vertex_cover;
#[allow(dead_code)]
#[path = "../examples/x3c_graphs.rs"]
mod x3c_graphs;
#[allow(dead_code)]
#[path = "../examples/ambiguous_and_unique.rs"]
mod ambiguous_and_unique;
#[allow(dead_code)]
#[path = "../examples/ilp_inapproximability.rs"]
mod ilp_inapproximability;
#[allow(dead_code)]
#[path = "../examples/verify_corpus.rs"]
mod verify_corpus;

#[test]
fn crossover_box_runs() {
    crossover_box::run().unwrap();
}

#[test]
fn planarize_3sat_runs() {
    planarize_3sat::run().unwrap();
}

#[test]
fn sat_chain_runs() {
    sat_chain::run().unwrap();
}

#[test]
fn x3c_reduction_runs() {
    x3c_reduction::run().unwrap();
}

#[test]
fn vertex_cover_runs() {
    vertex_cover::run().unwrap();
}

#[test]
fn x3c_graphs_runs() {
    x3c_graphs::run().unwrap();
}

#[test]
fn ambiguous_and_unique_runs() {
    ambiguous_and_unique::run().unwrap();
}

#[test]
fn ilp_inapproximability_runs() {
    ilp_inapproximability::run().unwrap();
}

#[test]
fn verify_corpus_runs() {
    verify_corpus::run().unwrap();
}
