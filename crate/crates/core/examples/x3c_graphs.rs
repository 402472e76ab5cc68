//! One exact-cover instance, four graph problems with the same count.

use planred::oracles::{
    count_claw_partitions, count_dominating_sets, count_exact_covers, count_triangle_partitions, Budget, SizeMode,
};
use planred::setgraph::{
    x3c_to_bipartite_dominating_set, x3c_to_clique_cover, x3c_to_partition_into_claws,
    x3c_to_partition_into_triangles, SetSystem,
};

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    // two covers, and the first triple listed twice
    let s = SetSystem::from_sets(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 1, 2], &[0, 3, 4], &[1, 2, 5]])?;
    let covers = count_exact_covers(&s, &b)?.count;
    println!("exact covers: {covers}");

    let cc = x3c_to_clique_cover(&s)?;
    let g = cc.target_graph();
    println!(
        "clique cover: {} vertices, {} edges, K4-free {}",
        g.num_vertices(),
        g.num_edges(),
        !g.has_k4()
    );
    assert_eq!(g.num_vertices(), 3 * 2 + 9 * s.num_sets());

    let tri = x3c_to_partition_into_triangles(&s)?;
    let claws = x3c_to_partition_into_claws(&s)?;
    let bds = x3c_to_bipartite_dominating_set(&s)?;
    let k = bds.k().expect("bound");
    let counts = [
        count_triangle_partitions(tri.target_graph(), &b)?.count,
        count_claw_partitions(claws.target_graph(), &b)?.count,
        count_dominating_sets(bds.target_graph(), SizeMode::Exact(k), &b)?.count,
    ];
    println!("triangles {}, claws {}, bipartite dominating sets {}", counts[0], counts[1], counts[2]);
    assert!(counts.iter().all(|c| *c == covers));
    Ok(())
}

fn main() {
    run().expect("x3c graphs");
}
