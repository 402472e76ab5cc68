use num_bigint::BigUint;
use planred::formula::CnfFormula;
use planred::graph::LabeledGraph;
use planred::oracles::*;
use planred::reduction::Solution;
use planred::setgraph::*;

fn b() -> Budget {
    Budget::default()
}

fn cnf(n: u32, cs: &[&[i64]]) -> CnfFormula {
    CnfFormula::from_dimacs_clauses(n, cs).unwrap()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn x3c_of_one_clause_has_three_covers() {
    let out = mono_to_x3c(&cnf(3, &[&[1, 2, 3]])).unwrap();
    assert_eq!(count_exact_covers(out.target_sets(), &b()).unwrap().count, big(3));
}

#[test]
fn vertex_cover_worked_example() {
    let out = mono_to_vertex_cover(&cnf(3, &[&[1, 2, 3]])).unwrap();
    let g = out.target_graph();
    assert_eq!(count_vertex_covers(g, SizeMode::Exact(11), &b()).unwrap().count, big(6));
    assert_eq!(min_vertex_cover_size(g, &b()).unwrap(), 11);

    let two = mono_to_vertex_cover(&cnf(6, &[&[1, 2, 3], &[4, 5, 6]])).unwrap();
    assert_eq!(two.k(), Some(22));
    let r = count_vertex_covers(two.target_graph(), SizeMode::Exact(22), &b()).unwrap();
    assert_eq!(r.count, big(36));
}

#[test]
fn lifted_covers_are_valid() {
    let f = cnf(5, &[&[1, 2, 3], &[3, 4, 5]]);
    let out = mono_to_vertex_cover(&f).unwrap();
    let g = out.target_graph();
    let k = out.k().unwrap();
    let all = count_vertex_covers(g, SizeMode::Exact(k), &Budget::enumerating(1000)).unwrap();
    let v = planred::formula::Assignment::new(vec![false, false, true, false, false]);
    assert!(f.evaluate_ex1(&v).unwrap());
    let lifted = out.lifter.lift(&Solution::Assignment(v)).unwrap();
    assert_eq!(lifted.len(), 4);
    for s in lifted {
        let Solution::Selection(sel) = s else { panic!() };
        assert!(all.enumerated.contains(&sel));
    }
}

#[test]
fn dominating_and_feedback_examples() {
    let k2 = LabeledGraph::from_edges(2, &[(0, 1)]).unwrap();
    let path = LabeledGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let tri = LabeledGraph::complete(3);
    for (g, min, cnt) in [(&k2, 1, 2u64), (&path, 1, 1), (&tri, 2, 3)] {
        assert_eq!(min_vertex_cover_size(g, &b()).unwrap(), min);
        let ds = vc_to_dominating_set(g, min).unwrap();
        let t = ds.target_graph();
        assert_eq!(min_dominating_set_size(t, &b()).unwrap(), min);
        assert_eq!(count_dominating_sets(t, SizeMode::Exact(min), &b()).unwrap().count, big(cnt));
        let fvs = vc_to_feedback_vertex_set(g, min).unwrap();
        let t = fvs.target_graph();
        assert_eq!(min_feedback_vertex_set_size(t, &b()).unwrap(), min);
        assert_eq!(count_feedback_vertex_sets(t, SizeMode::Exact(min), &b()).unwrap().count, big(cnt));
    }
    let hs = vc_to_hitting_set(&tri, SizeMode::AtMost(3)).unwrap();
    assert_eq!(count_hitting_sets(hs.target_sets(), SizeMode::AtMost(3), &b()).unwrap().count, big(4));
    assert_eq!(count_hitting_sets(hs.target_sets(), SizeMode::Exact(2), &b()).unwrap().count, big(3));
}

#[test]
fn x3c_graph_family_examples() {
    let one = SetSystem::from_sets(3, &[&[0, 1, 2]]).unwrap();
    let dup = SetSystem::from_sets(3, &[&[0, 1, 2], &[0, 1, 2]]).unwrap();
    let t1 = x3c_to_clique_cover(&one).unwrap();
    assert_eq!(count_triangle_partitions(t1.target_graph(), &b()).unwrap().count, big(1));
    let t2 = x3c_to_partition_into_triangles(&dup).unwrap();
    assert_eq!(count_triangle_partitions(t2.target_graph(), &b()).unwrap().count, big(2));
    let c = x3c_to_partition_into_claws(&dup).unwrap();
    assert_eq!(count_claw_partitions(c.target_graph(), &b()).unwrap().count, big(2));
    let d1 = x3c_to_bipartite_dominating_set(&one).unwrap();
    let r = count_dominating_sets(d1.target_graph(), SizeMode::Exact(2), &Budget::enumerating(5)).unwrap();
    assert_eq!(r.count, big(1));
    assert_eq!(r.enumerated, vec![vec![3, 4]]);
    let d2 = x3c_to_bipartite_dominating_set(&dup).unwrap();
    assert_eq!(count_dominating_sets(d2.target_graph(), SizeMode::Exact(3), &b()).unwrap().count, big(2));
}

#[test]
fn lifted_partitions_match_oracle_enumeration() {
    let s = SetSystem::from_sets(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 1, 3], &[2, 4, 5], &[0, 1, 2]]).unwrap();
    let covers = count_exact_covers(&s, &Budget::enumerating(10)).unwrap();
    assert_eq!(covers.count, big(3));
    let tri = x3c_to_clique_cover(&s).unwrap();
    let parts = count_triangle_partitions(tri.target_graph(), &Budget::enumerating(10)).unwrap();
    assert_eq!(parts.count, big(3));
    for c in &covers.enumerated {
        let lifted = tri.lifter.lift(&Solution::Selection(c.clone())).unwrap();
        let Solution::Partition(p) = &lifted[0] else { panic!() };
        assert_eq!(p.len(), 2 + 3 * 5);
        assert!(parts.enumerated.contains(&p.concat()));
    }
}

#[test]
fn ilp_examples() {
    for (f, opt) in [(cnf(1, &[&[1]]), 1), (cnf(1, &[&[1], &[-1]]), 0)] {
        let (out, point) = sat_to_ilp(&f).unwrap();
        let ilp = out.target.as_ilp().unwrap();
        assert!(ilp.is_feasible(&point).unwrap());
        let r = ilp_optimize(ilp, &b()).unwrap();
        assert_eq!(r.optimum, Some(opt));
        let feasible = count_ilp_feasible(ilp, &b()).unwrap().count;
        let src = count_sat(&f, &b()).unwrap().count;
        assert_eq!(feasible, out.expected_count(&src));
    }
}
