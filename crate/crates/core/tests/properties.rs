//! Property tests: pruned counters against plain enumeration, and the
//! structural invariants every reduction must keep.

use num_bigint::BigUint;
use proptest::prelude::*;

use planred::formula::{emit_dimacs, parse_dimacs, Assignment, CnfFormula};
use planred::graph::LabeledGraph;
use planred::harness::{cases, corpus_of, verify_reduction, Source};
use planred::oracles::kuratowski::has_kuratowski_subdivision;
use planred::oracles::{self, naive, Budget, Semantics, SizeMode};
use planred::planarity::{formula_is_planar, is_planar};
use planred::reduction::Solution;
use planred::sat::{planarize_reduction, to_ex3sat};
use planred::setgraph::{vc_to_hitting_set, SetSystem};

fn b() -> Budget {
    Budget::default()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Formulas over at most `max_vars` variables with clauses of 1 to 3
/// distinct variables.
fn formula(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = CnfFormula> {
    (3..=max_vars).prop_flat_map(move |n| {
        let clause = proptest::sample::subsequence((1..=n as i64).collect::<Vec<_>>(), 1..=3)
            .prop_flat_map(|vars| {
                let k = vars.len();
                (Just(vars), proptest::collection::vec(any::<bool>(), k))
            })
            .prop_map(|(vars, signs)| {
                vars.iter().zip(signs).map(|(&v, s)| if s { v } else { -v }).collect::<Vec<i64>>()
            });
        proptest::collection::vec(clause, 0..=max_clauses).prop_map(move |cs| {
            let refs: Vec<&[i64]> = cs.iter().map(Vec::as_slice).collect();
            CnfFormula::from_dimacs_clauses(n, &refs).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect();
            LabeledGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn modes(n: usize) -> Vec<SizeMode> {
    (0..=n).flat_map(|k| [SizeMode::Exact(k), SizeMode::AtMost(k)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dpll_matches_enumeration(f in formula(10, 12)) {
        for sem in [Semantics::Sat, Semantics::ExactlyOne] {
            let fast = oracles::count_under(&f, sem, &[], &b()).unwrap().count;
            let slow = oracles::count_naive(&f, sem, &b()).unwrap().count;
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn exactly_one_never_exceeds_sat(f in formula(10, 12)) {
        let ex1 = oracles::count_ex1(&f, &b()).unwrap().count;
        let sat = oracles::count_sat(&f, &b()).unwrap().count;
        prop_assert!(ex1 <= sat);
    }

    #[test]
    fn enumerated_models_satisfy(f in formula(8, 8)) {
        let r = oracles::count_sat(&f, &Budget::enumerating(64)).unwrap();
        for m in &r.enumerated {
            let mut v = Assignment::all(f.num_vars(), false);
            for &x in m {
                v.set(x as u32, true);
            }
            prop_assert!(f.evaluate(&v).unwrap());
        }
    }

    #[test]
    fn dimacs_round_trips(f in formula(9, 10)) {
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn subset_counters_match_enumeration(g in graph(8)) {
        for mode in modes(g.num_vertices()) {
            prop_assert_eq!(
                oracles::count_vertex_covers(&g, mode, &b()).unwrap().count,
                big(naive::vertex_covers(&g, mode).unwrap())
            );
            prop_assert_eq!(
                oracles::count_dominating_sets(&g, mode, &b()).unwrap().count,
                big(naive::dominating_sets(&g, mode).unwrap())
            );
            prop_assert_eq!(
                oracles::count_feedback_vertex_sets(&g, mode, &b()).unwrap().count,
                big(naive::feedback_vertex_sets(&g, mode).unwrap())
            );
        }
    }

    #[test]
    fn hitting_sets_equal_vertex_covers(g in graph(8)) {
        for mode in modes(g.num_vertices()) {
            let hs = vc_to_hitting_set(&g, mode).unwrap();
            prop_assert_eq!(
                oracles::count_hitting_sets(hs.target_sets(), mode, &b()).unwrap().count,
                oracles::count_vertex_covers(&g, mode, &b()).unwrap().count
            );
        }
    }

    #[test]
    fn triangle_partitions_match_enumeration(g in graph(9).prop_filter("3 | n", |g| g.num_vertices() % 3 == 0)) {
        let slow = naive::triangle_partitions(&g);
        prop_assume!(slow.is_ok(), "too many triangles to enumerate families");
        prop_assert_eq!(oracles::count_triangle_partitions(&g, &b()).unwrap().count, big(slow.unwrap()));
    }

    #[test]
    fn exact_covers_match_enumeration(p in 1usize..=3, picks in proptest::collection::vec(0usize..84, 1..10)) {
        // triples of 0..3p chosen by index into the lexicographic list
        let n = 3 * p;
        let triples: Vec<[usize; 3]> = (0..n)
            .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
            .collect();
        let chosen: Vec<[usize; 3]> = picks.iter().map(|&i| triples[i % triples.len()]).collect();
        let refs: Vec<&[usize]> = chosen.iter().map(|t| t.as_slice()).collect();
        let s = SetSystem::from_sets(n, &refs).unwrap();
        prop_assert_eq!(
            oracles::count_exact_covers(&s, &b()).unwrap().count,
            big(naive::exact_covers(&s).unwrap())
        );
    }

    #[test]
    fn planarity_agrees_with_kuratowski_search(g in graph(8)) {
        prop_assert_eq!(is_planar(&g), !has_kuratowski_subdivision(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn padding_lifts_every_model(f in formula(6, 5)) {
        prop_assume!(f.clauses().iter().all(|c| !c.is_empty()));
        let out = to_ex3sat(&f).unwrap();
        let t = out.target_cnf();
        prop_assert!(t.clauses().iter().all(|c| c.len() == 3));
        let r = oracles::count_sat(&f, &Budget::enumerating(16)).unwrap();
        prop_assert_eq!(oracles::count_sat(t, &b()).unwrap().count, r.count);
        for m in &r.enumerated {
            let mut v = Assignment::all(f.num_vars(), false);
            for &x in m {
                v.set(x as u32, true);
            }
            for s in out.lifter.lift(&Solution::Assignment(v)).unwrap() {
                let Solution::Assignment(w) = s else { panic!("assignment expected") };
                prop_assert!(t.evaluate(&w).unwrap());
            }
        }
    }

    #[test]
    fn planarize_keeps_count_and_is_planar(f in formula(6, 5)) {
        let out = planarize_reduction(&f).unwrap();
        let t = out.target_cnf();
        prop_assert!(formula_is_planar(t));
        prop_assert_eq!(
            oracles::count_sat(t, &b()).unwrap().count,
            oracles::count_sat(&f, &b()).unwrap().count
        );
    }

    #[test]
    fn verdicts_are_reproducible(seed in 0u64..10_000) {
        let corpus = || corpus_of(vec![
            cases("to_1ex3sat", 2, seed, Some((1, 0)), |i| Source::Cnf { n: 4 + i as u32, m: 3, mix: planred::formula::ArityMix::MIXED }),
            cases("mono_to_x3c", 2, seed, Some((1, 0)), |_| Source::Monotone { n: 5, m: 2 }),
        ]);
        let strip = |v: Vec<planred::harness::Verdict>| v.into_iter().map(|x| x.to_text()).collect::<Vec<_>>();
        prop_assert_eq!(strip(verify_reduction(&corpus(), None)), strip(verify_reduction(&corpus(), None)));
    }
}
