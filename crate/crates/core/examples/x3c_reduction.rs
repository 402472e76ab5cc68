//! Monotone 1-in-3 SAT to exact cover by 3-sets, with a look at the clause
//! and variable gadgets in isolation.

use planred::formula::CnfFormula;
use planred::oracles::{count_ex1, count_exact_covers, Budget};
use planred::planarity::is_planar;
use planred::setgraph::{clause_gadget, mono_to_x3c, variable_gadget};

pub fn run() -> planred::Result<()> {
    let c = clause_gadget();
    for s in c.states() {
        println!("clause gadget state {:?} leaves terminal {:?} open", s, c.uncovered_groups(&s));
    }
    let v = variable_gadget(3);
    for s in v.states() {
        println!("variable gadget (r=3) state {:?} leaves {} connectors open", s, v.uncovered_groups(&s).len());
    }

    let b = Budget::default();
    let formulas: [(u32, &[&[i64]]); 3] = [
        (3, &[&[1, 2, 3]]),
        (5, &[&[1, 2, 3], &[3, 4, 5]]),
        (6, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]),
    ];
    for (n, clauses) in formulas {
        let f = CnfFormula::from_dimacs_clauses(n, clauses)?;
        let out = mono_to_x3c(&f)?;
        let s = out.target_sets();
        let (a, c) = (count_ex1(&f, &b)?.count, count_exact_covers(s, &b)?.count);
        println!(
            "{} clauses: {} elements, {} triples, ex1 {a} = covers {c}, planar {}",
            f.num_clauses(),
            s.ground_size(),
            s.num_sets(),
            is_planar(&s.incidence_graph())
        );
        assert_eq!(a, c);
    }
    Ok(())
}

fn main() {
    run().expect("x3c");
}
