//! Planarizing a 3CNF formula: every crossing of its spine drawing is
//! replaced by a crossover box, and the model count does not move.

use planred::crossover::lift_assignment;
use planred::formula::{Assignment, CnfFormula};
use planred::oracles::{count_sat, Budget};
use planred::planarity::formula_is_planar;
use planred::reduction::Lifter;
use planred::sat::planarize_reduction;

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    // (w+x+y)(w+y+z)(x+y+z), and a formula whose drawing crosses once
    let fig = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]])?;
    let crossed = CnfFormula::from_dimacs_clauses(4, &[&[1, 3], &[2, 4], &[1, 4], &[2, 3]])?;

    for (name, f) in [("overlapping", &fig), ("crossed", &crossed)] {
        let out = planarize_reduction(f)?;
        let t = out.target_cnf();
        let (s, c) = (count_sat(f, &b)?.count, count_sat(t, &b)?.count);
        println!(
            "{name}: {} -> {} vars, planar {} -> {}, count {s} -> {c}",
            f.num_vars(),
            t.num_vars(),
            formula_is_planar(f),
            formula_is_planar(t)
        );
        assert_eq!(s, c);
        assert!(formula_is_planar(t));

        if let Lifter::Planarize(trace) = &out.lifter {
            print!("{}", trace.to_text());
            let v = Assignment::new(vec![true, true, false, false]);
            let lifted = lift_assignment(trace, &v)?;
            assert!(t.evaluate(&lifted)?);
        }
    }
    Ok(())
}

fn main() {
    run().expect("planarize");
}
