//! SAT to a 0/1 program with equality constraints whose optimum is 1 if the
//! formula is satisfiable and 0 otherwise, shipped with a feasible point.

use planred::formula::CnfFormula;
use planred::oracles::{count_sat, ilp_optimize, Budget};
use planred::setgraph::sat_to_ilp;

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    let sat = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, -2]])?;
    let unsat = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]])?;
    for (name, f) in [("satisfiable", &sat), ("unsatisfiable", &unsat)] {
        let (out, point) = sat_to_ilp(f)?;
        let ilp = out.target.as_ilp().expect("ilp target");
        assert!(ilp.is_feasible(&point)?);
        let best = ilp_optimize(ilp, &b)?.optimum.expect("feasible");
        let satisfiable = count_sat(f, &b)?.count > 0u32.into();
        println!(
            "{name}: {} variables, {} constraints, optimum {best}",
            ilp.num_vars(),
            ilp.constraints().len()
        );
        assert_eq!(best, satisfiable as i64);
    }
    Ok(())
}

fn main() {
    run().expect("ilp");
}
