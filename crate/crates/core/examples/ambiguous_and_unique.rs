//! Instances with one known extra solution: the ambiguous builder adds a
//! model, the 1-valid builder moves it to all-true, and together they give
//! a formula that is uniquely satisfiable exactly when the source is not
//! satisfiable.

use planred::formula::{Assignment, CnfFormula};
use planred::oracles::{count_sat, Budget};
use planred::sat::{make_ambiguous_instance, make_one_valid, make_unique_one_valid};

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    let sat = CnfFormula::from_dimacs_clauses(3, &[&[1, -2], &[2, 3]])?;
    let unsat = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]])?;

    for (name, f) in [("satisfiable", &sat), ("unsatisfiable", &unsat)] {
        let n = count_sat(f, &b)?.count;
        let (amb, witness) = make_ambiguous_instance(f)?;
        let t = amb.target_cnf();
        assert!(t.evaluate(&witness)?);
        let na = count_sat(t, &b)?.count;
        let uniq = make_unique_one_valid(f)?;
        let u = uniq.target_cnf();
        let nu = count_sat(u, &b)?.count;
        println!(
            "{name}: count {n}, ambiguous {na} over {} vars, unique-1-valid {nu}, all-true ok {}",
            t.num_vars(),
            u.evaluate(&Assignment::all(u.num_vars(), true))?
        );
        assert_eq!(na, &n + 1u32);
        assert_eq!(nu == 1u32.into(), n == 0u32.into());
    }

    let v = Assignment::new(vec![true, true, false]);
    let ov = make_one_valid(&sat, &v)?;
    println!("one-valid flips {:?}", ov.lifter);
    Ok(())
}

fn main() {
    run().expect("builders");
}
