use crate::error::Result;
use crate::formula::{emit_dimacs, Assignment, CnfFormula};
use crate::reduction::{Instance, Lifter, Problem, ReductionOutput};
use crate::sat::{make_ambiguous_instance, normalize_reduction, pad_units, to_1ex3monosat, to_1ex3sat};

use super::IlpInstance;

/// 0/1 program whose optimum is 1 iff `f` is satisfiable and 0 otherwise,
/// with a known feasible point of objective 0.
///
/// The constraints are the clauses of the ambiguous instance of `f` pushed
/// through the exactly-one and monotone stages; the objective is the fresh
/// variable `x_{n+1}` of the disjunction trick. Feasible points are counted
/// with offset 1 over the models of `f`.
pub fn sat_to_ilp(f: &CnfFormula) -> Result<(ReductionOutput, Assignment)> {
    let objective = f.num_vars() + 1;
    let (amb, mut point) = make_ambiguous_instance(f)?;
    let norm = normalize_reduction(amb.target_cnf());
    let mut out = amb.then(norm)?;
    for stage in [pad_units, to_1ex3sat, to_1ex3monosat] {
        let next = stage(out.target_cnf())?;
        point = next.lifter.lift_assignment(&point)?;
        out = out.then(next)?;
    }
    let h = out.target_cnf();
    let ilp = IlpInstance::from_monotone(h, objective)?;
    let emit = ReductionOutput::new(
        "ilp_emit",
        Problem::ExactlyOne,
        &emit_dimacs(h),
        Problem::IlpFeasible,
        Instance::Ilp(ilp),
        Lifter::Identity,
    );
    let out = out.then(emit)?;
    Ok((out, point))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cs: &[&[i64]], n: u32) -> (ReductionOutput, Assignment) {
        sat_to_ilp(&CnfFormula::from_dimacs_clauses(n, cs).unwrap()).unwrap()
    }

    #[test]
    fn witness_is_feasible_with_objective_zero() {
        let cases: [(&[&[i64]], u32); 3] = [(&[&[1]], 1), (&[&[1], &[-1]], 1), (&[&[1, -2], &[2, 3, -1]], 3)];
        for (cs, n) in cases {
            let (out, p) = run(cs, n);
            let ilp = out.target.as_ilp().unwrap();
            assert!(ilp.is_feasible(&p).unwrap());
            assert_eq!(ilp.objective_value(&p), 0);
            assert_eq!(out.offset, 1u32.into());
            assert_eq!(out.target_problem, Problem::IlpFeasible);
        }
    }
}
