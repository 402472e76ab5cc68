use crate::error::{Error, Result};
use crate::formula::{emit_dimacs, Assignment, BoolExpr, Clause, CnfFormula, Literal};
use crate::reduction::{sha256_hex, Def, Instance, Lifter, Problem, ReductionOutput};

use super::chain::planarize_reduction;
use super::tseitin::tseitin_cnf;

/// `(f ∧ x_{n+1}) ∨ (¬x_1 ∧ … ∧ ¬x_{n+1})` over `n + 1` variables. Its models
/// are the models of `f` with `x_{n+1} = 1`, plus the all-zero assignment.
///
/// `f` is normalized first; a formula with an empty clause contributes no
/// left disjunct.
pub fn disjunction_trick(f: &CnfFormula) -> (BoolExpr, u32) {
    let n1 = f.num_vars() + 1;
    let nf = f.normalize().formula;
    let zero = BoolExpr::and((1..=n1).map(|v| BoolExpr::lit(Literal::neg(v))).collect());
    if nf.clauses().iter().any(Clause::is_empty) {
        return (zero, n1);
    }
    let mut conj = BoolExpr::cnf_conjuncts(&nf);
    conj.push(BoolExpr::var(n1));
    (BoolExpr::or(vec![BoolExpr::and(conj), zero]), n1)
}

/// Flips the polarity of every occurrence of each variable that `v` sets to
/// false, so the all-true assignment satisfies the result. Variables keep
/// their indices; the incidence graph is unchanged.
pub fn make_one_valid(f: &CnfFormula, v: &Assignment) -> Result<ReductionOutput> {
    if let Some(clause) = f.first_falsified(v)? {
        return Err(Error::NotSatisfying { clause });
    }
    let flipped: Vec<u32> = (1..=f.num_vars()).filter(|&x| !v.value(x)).collect();
    let mut mark = vec![false; f.num_vars() as usize + 1];
    for &x in &flipped {
        mark[x as usize] = true;
    }
    let mut target = CnfFormula::new(f.num_vars());
    for c in f.clauses() {
        let lits = c.iter().map(|l| if mark[l.var() as usize] { !l } else { l }).collect();
        target.push(Clause::new(lits))?;
    }
    let lifter = if flipped.is_empty() {
        Lifter::Identity
    } else {
        Lifter::Flip(flipped)
    };
    Ok(ReductionOutput::new(
        "make_one_valid",
        Problem::Sat,
        &emit_dimacs(f),
        Problem::Sat,
        Instance::Cnf(target),
        lifter,
    ))
}

/// Converts the disjunction trick's expression to 3CNF and planarizes it.
///
/// The output has `count(f) + 1` models (offset 1); the returned witness is
/// the one that does not come from `f`: all-zero on `x_1..x_{n+1}`, extended
/// through the gates and crossover boxes.
pub fn make_ambiguous_instance(f: &CnfFormula) -> Result<(ReductionOutput, Assignment)> {
    let (g, n1) = disjunction_trick(f);
    let mut conv = tseitin_cnf(&g, n1)?;
    let witness = conv.lifter.lift_assignment(&Assignment::all(n1, false))?;
    let mut defs = vec![(n1, Def::Const(true))];
    let target_vars = conv.target_cnf().num_vars();
    if let Lifter::Define { defs: gates, .. } = conv.lifter {
        defs.extend(gates);
    }
    conv.lifter = Lifter::Define { target_vars, defs };
    conv.reduction = "disjunction_tseitin".into();
    conv.offset = 1u32.into();
    conv.source_sha256 = sha256_hex(&emit_dimacs(f));
    let plan = planarize_reduction(conv.target_cnf())?;
    let witness = plan.lifter.lift_assignment(&witness)?;
    let out = conv.then(plan)?;
    debug_assert!(out.target_cnf().evaluate(&witness).unwrap());
    Ok((out, witness))
}

/// The ambiguous instance made 1-valid through its known witness. The
/// result has `count(f) + 1` models, so it is uniquely satisfiable exactly
/// when `f` is unsatisfiable.
pub fn make_unique_one_valid(f: &CnfFormula) -> Result<ReductionOutput> {
    let (amb, witness) = make_ambiguous_instance(f)?;
    let ov = make_one_valid(amb.target_cnf(), &witness)?;
    amb.then(ov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{count_sat, Budget};

    fn cnf(n: u32, cs: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, cs).unwrap()
    }

    fn count(f: &CnfFormula) -> u64 {
        count_sat(f, &Budget::default()).unwrap().count.try_into().unwrap()
    }

    #[test]
    fn one_valid_example() {
        let f = cnf(2, &[&[-1, 2]]);
        let out = make_one_valid(&f, &Assignment::new(vec![false, false])).unwrap();
        let t = out.target_cnf();
        assert_eq!(t, &cnf(2, &[&[1, -2]]));
        assert!(t.evaluate(&Assignment::all(2, true)).unwrap());
        assert_eq!(count(t), 3);
        let same = make_one_valid(&f, &Assignment::all(2, true)).unwrap();
        assert_eq!(same.target_cnf(), &f);
        assert!(make_one_valid(&f, &Assignment::new(vec![true, false])).is_err());
    }

    #[test]
    fn disjunction_counts() {
        let (g, n1) = disjunction_trick(&cnf(1, &[&[1], &[-1]]));
        assert_eq!(n1, 2);
        let models = (0..4u64)
            .filter(|&w| g.evaluate(&Assignment::from_word(2, w)).unwrap())
            .count();
        assert_eq!(models, 1);
    }

    #[test]
    fn ambiguous_examples() {
        for (f, want) in [(cnf(1, &[&[1], &[-1]]), 1u64), (cnf(1, &[&[1]]), 2)] {
            let (out, w) = make_ambiguous_instance(&f).unwrap();
            assert_eq!(count(out.target_cnf()), want);
            assert!(out.target_cnf().evaluate(&w).unwrap());
            assert_eq!(out.offset, 1u32.into());
            let u = make_unique_one_valid(&f).unwrap();
            assert_eq!(count(u.target_cnf()), want);
            assert!(u.target_cnf().evaluate(&Assignment::all(u.target_cnf().num_vars(), true)).unwrap());
        }
    }
}
