//! Seeded verification of declared count relations, planarity
//! preservation and gadget properties, with machine-readable verdicts.

mod chains;
mod check;
mod corpus;
mod gadgets;
mod verdict;

use num_bigint::BigUint;
use rayon::prelude::*;

pub use chains::{parse_chain, promises_planarity, run_chain, stage, Fault, Planarity, Stage, STAGES};
pub use check::{is_solution, solution_from_support};
pub use corpus::{
    cases, corpus_of, default_corpus, random_graph, random_x3c, source_formula, Source, VerificationCase,
};
pub use gadgets::verify_gadgets;
pub use verdict::{all_hold, tally, Counterexample, Status, Verdict};

use crate::error::{Error, Result};
use crate::oracles::count_instance;
use crate::planarity::is_planar;
use crate::reduction::{Instance, Problem, ReductionOutput, Solution};

/// Runs every case, in parallel; verdicts come back in case order.
pub fn verify_reduction(cases: &[VerificationCase], fault: Option<Fault>) -> Vec<Verdict> {
    cases.par_iter().map(|c| verify_case(c, fault)).collect()
}

fn skip_or_fail(mut v: Verdict, e: Error, what: &str) -> Verdict {
    if matches!(e, Error::BudgetExceeded { .. }) {
        v.status = Status::Skip;
    }
    v.detail = format!("{what}: {e}");
    v
}

fn counterexample(problem: Problem, src: &Instance, out: &ReductionOutput) -> Counterexample {
    Counterexample {
        source: src.to_text(problem),
        target: out.target_text(),
    }
}

pub fn verify_case(case: &VerificationCase, fault: Option<Fault>) -> Verdict {
    let mut v = Verdict::new(case.id, &case.chain, Some(case.seed), case.source.describe());
    let (src, problem) = match case.source.instantiate(case.seed) {
        Ok(x) => x,
        Err(e) => return skip_or_fail(v, e, "source"),
    };
    let mut budget = case.budget;
    if case.witness {
        budget.enumerate_limit = budget.enumerate_limit.max(2);
    }
    let src_report = match count_instance(problem, &src, &budget) {
        Ok(r) => r,
        Err(e) => return skip_or_fail(v, e, "source count"),
    };
    let stages = match parse_chain(&case.chain) {
        Ok(s) => s,
        Err(e) => return skip_or_fail(v, e, "chain"),
    };
    let out = match run_chain(&stages, &src, problem, fault) {
        Ok(o) => o,
        Err(e) => return skip_or_fail(v, e, "chain"),
    };
    v.multiplier = out.multiplier.clone();
    v.offset = out.offset.clone();
    v.source_count = Some(src_report.count.clone());
    let tgt = match count_instance(out.target_problem, &out.target, &case.budget) {
        Ok(r) => r.count,
        Err(e) => return skip_or_fail(v, e, "target count"),
    };
    let declared_ok = case
        .expected
        .is_none_or(|(m, o)| out.multiplier == BigUint::from(m) && out.offset == BigUint::from(o));
    if !declared_ok {
        v.detail = format!("declared relation {}*s+{} differs from expected", out.multiplier, out.offset);
    }
    v.relation_holds = declared_ok && tgt == out.expected_count(&src_report.count);
    v.target_count = Some(tgt);
    let promised = promises_planarity(&stages, is_planar(&src.planarity_graph()));
    v.planarity_holds = !promised || is_planar(&out.target.planarity_graph());
    if case.witness {
        v.witness_holds = Some(lifts_hold(problem, &src, &src_report.enumerated, &out));
    }
    let v = v.settle();
    if v.status == Status::Fail {
        Verdict {
            counterexample: Some(counterexample(problem, &src, &out)),
            ..v
        }
    } else {
        v
    }
}

/// Every lifted image of the given source solutions solves the target, and
/// each source solution has `multiplier` distinct images.
fn lifts_hold(problem: Problem, src: &Instance, supports: &[Vec<usize>], out: &ReductionOutput) -> bool {
    let per_source: Option<usize> = out.multiplier.clone().try_into().ok();
    supports.iter().all(|sup| {
        let Some(s) = solution_from_support(problem, src, sup) else {
            return true;
        };
        let Ok(mut lifted) = out.lifter.lift(&s) else {
            return false;
        };
        let all_valid = lifted.iter().all(|t| is_solution(out.target_problem, &out.target, t));
        lifted.sort();
        lifted.dedup();
        all_valid && per_source.is_none_or(|k| lifted.len() == k)
    })
}

/// Builds the instance and its witness and checks the witness directly.
/// Supported chains: `make_ambiguous_instance` and `sat_to_ilp` (builder
/// witnesses) and any chain whose source has a solution (lifted images).
pub fn verify_with_witness(case: &VerificationCase) -> Verdict {
    let mut v = Verdict::new(case.id, format!("witness:{}", case.chain), Some(case.seed), case.source.describe());
    let (src, problem) = match case.source.instantiate(case.seed) {
        Ok(x) => x,
        Err(e) => return skip_or_fail(v, e, "source"),
    };
    let built = match (case.chain.as_str(), &src) {
        ("make_ambiguous_instance", Instance::Cnf(f)) => crate::sat::make_ambiguous_instance(f).map(|(o, w)| (o, Some(w))),
        ("sat_to_ilp", Instance::Cnf(f)) => crate::setgraph::sat_to_ilp(f).map(|(o, w)| (o, Some(w))),
        _ => parse_chain(&case.chain)
            .and_then(|st| run_chain(&st, &src, problem, None))
            .map(|o| (o, None)),
    };
    let (out, witness) = match built {
        Ok(x) => x,
        Err(e) => return skip_or_fail(v, e, "chain"),
    };
    v.multiplier = out.multiplier.clone();
    v.offset = out.offset.clone();
    v.relation_holds = true;
    v.planarity_holds = true;
    let ok = match witness {
        Some(w) => is_solution(out.target_problem, &out.target, &Solution::Assignment(w)),
        None => {
            let mut b = case.budget;
            b.enumerate_limit = b.enumerate_limit.max(4);
            match count_instance(problem, &src, &b) {
                Ok(r) => {
                    v.source_count = Some(r.count.clone());
                    lifts_hold(problem, &src, &r.enumerated, &out)
                }
                Err(e) => return skip_or_fail(v, e, "source count"),
            }
        }
    };
    v.witness_holds = Some(ok);
    v.settle()
}

/// Fails unless every registered stage occurs in some chain of `cases`.
pub fn check_registry(cases: &[VerificationCase]) -> Result<()> {
    let missing: Vec<&str> = STAGES
        .iter()
        .map(|s| s.name)
        .filter(|name| !cases.iter().any(|c| c.chain.split(',').any(|x| x.trim() == *name)))
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "stages not covered by the corpus: {}",
            missing.join(", ")
        )))
    }
}

/// A small corpus run with [`Fault::FlipLastClause`] applied. Returns the
/// verdicts if at least one fails, and an error if the corrupted run passes,
/// since then the harness cannot tell a broken gadget from a sound one.
pub fn self_test(seed: u64) -> Result<Vec<Verdict>> {
    let cases = corpus_of(vec![
        cases("to_ex3sat", 4, seed, Some((1, 0)), |i| Source::Cnf {
            n: 4,
            m: 2 + i,
            mix: crate::formula::ArityMix::MIXED,
        }),
        cases("planarize", 4, seed, Some((1, 0)), |_| Source::FewCrossings {
            n: 5,
            m: 4,
            max_crossings: 2,
        }),
    ]);
    let mut v = verify_gadgets(Some(Fault::FlipLastClause));
    v.extend(verify_reduction(&cases, Some(Fault::FlipLastClause)));
    if v.iter().any(|x| x.status == Status::Fail) {
        Ok(v)
    } else {
        Err(Error::InvalidArgument("corrupted gadgets passed verification".into()))
    }
}

