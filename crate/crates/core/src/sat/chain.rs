use crate::crossover::{planarize, BOX_FRESH_VARS};
use crate::error::{Error, Result};
use crate::formula::{emit_dimacs, BoolExpr, Clause, CnfFormula, Literal};
use crate::reduction::{Def, FreshBlock, Instance, Lifter, Problem, ReductionOutput};

use super::gadgets::{exactly_one_triple, gadget_g};

fn check_no_empty(f: &CnfFormula) -> Result<()> {
    match f.clauses().iter().position(Clause::is_empty) {
        Some(clause) => Err(Error::EmptyClause { clause }),
        None => Ok(()),
    }
}

fn output(name: &str, src: Problem, f: &CnfFormula, dst: Problem, target: CnfFormula, lifter: Lifter) -> ReductionOutput {
    ReductionOutput::new(name, src, &emit_dimacs(f), dst, Instance::Cnf(target), lifter)
}

fn zero_fill(target_vars: u32, from: u32) -> Lifter {
    Lifter::Define {
        target_vars,
        defs: (from..=target_vars).map(|v| (v, Def::Const(false))).collect(),
    }
}

/// [`planarize`] wrapped as a reduction.
pub fn planarize_reduction(f: &CnfFormula) -> Result<ReductionOutput> {
    let (target, trace) = planarize(f)?;
    let fresh_blocks = trace
        .records
        .iter()
        .enumerate()
        .map(|(k, r)| FreshBlock {
            gadget: "crossover",
            owner: k,
            start: r.block_start as usize,
            len: BOX_FRESH_VARS as usize,
        })
        .collect();
    let lifter = if trace.records.is_empty() {
        Lifter::Identity
    } else {
        Lifter::Planarize(Box::new(trace))
    };
    let mut out = output("planarize", Problem::Sat, f, Problem::Sat, target, lifter);
    out.fresh_blocks = fresh_blocks;
    Ok(out)
}

/// Pads every clause to exactly three distinct literals.
///
/// A 2-literal clause gets the x9 of a fresh copy of G; a unit clause gets the
/// x9 of two fresh copies. G forces its variables to 0 with a single model,
/// so the count is unchanged.
pub fn to_ex3sat(f: &CnfFormula) -> Result<ReductionOutput> {
    check_no_empty(f)?;
    f.check_arity(1, 3, "1 to 3 literals")?;
    f.check_distinct_vars()?;
    let n = f.num_vars();
    let mut target = CnfFormula::new(n);
    let mut blocks = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        let copies = 3 - c.len();
        let gs: Vec<_> = (0..copies)
            .map(|_| {
                let base = target.fresh_vars(9);
                blocks.push(FreshBlock {
                    gadget: "G",
                    owner: j,
                    start: base as usize,
                    len: 9,
                });
                gadget_g(base)
            })
            .collect();
        let mut lits = c.literals().to_vec();
        lits.extend(gs.iter().map(|g| Literal::pos(g.pad())));
        target.push(Clause::new(lits))?;
        for g in gs {
            for gc in g.clauses {
                target.push(gc)?;
            }
        }
    }
    let lifter = zero_fill(target.num_vars(), n + 1);
    let mut out = output("to_ex3sat", Problem::Sat, f, Problem::Sat, target, lifter);
    out.fresh_blocks = blocks;
    Ok(out)
}

/// Replaces each unit clause `(l)` by `(l + x9) ∧ G`, leaving other clauses
/// alone. Used where a later stage rejects unit clauses.
pub fn pad_units(f: &CnfFormula) -> Result<ReductionOutput> {
    check_no_empty(f)?;
    let n = f.num_vars();
    let mut target = CnfFormula::new(n);
    let mut blocks = Vec::new();
    let mut tail = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        if c.len() != 1 {
            target.push(c.clone())?;
            continue;
        }
        let base = target.fresh_vars(9);
        blocks.push(FreshBlock {
            gadget: "G",
            owner: j,
            start: base as usize,
            len: 9,
        });
        let g = gadget_g(base);
        target.push(Clause::new(vec![c.literals()[0], Literal::pos(g.pad())]))?;
        tail.extend(g.clauses);
    }
    for c in tail {
        target.push(c)?;
    }
    let lifter = if blocks.is_empty() {
        Lifter::Identity
    } else {
        zero_fill(target.num_vars(), n + 1)
    };
    let mut out = output("pad_units", Problem::Sat, f, Problem::Sat, target, lifter);
    out.fresh_blocks = blocks;
    Ok(out)
}

fn lit(l: Literal) -> BoolExpr {
    BoolExpr::lit(l)
}

fn and(a: BoolExpr, b: BoolExpr) -> Def {
    Def::Expr(BoolExpr::and(vec![a, b]))
}

/// Local replacement into exactly-one semantics. Each source model extends in
/// exactly one way; non-models do not extend at all.
pub fn to_1ex3sat(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_arity(2, 3, "2 or 3 literals")?;
    f.check_distinct_vars()?;
    let n = f.num_vars();
    let mut target = CnfFormula::new(n);
    let mut defs = Vec::new();
    let mut blocks = Vec::new();
    let p = Literal::pos;
    for (j, c) in f.clauses().iter().enumerate() {
        let ls = c.literals();
        let (zp, zq) = (ls[0], ls[1]);
        let width = if ls.len() == 3 { 5 } else { 9 };
        let base = target.fresh_vars(width);
        blocks.push(FreshBlock {
            gadget: if ls.len() == 3 { "ex1-clause3" } else { "ex1-clause2" },
            owner: j,
            start: base as usize,
            len: width as usize,
        });
        let [u, v, w, t, x] = std::array::from_fn(|i| base + i as u32);
        let cl = |xs: [Literal; 3]| Clause::new(xs.to_vec());
        target.push(cl([zp, p(u), p(v)]))?;
        target.push(cl([!zq, p(u), p(w)]))?;
        target.push(cl([p(v), p(w), p(t)]))?;
        defs.push((u, and(lit(zq), lit(!zp))));
        if ls.len() == 3 {
            let zr = ls[2];
            target.push(cl([!zr, p(v), p(x)]))?;
            defs.push((v, Def::Expr(BoolExpr::and(vec![lit(zr), lit(!zp), lit(!zq)]))));
            defs.push((w, and(lit(zp), lit(zq))));
            defs.push((t, and(lit(Literal::neg(v)), lit(Literal::neg(w)))));
            defs.push((x, and(lit(zr), BoolExpr::or(vec![lit(zp), lit(zq)]))));
        } else {
            let [a, d, e, ff] = std::array::from_fn(|i| base + 5 + i as u32);
            target.push(cl([Literal::neg(a), p(v), p(x)]))?;
            for tc in exactly_one_triple(a, d, e, ff) {
                target.push(tc)?;
            }
            defs.push((v, Def::Const(false)));
            defs.push((w, and(lit(zp), lit(zq))));
            defs.push((t, Def::Expr(lit(Literal::neg(w)))));
            defs.push((x, Def::Const(false)));
            defs.push((a, Def::Const(false)));
            defs.push((d, Def::Const(false)));
            defs.push((e, Def::Const(true)));
            defs.push((ff, Def::Const(false)));
        }
    }
    let lifter = Lifter::Define {
        target_vars: target.num_vars(),
        defs,
    };
    let mut out = output("to_1ex3sat", Problem::Sat, f, Problem::ExactlyOne, target, lifter);
    out.fresh_blocks = blocks;
    Ok(out)
}

/// Removes negations from an exactly-one instance: each negated occurrence
/// `¬z` becomes a fresh `y` tied to `z` by `(z+y+a)` and the exactly-one
/// triple over fresh `a, d, e, f`.
pub fn to_1ex3monosat(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_arity(3, 3, "exactly 3 literals")?;
    f.check_distinct_vars()?;
    let n = f.num_vars();
    let mut target = CnfFormula::new(n);
    let mut defs = Vec::new();
    let mut blocks = Vec::new();
    let p = Literal::pos;
    for (j, c) in f.clauses().iter().enumerate() {
        let mut lits = Vec::with_capacity(3);
        let mut extra = Vec::new();
        for l in c.iter() {
            if l.is_positive() {
                lits.push(l);
                continue;
            }
            let base = target.fresh_vars(5);
            blocks.push(FreshBlock {
                gadget: "negation",
                owner: j,
                start: base as usize,
                len: 5,
            });
            let [y, a, d, e, ff] = std::array::from_fn(|i| base + i as u32);
            lits.push(p(y));
            extra.push(Clause::new(vec![p(l.var()), p(y), p(a)]));
            // exactly-one triple (a+d+e)(a+f+e)(d+f+e): only e can be true
            extra.push(Clause::new(vec![p(a), p(d), p(e)]));
            extra.push(Clause::new(vec![p(a), p(ff), p(e)]));
            extra.push(Clause::new(vec![p(d), p(ff), p(e)]));
            defs.push((y, Def::Expr(lit(l))));
            defs.push((a, Def::Const(false)));
            defs.push((d, Def::Const(false)));
            defs.push((e, Def::Const(true)));
            defs.push((ff, Def::Const(false)));
        }
        target.push(Clause::new(lits))?;
        for x in extra {
            target.push(x)?;
        }
    }
    let lifter = if defs.is_empty() {
        Lifter::Identity
    } else {
        Lifter::Define {
            target_vars: target.num_vars(),
            defs,
        }
    };
    let mut out = output("to_1ex3monosat", Problem::ExactlyOne, f, Problem::ExactlyOne, target, lifter);
    out.fresh_blocks = blocks;
    Ok(out)
}

/// Each monotone clause `(x+y+z)` becomes the group
/// `(x+y+z)(¬x+¬y)(¬x+¬z)(¬z+¬y)`, whose models are exactly the
/// exactly-one assignments of the clause.
pub fn red1(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_arity(3, 3, "exactly 3 literals")?;
    f.check_monotone()?;
    f.check_distinct_vars()?;
    let mut target = CnfFormula::new(f.num_vars());
    let n = Literal::neg;
    for c in f.clauses() {
        let [x, y, z] = [0, 1, 2].map(|i| c.literals()[i].var());
        target.push(c.clone())?;
        target.push(Clause::new(vec![n(x), n(y)]))?;
        target.push(Clause::new(vec![n(x), n(z)]))?;
        target.push(Clause::new(vec![n(z), n(y)]))?;
    }
    Ok(output("red1", Problem::ExactlyOne, f, Problem::Sat, target, Lifter::Identity))
}

/// Reads a [`red1`] output back into its monotone clauses. Fails unless the
/// clauses come in groups `(x+y+z)(¬x+¬y)(¬x+¬z)(¬z+¬y)`.
pub fn red1_groups(f: &CnfFormula) -> Result<CnfFormula> {
    let bad = |clause: usize| Error::Arity {
        clause,
        expected: "a group of the form (x+y+z)(-x-y)(-x-z)(-z-y)",
        arity: f.clauses()[clause].len(),
    };
    if !f.num_clauses().is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "{} clauses do not split into groups of four",
            f.num_clauses()
        )));
    }
    let mut out = CnfFormula::new(f.num_vars());
    for (g, grp) in f.clauses().chunks(4).enumerate() {
        let c = &grp[0];
        if c.len() != 3 || !c.is_monotone() {
            return Err(bad(4 * g));
        }
        let [x, y, z] = [0, 1, 2].map(|i| c.literals()[i].var());
        let n = Literal::neg;
        for (k, pair) in [[x, y], [x, z], [z, y]].into_iter().enumerate() {
            if grp[k + 1].literals() != [n(pair[0]), n(pair[1])] {
                return Err(bad(4 * g + k + 1));
            }
        }
        out.push(c.clone())?;
    }
    Ok(out)
}

/// Identity-lifted normalization, so it can sit inside a chain.
pub fn normalize_reduction(f: &CnfFormula) -> ReductionOutput {
    output("normalize", Problem::Sat, f, Problem::Sat, f.normalize().formula, Lifter::Identity)
}
