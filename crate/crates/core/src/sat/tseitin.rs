use crate::error::{Error, Result};
use crate::formula::{BoolExpr, Clause, CnfFormula, Literal};
use crate::reduction::{Def, FreshBlock, Instance, Lifter, Problem, ReductionOutput};

struct Builder {
    cnf: CnfFormula,
    defs: Vec<(u32, Def)>,
}

impl Builder {
    fn gate(&mut self, def: BoolExpr) -> u32 {
        let y = self.cnf.fresh_vars(1);
        self.defs.push((y, Def::Expr(def)));
        y
    }

    fn push(&mut self, lits: &[Literal]) {
        self.cnf.push(Clause::new(lits.to_vec())).expect("gate literals are in range");
    }

    /// Literal equivalent to `e`, allocating gate variables bottom-up.
    fn encode(&mut self, e: &BoolExpr) -> Literal {
        match e {
            BoolExpr::Lit(l) => *l,
            BoolExpr::Not(c) => {
                let a = self.encode(c);
                let y = self.gate(BoolExpr::lit(!a));
                self.push(&[Literal::neg(y), !a]);
                self.push(&[Literal::pos(y), a]);
                Literal::pos(y)
            }
            BoolExpr::And(cs) => self.fold(cs, true),
            BoolExpr::Or(cs) => self.fold(cs, false),
        }
    }

    /// Right fold: `op(c0, op(c1, ... op(c_{k-2}, c_{k-1})))`.
    fn fold(&mut self, cs: &[BoolExpr], is_and: bool) -> Literal {
        if cs.len() == 1 {
            return self.encode(&cs[0]);
        }
        let a = self.encode(&cs[0]);
        let b = self.fold(&cs[1..], is_and);
        let pair = vec![BoolExpr::lit(a), BoolExpr::lit(b)];
        let y = Literal::pos(self.gate(if is_and { BoolExpr::and(pair) } else { BoolExpr::or(pair) }));
        if is_and {
            self.push(&[!y, a]);
            self.push(&[!y, b]);
            self.push(&[y, !a, !b]);
        } else {
            self.push(&[y, !a]);
            self.push(&[y, !b]);
            self.push(&[!y, a, b]);
        }
        y
    }
}

/// Tseitin conversion over variables `1..=num_vars`: one fresh variable per
/// (binarized) internal node, numbered children first, and a unit clause on
/// the root. Every model of `e` has exactly one extension.
pub fn tseitin_cnf(e: &BoolExpr, num_vars: u32) -> Result<ReductionOutput> {
    e.validate()?;
    if e.max_var() > num_vars {
        return Err(Error::VariableOutOfRange {
            var: e.max_var(),
            num_vars,
        });
    }
    let mut b = Builder {
        cnf: CnfFormula::new(num_vars),
        defs: Vec::new(),
    };
    let root = b.encode(e);
    b.push(&[root]);
    let fresh = b.cnf.num_vars() - num_vars;
    let lifter = if fresh == 0 {
        Lifter::Identity
    } else {
        Lifter::Define {
            target_vars: b.cnf.num_vars(),
            defs: b.defs,
        }
    };
    let source = format!("expr {num_vars}\n{e}\n");
    let mut out = ReductionOutput::new("tseitin", Problem::Sat, &source, Problem::Sat, Instance::Cnf(b.cnf), lifter);
    if fresh > 0 {
        out.fresh_blocks.push(FreshBlock {
            gadget: "gates",
            owner: 0,
            start: num_vars as usize + 1,
            len: fresh as usize,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Assignment;

    fn models(f: &CnfFormula) -> Vec<Assignment> {
        (0..1u64 << f.num_vars())
            .map(|w| Assignment::from_word(f.num_vars(), w))
            .filter(|v| f.evaluate(v).unwrap())
            .collect()
    }

    #[test]
    fn leaf() {
        let out = tseitin_cnf(&BoolExpr::var(1), 1).unwrap();
        assert_eq!(out.target_cnf(), &CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap());
        assert_eq!(out.lifter, Lifter::Identity);
    }

    #[test]
    fn and_or_not() {
        let e = BoolExpr::and(vec![BoolExpr::var(1), BoolExpr::var(2)]);
        let out = tseitin_cnf(&e, 2).unwrap();
        assert_eq!(out.target_cnf().num_vars(), 3);
        assert_eq!(models(out.target_cnf()).len(), 1);
        let e = BoolExpr::or(vec![BoolExpr::var(1), BoolExpr::not(BoolExpr::var(1))]);
        let out = tseitin_cnf(&e, 1).unwrap();
        assert_eq!(models(out.target_cnf()).len(), 2);
    }

    #[test]
    fn nary_is_right_folded_and_extensions_unique() {
        let e = BoolExpr::or(vec![
            BoolExpr::and(vec![BoolExpr::var(1), BoolExpr::lit(Literal::neg(2)), BoolExpr::var(3)]),
            BoolExpr::not(BoolExpr::or(vec![BoolExpr::var(2), BoolExpr::var(3)])),
        ]);
        let out = tseitin_cnf(&e, 3).unwrap();
        let t = out.target_cnf();
        // AND3 -> 2 gates, OR2 -> 1, NOT -> 1, top OR -> 1
        assert_eq!(t.num_vars(), 8);
        let ms = models(t);
        let src: Vec<Assignment> = (0..8u64)
            .map(|w| Assignment::from_word(3, w))
            .filter(|v| e.evaluate(v).unwrap())
            .collect();
        assert_eq!(ms.len(), src.len());
        for v in &src {
            let l = out.lifter.lift_assignment(v).unwrap();
            assert!(ms.contains(&l));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(tseitin_cnf(&BoolExpr::var(3), 2).is_err());
    }
}
