use std::fmt;

use super::{Assignment, CnfFormula, Literal};
use crate::error::{Error, Result};

/// Boolean expression tree over literals.
///
/// Use [`BoolExpr::and`] and [`BoolExpr::or`] to build nodes; they collapse a
/// single child so the arity-two invariant holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Lit(Literal),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
}

impl BoolExpr {
    pub fn var(v: u32) -> Self {
        BoolExpr::Lit(Literal::pos(v))
    }

    pub fn lit(l: Literal) -> Self {
        BoolExpr::Lit(l)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    /// Conjunction; panics on an empty child list.
    pub fn and(mut children: Vec<BoolExpr>) -> Self {
        assert!(!children.is_empty(), "empty conjunction");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            BoolExpr::And(children)
        }
    }

    /// Disjunction; panics on an empty child list.
    pub fn or(mut children: Vec<BoolExpr>) -> Self {
        assert!(!children.is_empty(), "empty disjunction");
        if children.len() == 1 {
            children.pop().unwrap()
        } else {
            BoolExpr::Or(children)
        }
    }

    /// One expression per clause of `f`, in clause order.
    pub fn cnf_conjuncts(f: &CnfFormula) -> Vec<BoolExpr> {
        f.clauses()
            .iter()
            .map(|c| BoolExpr::or(c.iter().map(BoolExpr::Lit).collect()))
            .collect()
    }

    /// `f` as an AND of ORs. `None` for the empty formula, which has no
    /// constant to stand for it.
    pub fn from_cnf(f: &CnfFormula) -> Option<BoolExpr> {
        let cs = BoolExpr::cnf_conjuncts(f);
        (!cs.is_empty()).then(|| BoolExpr::and(cs))
    }

    pub fn max_var(&self) -> u32 {
        match self {
            BoolExpr::Lit(l) => l.var(),
            BoolExpr::Not(c) => c.max_var(),
            BoolExpr::And(cs) | BoolExpr::Or(cs) => cs.iter().map(BoolExpr::max_var).max().unwrap_or(0),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            BoolExpr::Lit(_) => 0,
            BoolExpr::Not(c) => 1 + c.internal_nodes(),
            BoolExpr::And(cs) | BoolExpr::Or(cs) => 1 + cs.iter().map(BoolExpr::internal_nodes).sum::<usize>(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BoolExpr::Lit(_) => Ok(()),
            BoolExpr::Not(c) => c.validate(),
            BoolExpr::And(cs) | BoolExpr::Or(cs) => {
                if cs.len() < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "AND/OR node with {} children",
                        cs.len()
                    )));
                }
                cs.iter().try_for_each(BoolExpr::validate)
            }
        }
    }

    pub fn evaluate(&self, v: &Assignment) -> Result<bool> {
        let need = self.max_var() as usize;
        if v.len() < need {
            return Err(Error::PartialAssignment {
                given: v.len(),
                needed: need,
            });
        }
        Ok(self.eval_unchecked(v))
    }

    pub(crate) fn eval_unchecked(&self, v: &Assignment) -> bool {
        match self {
            BoolExpr::Lit(l) => l.eval(v.value(l.var())),
            BoolExpr::Not(c) => !c.eval_unchecked(v),
            BoolExpr::And(cs) => cs.iter().all(|c| c.eval_unchecked(v)),
            BoolExpr::Or(cs) => cs.iter().any(|c| c.eval_unchecked(v)),
        }
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Lit(l) if l.is_positive() => write!(f, "x{}", l.var()),
            BoolExpr::Lit(l) => write!(f, "¬x{}", l.var()),
            BoolExpr::Not(c) => write!(f, "¬({c})"),
            BoolExpr::And(cs) | BoolExpr::Or(cs) => {
                let op = if matches!(self, BoolExpr::And(_)) { " ∧ " } else { " ∨ " };
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{op}")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons_collapse() {
        assert_eq!(BoolExpr::and(vec![BoolExpr::var(1)]), BoolExpr::var(1));
        assert!(BoolExpr::And(vec![BoolExpr::var(1)]).validate().is_err());
    }

    #[test]
    fn evaluation() {
        let e = BoolExpr::or(vec![BoolExpr::var(1), BoolExpr::not(BoolExpr::var(2))]);
        assert!(e.evaluate(&Assignment::new(vec![false, false])).unwrap());
        assert!(!e.evaluate(&Assignment::new(vec![false, true])).unwrap());
        assert!(e.evaluate(&Assignment::new(vec![true])).is_err());
    }

    #[test]
    fn from_cnf_matches_formula() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, -2], &[3], &[-1, 2, -3]]).unwrap();
        let e = BoolExpr::from_cnf(&f).unwrap();
        for w in 0..8 {
            let v = Assignment::from_word(3, w);
            assert_eq!(e.evaluate(&v).unwrap(), f.evaluate(&v).unwrap());
        }
    }
}
