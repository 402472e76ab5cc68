//! CNF formulas, Boolean expression trees, assignments, and the incidence graph.
//!
//! Variables are dense positive indices `1..=num_vars`. Display names live in a
//! side map so indices stay stable across reduction chains and DIMACS files.

mod dimacs;
mod expr;
mod incidence;
mod random;

pub use dimacs::{emit_dimacs, parse_dimacs};
pub use expr::BoolExpr;
pub use incidence::{incidence_graph, IncidenceGraph};
pub use random::{random_3cnf, random_monotone_3cnf, seeded_rng, ArityMix};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Not;

use crate::error::{Error, Result};

/// A variable with a polarity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variables are indexed from 1");
        Literal {
            var,
            negated: !positive,
        }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, false)
    }

    /// Converts a signed DIMACS integer; `0` has no literal.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 || x.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Literal::new(x.unsigned_abs() as u32, x > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        !self.negated
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }

    /// Same polarity, different variable.
    pub fn with_var(self, var: u32) -> Self {
        Literal::new(var, self.is_positive())
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals, kept in input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause(literals)
    }

    /// Builds a clause from signed DIMACS integers. Panics on `0`.
    pub fn from_dimacs(lits: &[i64]) -> Self {
        Clause(
            lits.iter()
                .map(|&x| Literal::from_dimacs(x).expect("0 is not a literal"))
                .collect(),
        )
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0.iter().copied()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.var()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: u32) -> bool {
        self.0.iter().any(|l| l.var() == var)
    }

    /// First variable that occurs twice (in any polarity), if any.
    pub fn repeated_var(&self) -> Option<u32> {
        for (i, a) in self.0.iter().enumerate() {
            if self.0[i + 1..].iter().any(|b| b.var() == a.var()) {
                return Some(a.var());
            }
        }
        None
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|&l| self.0.contains(&!l))
    }

    pub fn is_monotone(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    pub fn eval(&self, v: &Assignment) -> bool {
        self.0.iter().any(|l| l.eval(v.value(l.var())))
    }

    /// Number of true literals under `v`, counting repeated literals separately.
    pub fn true_count(&self, v: &Assignment) -> usize {
        self.0.iter().filter(|l| l.eval(v.value(l.var()))).count()
    }

    fn sorted(&self) -> Vec<Literal> {
        let mut s = self.0.clone();
        s.sort();
        s
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A total truth assignment; index `v - 1` holds the value of variable `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn all(num_vars: u32, value: bool) -> Self {
        Assignment(vec![value; num_vars as usize])
    }

    /// Bit `v - 1` of `word` is the value of variable `v`.
    pub fn from_word(num_vars: u32, word: u64) -> Self {
        Assignment((0..num_vars).map(|i| word >> i & 1 == 1).collect())
    }

    pub fn to_word(&self) -> u64 {
        assert!(self.0.len() <= 64);
        self.0
            .iter()
            .enumerate()
            .fold(0, |w, (i, &b)| if b { w | 1 << i } else { w })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.0.get(var as usize - 1).copied()
    }

    /// Value of `var`; panics when the assignment does not cover it.
    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    /// Sets `var`, growing the assignment with `false` as needed.
    pub fn set(&mut self, var: u32, value: bool) {
        let idx = var as usize - 1;
        if idx >= self.0.len() {
            self.0.resize(idx + 1, false);
        }
        self.0[idx] = value;
    }

    pub fn resize(&mut self, num_vars: u32) {
        self.0.resize(num_vars as usize, false);
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Restriction to variables `1..=num_vars`.
    pub fn truncated(&self, num_vars: u32) -> Assignment {
        Assignment(self.0[..num_vars as usize].to_vec())
    }
}

/// A conjunction of clauses over variables `1..=num_vars`.
#[derive(Clone, Debug, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
    var_names: BTreeMap<u32, String>,
}

/// Equality ignores display names.
impl PartialEq for CnfFormula {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.clauses == other.clauses
    }
}

impl Eq for CnfFormula {}

/// Result of [`CnfFormula::normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub formula: CnfFormula,
    pub removed_tautologies: usize,
    pub has_unit_clauses: bool,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            ..Default::default()
        }
    }

    pub fn from_clauses(num_vars: u32, clauses: Vec<Clause>) -> Result<Self> {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.push(c)?;
        }
        Ok(f)
    }

    /// Convenience constructor from signed integers, as in DIMACS.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> Result<Self> {
        CnfFormula::from_clauses(
            num_vars,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn var_names(&self) -> &BTreeMap<u32, String> {
        &self.var_names
    }

    pub fn set_var_name(&mut self, var: u32, name: impl Into<String>) {
        self.var_names.insert(var, name.into());
    }

    pub fn push(&mut self, clause: Clause) -> Result<()> {
        if let Some(l) = clause.iter().find(|l| l.var() > self.num_vars) {
            return Err(Error::VariableOutOfRange {
                var: l.var(),
                num_vars: self.num_vars,
            });
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Appends a clause given as signed integers; variables must already exist.
    pub fn push_dimacs(&mut self, lits: &[i64]) -> Result<()> {
        self.push(Clause::from_dimacs(lits))
    }

    /// Reserves `count` fresh variables and returns the first new index.
    pub fn fresh_vars(&mut self, count: u32) -> u32 {
        let first = self.num_vars + 1;
        self.num_vars += count;
        first
    }

    /// Extends the variable range without adding clauses.
    pub fn set_num_vars(&mut self, num_vars: u32) {
        assert!(num_vars >= self.max_var());
        self.num_vars = num_vars;
    }

    pub fn max_var(&self) -> u32 {
        self.clauses.iter().map(Clause::max_var).max().unwrap_or(0)
    }

    pub fn max_arity(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn is_monotone(&self) -> bool {
        self.clauses.iter().all(Clause::is_monotone)
    }

    /// Occurrence count per variable (index `v - 1`).
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars as usize];
        for c in &self.clauses {
            for l in c.iter() {
                occ[l.var() as usize - 1] += 1;
            }
        }
        occ
    }

    /// Order-insensitive comparison: same variable count and same multiset of
    /// clauses, each compared as a multiset of literals.
    pub fn multiset_eq(&self, other: &CnfFormula) -> bool {
        if self.num_vars != other.num_vars || self.clauses.len() != other.clauses.len() {
            return false;
        }
        let mut a: Vec<_> = self.clauses.iter().map(Clause::sorted).collect();
        let mut b: Vec<_> = other.clauses.iter().map(Clause::sorted).collect();
        a.sort();
        b.sort();
        a == b
    }

    fn check_total(&self, v: &Assignment) -> Result<()> {
        if v.len() < self.num_vars as usize {
            return Err(Error::PartialAssignment {
                given: v.len(),
                needed: self.num_vars as usize,
            });
        }
        Ok(())
    }

    /// True iff every clause has at least one true literal.
    pub fn evaluate(&self, v: &Assignment) -> Result<bool> {
        self.check_total(v)?;
        Ok(self.clauses.iter().all(|c| c.eval(v)))
    }

    /// True iff every clause has exactly one true literal.
    pub fn evaluate_ex1(&self, v: &Assignment) -> Result<bool> {
        self.check_total(v)?;
        Ok(self.clauses.iter().all(|c| c.true_count(v) == 1))
    }

    /// Index of the first clause falsified by `v`.
    pub fn first_falsified(&self, v: &Assignment) -> Result<Option<usize>> {
        self.check_total(v)?;
        Ok(self.clauses.iter().position(|c| !c.eval(v)))
    }

    /// Merges duplicate literals inside each clause and drops tautologies.
    pub fn normalize(&self) -> Normalized {
        let mut out = CnfFormula::new(self.num_vars);
        out.var_names = self.var_names.clone();
        let mut removed = 0;
        for c in &self.clauses {
            if c.is_tautology() {
                removed += 1;
                continue;
            }
            let mut lits: Vec<Literal> = Vec::with_capacity(c.len());
            for l in c.iter() {
                if !lits.contains(&l) {
                    lits.push(l);
                }
            }
            out.clauses.push(Clause(lits));
        }
        let has_unit_clauses = out.clauses.iter().any(|c| c.len() == 1);
        Normalized {
            formula: out,
            removed_tautologies: removed,
            has_unit_clauses,
        }
    }

    /// Exactly-one semantics is undefined for a clause that mentions a
    /// variable twice; such inputs are rejected.
    pub fn check_distinct_vars(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if let Some(var) = c.repeated_var() {
                return Err(Error::RepeatedVariable { clause: i, var });
            }
        }
        Ok(())
    }

    pub fn check_arity(&self, min: usize, max: usize, expected: &'static str) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.len() < min || c.len() > max {
                return Err(Error::Arity {
                    clause: i,
                    arity: c.len(),
                    expected,
                });
            }
        }
        Ok(())
    }

    pub fn check_monotone(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if let Some(l) = c.iter().find(|l| l.is_negated()) {
                return Err(Error::NotMonotone {
                    clause: i,
                    var: l.var(),
                });
            }
        }
        Ok(())
    }

    pub fn check_all_vars_used(&self) -> Result<()> {
        match self.occurrences().iter().position(|&n| n == 0) {
            Some(i) => Err(Error::UnusedVariable { var: i as u32 + 1 }),
            None => Ok(()),
        }
    }

    /// Drops variables that occur in no clause and renumbers the rest densely,
    /// keeping their relative order.
    pub fn compact(&self) -> CnfFormula {
        let occ = self.occurrences();
        let mut map = vec![0u32; self.num_vars as usize + 1];
        let mut next = 0;
        for v in 1..=self.num_vars {
            if occ[v as usize - 1] > 0 {
                next += 1;
                map[v as usize] = next;
            }
        }
        let mut out = CnfFormula::new(next);
        for c in &self.clauses {
            out.clauses
                .push(Clause(c.iter().map(|l| l.with_var(map[l.var() as usize])).collect()));
        }
        for (&v, name) in &self.var_names {
            if map[v as usize] > 0 {
                out.var_names.insert(map[v as usize], name.clone());
            }
        }
        out
    }

    /// Conjunction of two formulas over the same variable range.
    pub fn extend(&mut self, other: &CnfFormula) -> Result<()> {
        for c in other.clauses() {
            self.push(c.clone())?;
        }
        Ok(())
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for c in &self.clauses {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
