//! Model counting under at-least-one and exactly-one clause semantics.
//!
//! `count_sat` and `count_ex1` run an exhaustive DPLL search with unit
//! propagation and no caching: every branch is explored, a branch with all
//! clauses satisfied contributes 2^(unassigned variables), and nothing is
//! ever estimated. The `_naive` variants enumerate all 2^n assignment words
//! and serve as a differential check.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::report::{Budget, CountReport};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, Literal};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// At least one true literal per clause.
    Sat,
    /// Exactly one true literal per clause.
    ExactlyOne,
}

impl Semantics {
    fn label(self) -> &'static str {
        match self {
            Semantics::Sat => "sat",
            Semantics::ExactlyOne => "ex1",
        }
    }
}

const UNASSIGNED: i8 = -1;

struct Engine<'a> {
    sem: Semantics,
    clauses: &'a [crate::formula::Clause],
    occ: Vec<Vec<(u32, bool)>>,
    value: Vec<i8>,
    n_true: Vec<u32>,
    n_false: Vec<u32>,
    /// Clauses with no true literal yet.
    open: usize,
    trail: Vec<u32>,
    pending: Vec<Literal>,
    conflict: bool,
    unassigned: u32,
    /// `implied[2v + b] == epoch` when probing already set `v = b` as a
    /// consequence of a probe that did not fail, so probing it again cannot
    /// fail either. Any real assignment starts a new epoch.
    implied: Vec<u32>,
    epoch: u32,
}

impl<'a> Engine<'a> {
    fn new(f: &'a CnfFormula, sem: Semantics) -> Self {
        let n = f.num_vars() as usize;
        let mut occ = vec![Vec::new(); n + 1];
        for (j, c) in f.clauses().iter().enumerate() {
            for l in c.iter() {
                occ[l.var() as usize].push((j as u32, l.is_positive()));
            }
        }
        Engine {
            sem,
            clauses: f.clauses(),
            occ,
            value: vec![UNASSIGNED; n + 1],
            n_true: vec![0; f.num_clauses()],
            n_false: vec![0; f.num_clauses()],
            open: f.num_clauses(),
            trail: Vec::with_capacity(n),
            pending: Vec::new(),
            conflict: false,
            unassigned: n as u32,
            implied: vec![0; 2 * n + 2],
            epoch: 0,
        }
    }

    fn lit_value(&self, l: Literal) -> Option<bool> {
        match self.value[l.var() as usize] {
            UNASSIGNED => None,
            v => Some(l.eval(v == 1)),
        }
    }

    fn assign(&mut self, l: Literal) {
        let v = l.var() as usize;
        let val = l.is_positive();
        self.value[v] = val as i8;
        self.trail.push(v as u32);
        self.unassigned -= 1;
        for k in 0..self.occ[v].len() {
            let (c, pos) = self.occ[v][k];
            let c = c as usize;
            let lit_true = pos == val;
            if lit_true {
                self.n_true[c] += 1;
                if self.n_true[c] == 1 {
                    self.open -= 1;
                }
            } else {
                self.n_false[c] += 1;
            }
            self.check(c, lit_true);
        }
    }

    fn check(&mut self, c: usize, lit_true: bool) {
        let len = self.clauses[c].len() as u32;
        let (t, fl) = (self.n_true[c], self.n_false[c]);
        if self.sem == Semantics::ExactlyOne && lit_true {
            if t >= 2 {
                self.conflict = true;
            } else if t == 1 {
                for l in self.clauses[c].iter() {
                    if self.lit_value(l).is_none() {
                        self.pending.push(!l);
                    }
                }
            }
            return;
        }
        if t == 0 {
            if fl == len {
                self.conflict = true;
            } else if fl + 1 == len {
                let l = self.clauses[c]
                    .iter()
                    .find(|&l| self.lit_value(l).is_none())
                    .expect("one literal left");
                self.pending.push(l);
            }
        }
    }

    fn unassign_last(&mut self) {
        let v = self.trail.pop().unwrap() as usize;
        let val = self.value[v] == 1;
        for k in 0..self.occ[v].len() {
            let (c, pos) = self.occ[v][k];
            let c = c as usize;
            if pos == val {
                self.n_true[c] -= 1;
                if self.n_true[c] == 0 {
                    self.open += 1;
                }
            } else {
                self.n_false[c] -= 1;
            }
        }
        self.value[v] = UNASSIGNED;
        self.unassigned += 1;
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            self.unassign_last();
        }
    }

    /// Drains the pending queue; false on conflict.
    fn propagate(&mut self) -> bool {
        while let Some(l) = self.pending.pop() {
            match self.lit_value(l) {
                None => {
                    self.assign(l);
                    if self.conflict {
                        break;
                    }
                }
                Some(true) => {}
                Some(false) => {
                    self.conflict = true;
                    break;
                }
            }
        }
        if self.conflict {
            self.pending.clear();
            self.conflict = false;
            return false;
        }
        true
    }

    /// Free variables of shrunk clauses that mention a variable on the trail
    /// from `from` onward.
    fn frontier(&self, from: usize, queue: &mut Vec<u32>, queued: &mut [bool]) {
        for &x in &self.trail[from..] {
            for &(c, _) in &self.occ[x as usize] {
                let c = c as usize;
                if self.n_true[c] != 0 {
                    continue;
                }
                for l in self.clauses[c].iter() {
                    let v = l.var();
                    if self.value[v as usize] == UNASSIGNED && !queued[v as usize] {
                        queued[v as usize] = true;
                        queue.push(v);
                    }
                }
            }
        }
    }

    /// Failed-literal probing: if setting a variable one way conflicts, every
    /// model sets it the other way. Candidates are the free variables of
    /// clauses touched since `from`, plus whatever each implication touches.
    /// False on conflict.
    fn probe(&mut self, from: usize, queued: &mut [bool]) -> bool {
        let mut queue = Vec::new();
        self.frontier(from, &mut queue, queued);
        self.probe_queue(queue, queued)
    }

    /// Probes every free variable of an open clause.
    fn probe_all(&mut self, queued: &mut [bool]) -> bool {
        let mut queue = Vec::new();
        for c in 0..self.clauses.len() {
            if self.n_true[c] != 0 {
                continue;
            }
            for l in self.clauses[c].iter() {
                let v = l.var();
                if self.value[v as usize] == UNASSIGNED && !queued[v as usize] {
                    queued[v as usize] = true;
                    queue.push(v);
                }
            }
        }
        // pop order visits low variables first
        queue.reverse();
        self.probe_queue(queue, queued)
    }

    fn probe_queue(&mut self, mut queue: Vec<u32>, queued: &mut [bool]) -> bool {
        let mut ok = true;
        self.epoch += 1;
        while let Some(v) = queue.pop() {
            queued[v as usize] = false;
            if !ok || self.value[v as usize] != UNASSIGNED {
                continue;
            }
            let mark = self.trail.len();
            let mut failed = [false; 2];
            for (i, pos) in [true, false].into_iter().enumerate() {
                if self.implied[2 * v as usize + pos as usize] == self.epoch {
                    continue;
                }
                self.pending.push(Literal::new(v, pos));
                failed[i] = !self.propagate();
                if !failed[i] {
                    for &x in &self.trail[mark + 1..] {
                        self.implied[2 * x as usize + self.value[x as usize] as usize] = self.epoch;
                    }
                }
                self.undo_to(mark);
            }
            match failed {
                [true, true] => ok = false,
                [false, false] => {}
                _ => {
                    self.epoch += 1;
                    self.pending.push(Literal::new(v, failed[1]));
                    if self.propagate() {
                        self.frontier(mark, &mut queue, queued);
                    } else {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    /// Branch on the lowest free variable of an open clause, false first.
    /// Reductions number source variables before gadget variables, so the
    /// search runs over source assignments and propagation plus probing
    /// settles the gadgets.
    fn choose(&self) -> Literal {
        let mut best = u32::MAX;
        for c in 0..self.clauses.len() {
            if self.n_true[c] != 0 {
                continue;
            }
            for l in self.clauses[c].iter() {
                if l.var() < best && self.lit_value(l).is_none() {
                    best = l.var();
                }
            }
        }
        assert!(best != u32::MAX, "called with an open clause");
        Literal::neg(best)
    }

    fn record_leaf(&self, out: &mut Vec<Vec<usize>>, limit: usize) {
        let n = self.value.len() - 1;
        let fixed: Vec<usize> = (1..=n).filter(|&v| self.value[v] == 1).collect();
        let free: Vec<usize> = (1..=n).filter(|&v| self.value[v] == UNASSIGNED).collect();
        let mut mask: u64 = 0;
        while out.len() < limit {
            let mut s = fixed.clone();
            for (i, &v) in free.iter().enumerate() {
                if i < 64 && mask >> i & 1 == 1 {
                    s.push(v);
                }
            }
            s.sort_unstable();
            out.push(s);
            mask += 1;
            if free.len() < 64 && mask >> free.len() != 0 {
                break;
            }
        }
    }
}

struct Frame {
    lit: Literal,
    flipped: bool,
    trail_len: usize,
}

/// Exhaustive pruned count with literals in `assumptions` forced true.
pub(crate) fn dpll_count(
    f: &CnfFormula,
    sem: Semantics,
    assumptions: &[Literal],
    budget: &Budget,
) -> Result<(BigUint, u64, Vec<Vec<usize>>)> {
    let mut total = BigUint::zero();
    let mut nodes = 0u64;
    let mut found = Vec::new();
    if f.clauses().iter().any(|c| c.is_empty()) {
        return Ok((total, nodes, found));
    }
    let mut e = Engine::new(f, sem);
    for c in f.clauses() {
        if c.len() == 1 {
            e.pending.push(c.literals()[0]);
        }
    }
    e.pending.extend_from_slice(assumptions);
    let mut frames: Vec<Frame> = Vec::new();
    let mut ok = e.propagate();
    let mut queued = vec![false; f.num_vars() as usize + 1];
    // trail position before the latest decision; probing looks at what
    // changed since then
    let mut since = 0;
    if ok && e.open > 0 {
        ok = e.probe_all(&mut queued);
    }
    loop {
        if ok && e.open > 0 {
            ok = e.probe(since, &mut queued);
        }
        if ok {
            if e.open == 0 {
                total += BigUint::one() << e.unassigned;
                if found.len() < budget.enumerate_limit {
                    e.record_leaf(&mut found, budget.enumerate_limit);
                }
            } else {
                nodes += 1;
                if nodes > budget.max_nodes {
                    return Err(Error::BudgetExceeded {
                        what: "search nodes",
                        required: format!("more than {}", budget.max_nodes),
                        limit: budget.max_nodes.to_string(),
                    });
                }
                let lit = e.choose();
                since = e.trail.len();
                frames.push(Frame {
                    lit,
                    flipped: false,
                    trail_len: e.trail.len(),
                });
                e.pending.push(lit);
                ok = e.propagate();
                continue;
            }
        }
        loop {
            let Some(fr) = frames.last_mut() else {
                return Ok((total, nodes, found));
            };
            let (len, flipped, lit) = (fr.trail_len, fr.flipped, fr.lit);
            e.undo_to(len);
            if flipped {
                frames.pop();
                continue;
            }
            frames.last_mut().unwrap().flipped = true;
            since = len;
            e.pending.push(!lit);
            break;
        }
        ok = e.propagate();
    }
}

fn report(f: &CnfFormula, sem: Semantics, budget: &Budget, assumptions: &[Literal]) -> Result<CountReport> {
    let start = Instant::now();
    if sem == Semantics::ExactlyOne {
        f.check_distinct_vars()?;
    }
    let (count, nodes, enumerated) = dpll_count(f, sem, assumptions, budget)?;
    let mut r = CountReport::new(sem.label(), count, BigUint::one() << f.num_vars());
    r.nodes = nodes;
    r.enumerated = enumerated;
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Number of assignments satisfying every clause.
pub fn count_sat(f: &CnfFormula, budget: &Budget) -> Result<CountReport> {
    report(f, Semantics::Sat, budget, &[])
}

/// Number of assignments making exactly one literal true in every clause.
/// Clauses that mention a variable twice are rejected.
pub fn count_ex1(f: &CnfFormula, budget: &Budget) -> Result<CountReport> {
    report(f, Semantics::ExactlyOne, budget, &[])
}

/// Count restricted to assignments that make every literal in `assumptions` true.
pub fn count_under(f: &CnfFormula, sem: Semantics, assumptions: &[Literal], budget: &Budget) -> Result<CountReport> {
    report(f, sem, budget, assumptions)
}

struct Masks {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

fn masks(f: &CnfFormula) -> Masks {
    let mut pos = Vec::with_capacity(f.num_clauses());
    let mut neg = Vec::with_capacity(f.num_clauses());
    for c in f.clauses() {
        let (mut p, mut n) = (0u64, 0u64);
        for l in c.iter() {
            let bit = 1u64 << (l.var() - 1);
            if l.is_positive() {
                p |= bit;
            } else {
                n |= bit;
            }
        }
        pos.push(p);
        neg.push(n);
    }
    Masks { pos, neg }
}

fn word_ok(m: &Masks, sem: Semantics, w: u64) -> bool {
    match sem {
        Semantics::Sat => m.pos.iter().zip(&m.neg).all(|(&p, &n)| w & p != 0 || !w & n != 0),
        Semantics::ExactlyOne => m
            .pos
            .iter()
            .zip(&m.neg)
            .all(|(&p, &n)| ((w & p).count_ones() + (!w & n).count_ones()) == 1),
    }
}

/// Plain enumeration over all 2^n assignment words in increasing order.
/// Word bit `v - 1` is the value of variable `v`.
pub fn count_naive(f: &CnfFormula, sem: Semantics, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let n = f.num_vars();
    if n > budget.max_naive_vars {
        return Err(Error::BudgetExceeded {
            what: "variables for enumeration",
            required: n.to_string(),
            limit: budget.max_naive_vars.to_string(),
        });
    }
    if sem == Semantics::ExactlyOne {
        f.check_distinct_vars()?;
    }
    let m = masks(f);
    let space = 1u64 << n;
    const SHARD: u64 = 1 << 14;
    let shards = space.div_ceil(SHARD);
    let count: u64 = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = s * SHARD;
            let hi = (lo + SHARD).min(space);
            (lo..hi).filter(|&w| word_ok(&m, sem, w)).count() as u64
        })
        .sum();
    let mut r = CountReport::new(sem.label(), BigUint::from(count), BigUint::from(space));
    r.nodes = space;
    if budget.enumerate_limit > 0 {
        r.enumerated = (0..space)
            .filter(|&w| word_ok(&m, sem, w))
            .take(budget.enumerate_limit)
            .map(|w| (0..n as usize).filter(|&i| w >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_3cnf, ArityMix};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn small_counts() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(count_sat(&f, &b()).unwrap().count, BigUint::from(7u32));
        assert_eq!(count_ex1(&f, &b()).unwrap().count, BigUint::from(3u32));
        let empty = CnfFormula::new(5);
        assert_eq!(count_sat(&empty, &b()).unwrap().count, BigUint::from(32u32));
        let unsat = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert!(count_sat(&unsat, &b()).unwrap().count.is_zero());
    }

    #[test]
    fn repeated_variable_rejected_for_ex1() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 1, 2]]).unwrap();
        assert!(count_ex1(&f, &b()).is_err());
        assert!(count_naive(&f, Semantics::ExactlyOne, &b()).is_err());
        assert_eq!(count_sat(&f, &b()).unwrap().count, BigUint::from(3u32));
    }

    #[test]
    fn differential_against_enumeration() {
        for seed in 0..300 {
            let mix = [ArityMix::MIXED, ArityMix::ALL_THREE, ArityMix::ALL_TWO][seed as usize % 3];
            let f = random_3cnf(3 + (seed % 10) as u32, 1 + (seed % 13) as usize, mix, seed).unwrap();
            for sem in [Semantics::Sat, Semantics::ExactlyOne] {
                let fast = count_under(&f, sem, &[], &b()).unwrap();
                let slow = count_naive(&f, sem, &b()).unwrap();
                assert_eq!(fast.count, slow.count, "seed {seed} {sem:?}\n{f}");
            }
        }
    }

    #[test]
    fn enumeration_is_bounded_and_valid() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 2], &[-3, 4]]).unwrap();
        let r = count_sat(&f, &Budget::enumerating(5)).unwrap();
        assert_eq!(r.enumerated.len(), 5);
        let all = count_sat(&f, &Budget::enumerating(100)).unwrap();
        assert_eq!(all.enumerated.len() as u64, 9);
        let mut sorted = all.enumerated.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        let naive = count_naive(&f, Semantics::Sat, &Budget::enumerating(3)).unwrap();
        assert_eq!(naive.enumerated, vec![vec![1], vec![2], vec![1, 2]]);
    }

    #[test]
    fn budget_is_an_error() {
        let f = random_3cnf(12, 10, ArityMix::ALL_THREE, 3).unwrap();
        assert!(matches!(
            count_sat(&f, &Budget::with_nodes(2)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn assumptions_restrict() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let r = count_under(&f, Semantics::ExactlyOne, &[Literal::pos(1)], &b()).unwrap();
        assert_eq!(r.count, BigUint::one());
    }
}
