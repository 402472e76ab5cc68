//! Counting vertex or element subsets of bounded size: vertex covers,
//! dominating sets and hitting sets (all three are "hit every constraint
//! set" problems) and feedback vertex sets.

use std::time::Instant;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::report::{Budget, CountReport, SizeMode};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::setgraph::SetSystem;

const MAX_BITS: usize = 128;

fn too_big(what: &'static str, n: usize) -> Error {
    Error::BudgetExceeded {
        what,
        required: n.to_string(),
        limit: MAX_BITS.to_string(),
    }
}

fn out_of_nodes(budget: &Budget) -> Error {
    Error::BudgetExceeded {
        what: "search nodes",
        required: format!("more than {}", budget.max_nodes),
        limit: budget.max_nodes.to_string(),
    }
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn full(n: usize) -> u128 {
    if n == MAX_BITS {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Number of ways to add `j` of `free` remaining items so that the total
/// size `have + j` is admitted.
fn completions(free: u32, have: usize, mode: SizeMode) -> BigUint {
    let mut total = BigUint::zero();
    for j in 0..=free as usize {
        if mode.admits(have + j) {
            total += binomial(BigUint::from(free), BigUint::from(j));
        }
    }
    total
}

/// Branching counter for subsets of `0..n` meeting every constraint mask.
///
/// At each node the unhit constraint with the fewest undecided elements is
/// split by which of its elements is the smallest chosen one, so every
/// subset is reached exactly once. Once nothing is left to hit, undecided
/// elements are free and counted by binomials.
struct Hitter<'a> {
    n: usize,
    cons: &'a [u128],
    mode: SizeMode,
    budget: &'a Budget,
    nodes: u64,
    count: BigUint,
    enumerated: Vec<Vec<usize>>,
}

impl Hitter<'_> {
    fn run(&mut self, chosen: u128, excluded: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(out_of_nodes(self.budget));
        }
        let have = chosen.count_ones() as usize;
        let bound = self.mode.bound();
        if have > bound {
            return Ok(());
        }
        let mut best: Option<u128> = None;
        let mut open: Vec<u128> = Vec::new();
        for &c in self.cons {
            if c & chosen != 0 {
                continue;
            }
            let avail = c & !excluded;
            if avail == 0 {
                return Ok(());
            }
            if best.is_none_or(|b| avail.count_ones() < b.count_ones()) {
                best = Some(avail);
            }
            open.push(avail);
        }
        let Some(split) = best else {
            let free = full(self.n) & !chosen & !excluded;
            self.count += completions(free.count_ones(), have, self.mode);
            self.enumerate(chosen, free);
            return Ok(());
        };
        // disjoint open constraints each need their own element
        let mut used = 0u128;
        let mut lower = 0;
        for &a in &open {
            if a & used == 0 {
                used |= a;
                lower += 1;
            }
        }
        if have + lower > bound {
            return Ok(());
        }
        let mut skip = excluded;
        for e in bits(split) {
            self.run(chosen | 1 << e, skip)?;
            skip |= 1 << e;
        }
        Ok(())
    }

    fn enumerate(&mut self, chosen: u128, free: u128) {
        let limit = self.budget.enumerate_limit;
        if self.enumerated.len() >= limit {
            return;
        }
        let free: Vec<usize> = bits(free).collect();
        let base: Vec<usize> = bits(chosen).collect();
        let have = base.len();
        for j in 0..=free.len() {
            if !self.mode.admits(have + j) {
                continue;
            }
            let mut idx: Vec<usize> = (0..j).collect();
            loop {
                if self.enumerated.len() >= limit {
                    return;
                }
                let mut s = base.clone();
                s.extend(idx.iter().map(|&i| free[i]));
                s.sort_unstable();
                self.enumerated.push(s);
                // next j-combination of free
                let Some(p) = (0..j).rev().find(|&p| idx[p] < free.len() - j + p) else {
                    break;
                };
                idx[p] += 1;
                for q in p + 1..j {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
    }
}

fn count_hitting(label: &str, n: usize, cons: &[u128], mode: SizeMode, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let mut h = Hitter {
        n,
        cons,
        mode,
        budget,
        nodes: 0,
        count: BigUint::zero(),
        enumerated: Vec::new(),
    };
    h.run(0, 0)?;
    let mut r = CountReport::new(format!("{label}/{}", mode.label()), h.count, BigUint::one() << n);
    r.nodes = h.nodes;
    r.enumerated = h.enumerated;
    r.elapsed = start.elapsed();
    Ok(r)
}

fn edge_masks(g: &LabeledGraph) -> Result<Vec<u128>> {
    if g.num_vertices() > MAX_BITS {
        return Err(too_big("vertices", g.num_vertices()));
    }
    Ok(g.edges().iter().map(|&(u, v)| 1u128 << u | 1u128 << v).collect())
}

fn closed_neighbourhoods(g: &LabeledGraph) -> Result<Vec<u128>> {
    if g.num_vertices() > MAX_BITS {
        return Err(too_big("vertices", g.num_vertices()));
    }
    Ok(g.adjacency_masks()
        .into_iter()
        .enumerate()
        .map(|(v, m)| m | 1 << v)
        .collect())
}

fn minimum(n: usize, mut count: impl FnMut(usize) -> Result<CountReport>) -> Result<usize> {
    for k in 0..=n {
        if !count(k)?.count.is_zero() {
            return Ok(k);
        }
    }
    unreachable!("the full set always qualifies")
}

pub fn count_vertex_covers(g: &LabeledGraph, mode: SizeMode, budget: &Budget) -> Result<CountReport> {
    count_hitting("vc", g.num_vertices(), &edge_masks(g)?, mode, budget)
}

pub fn min_vertex_cover_size(g: &LabeledGraph, budget: &Budget) -> Result<usize> {
    let cons = edge_masks(g)?;
    minimum(g.num_vertices(), |k| count_hitting("vc", g.num_vertices(), &cons, SizeMode::AtMost(k), budget))
}

/// Dominating sets: every vertex is chosen or adjacent to a chosen one.
pub fn count_dominating_sets(g: &LabeledGraph, mode: SizeMode, budget: &Budget) -> Result<CountReport> {
    count_hitting("ds", g.num_vertices(), &closed_neighbourhoods(g)?, mode, budget)
}

pub fn min_dominating_set_size(g: &LabeledGraph, budget: &Budget) -> Result<usize> {
    let cons = closed_neighbourhoods(g)?;
    minimum(g.num_vertices(), |k| count_hitting("ds", g.num_vertices(), &cons, SizeMode::AtMost(k), budget))
}

pub fn count_hitting_sets(s: &SetSystem, mode: SizeMode, budget: &Budget) -> Result<CountReport> {
    if s.ground_size() > MAX_BITS {
        return Err(too_big("elements", s.ground_size()));
    }
    let cons: Vec<u128> = s.sets().iter().map(|set| set.iter().fold(0u128, |m, &e| m | 1 << e)).collect();
    count_hitting("hs", s.ground_size(), &cons, mode, budget)
}

/// Undirected feedback vertex sets: removing them leaves a forest.
///
/// Vertices are decided in index order; a kept vertex joins its kept
/// neighbours in a union-find, and closing a cycle kills the branch.
pub fn count_feedback_vertex_sets(g: &LabeledGraph, mode: SizeMode, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let n = g.num_vertices();
    if n > MAX_BITS {
        return Err(too_big("vertices", n));
    }
    struct Fvs<'a> {
        g: &'a LabeledGraph,
        mode: SizeMode,
        budget: &'a Budget,
        nodes: u64,
        count: BigUint,
        enumerated: Vec<Vec<usize>>,
        chosen: Vec<usize>,
    }
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    impl Fvs<'_> {
        fn run(&mut self, v: usize, parent: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(out_of_nodes(self.budget));
            }
            let n = self.g.num_vertices();
            let have = self.chosen.len();
            if have > self.mode.bound() {
                return Ok(());
            }
            if let SizeMode::Exact(k) = self.mode {
                if have + (n - v) < k {
                    return Ok(());
                }
            }
            if v == n {
                if self.mode.admits(have) {
                    self.count += 1u32;
                    if self.enumerated.len() < self.budget.enumerate_limit {
                        self.enumerated.push(self.chosen.clone());
                    }
                }
                return Ok(());
            }
            // keep v
            let mut p = parent.clone();
            let mut ok = true;
            for &w in self.g.neighbors(v) {
                if w < v && p[w] != usize::MAX {
                    let (a, b) = (find(&mut p, v), find(&mut p, w));
                    if a == b {
                        ok = false;
                        break;
                    }
                    p[a] = b;
                }
            }
            if ok {
                self.run(v + 1, &mut p)?;
            }
            // remove v
            self.chosen.push(v);
            parent[v] = usize::MAX;
            self.run(v + 1, parent)?;
            parent[v] = v;
            self.chosen.pop();
            Ok(())
        }
    }
    let mut s = Fvs {
        g,
        mode,
        budget,
        nodes: 0,
        count: BigUint::zero(),
        enumerated: Vec::new(),
        chosen: Vec::new(),
    };
    let mut parent: Vec<usize> = (0..n).collect();
    s.run(0, &mut parent)?;
    let mut r = CountReport::new(format!("fvs/{}", mode.label()), s.count, BigUint::one() << n);
    r.nodes = s.nodes;
    r.enumerated = s.enumerated;
    r.elapsed = start.elapsed();
    Ok(r)
}

pub fn min_feedback_vertex_set_size(g: &LabeledGraph, budget: &Budget) -> Result<usize> {
    minimum(g.num_vertices(), |k| count_feedback_vertex_sets(g, SizeMode::Exact(k), budget))
}
