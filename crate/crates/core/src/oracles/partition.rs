//! Exact covers, vertex partitions into triangles and edge partitions into
//! claws. Each search branches on the lowest uncovered item, so every
//! unordered partition is counted once.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::report::{Budget, CountReport};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::setgraph::SetSystem;

struct Search<'a> {
    budget: &'a Budget,
    nodes: u64,
    count: BigUint,
    enumerated: Vec<Vec<usize>>,
    stack: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(budget: &'a Budget) -> Self {
        Search {
            budget,
            nodes: 0,
            count: BigUint::zero(),
            enumerated: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                what: "search nodes",
                required: format!("more than {}", self.budget.max_nodes),
                limit: self.budget.max_nodes.to_string(),
            });
        }
        Ok(())
    }

    fn found(&mut self) {
        self.count += 1u32;
        if self.enumerated.len() < self.budget.enumerate_limit {
            let mut s = self.stack.clone();
            s.sort_unstable();
            self.enumerated.push(s);
        }
    }

    fn report(self, mode: &str, space: BigUint, start: Instant) -> CountReport {
        let mut r = CountReport::new(mode, self.count, space);
        r.nodes = self.nodes;
        r.enumerated = self.enumerated;
        r.elapsed = start.elapsed();
        r
    }
}

/// Sub-families whose members partition the ground set; duplicate sets
/// count separately. Enumerated solutions list the chosen set indices.
pub fn count_exact_covers(s: &SetSystem, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let mut by_elem = vec![Vec::new(); s.ground_size()];
    let mut empty = 0u32;
    for (i, set) in s.sets().iter().enumerate() {
        if set.is_empty() {
            empty += 1;
        }
        for &e in set {
            by_elem[e].push(i);
        }
    }
    fn run(s: &SetSystem, by_elem: &[Vec<usize>], covered: &mut [bool], st: &mut Search) -> Result<()> {
        st.tick()?;
        let fits = |i: usize, covered: &[bool]| s.sets()[i].iter().all(|&e| !covered[e]);
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..covered.len() {
            if covered[e] {
                continue;
            }
            let k = by_elem[e].iter().filter(|&&i| fits(i, covered)).count();
            if pick.is_none_or(|(_, best)| k < best) {
                pick = Some((e, k));
                if k == 0 {
                    return Ok(());
                }
            }
        }
        let Some((e, _)) = pick else {
            st.found();
            return Ok(());
        };
        for &i in &by_elem[e] {
            if !fits(i, covered) {
                continue;
            }
            for &x in &s.sets()[i] {
                covered[x] = true;
            }
            st.stack.push(i);
            run(s, by_elem, covered, st)?;
            st.stack.pop();
            for &x in &s.sets()[i] {
                covered[x] = false;
            }
        }
        Ok(())
    }
    let mut st = Search::new(budget);
    let mut covered = vec![false; s.ground_size()];
    run(s, &by_elem, &mut covered, &mut st)?;
    // empty sets may be added to any cover
    st.count <<= empty;
    Ok(st.report("x3c", BigUint::one() << s.num_sets(), start))
}

/// Partitions of the vertex set into triangles. Enumerated solutions are
/// the vertex lists of the triangles, three at a time.
pub fn count_triangle_partitions(g: &LabeledGraph, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let n = g.num_vertices();
    if !n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!("{n} vertices cannot split into triangles")));
    }
    if n > 128 {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            required: n.to_string(),
            limit: "128".into(),
        });
    }
    let adj = g.adjacency_masks();
    fn run(adj: &[u128], left: u128, st: &mut Search) -> Result<()> {
        st.tick()?;
        if left == 0 {
            let mut parts: Vec<[usize; 3]> = st.stack.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
            parts.sort_unstable();
            let saved = std::mem::replace(&mut st.stack, parts.concat());
            st.count += 1u32;
            if st.enumerated.len() < st.budget.enumerate_limit {
                st.enumerated.push(st.stack.clone());
            }
            st.stack = saved;
            return Ok(());
        }
        let v = left.trailing_zeros() as usize;
        let mut cand = adj[v] & left;
        while cand != 0 {
            let a = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let mut rest = adj[a] & cand;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                st.stack.extend([v, a, b]);
                run(adj, left & !(1 << v | 1 << a | 1 << b), st)?;
                st.stack.truncate(st.stack.len() - 3);
            }
        }
        Ok(())
    }
    let mut st = Search::new(budget);
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    run(&adj, all, &mut st)?;
    let triangles = count_triangles(&adj);
    Ok(st.report("triangles", BigUint::one() << triangles, start))
}

fn count_triangles(adj: &[u128]) -> usize {
    let mut t = 0;
    for v in 0..adj.len() {
        let mut hi = adj[v] & !((2u128 << v) - 1);
        while hi != 0 {
            let a = hi.trailing_zeros() as usize;
            hi &= hi - 1;
            t += (adj[a] & hi).count_ones() as usize;
        }
    }
    t
}

/// Partitions of the edge set into copies of K_{1,3}. Enumerated solutions
/// are edge ids, three per claw.
pub fn count_claw_partitions(g: &LabeledGraph, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let m = g.num_edges();
    if !m.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!("{m} edges cannot split into claws")));
    }
    let n = g.num_vertices();
    let mut inc = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        inc[u].push(e);
        inc[v].push(e);
    }
    fn run(g: &LabeledGraph, inc: &[Vec<usize>], used: &mut [bool], st: &mut Search) -> Result<()> {
        st.tick()?;
        let Some(e) = used.iter().position(|&u| !u) else {
            let mut parts: Vec<[usize; 3]> = st.stack.chunks(3).map(|c| {
                let mut p = [c[0], c[1], c[2]];
                p.sort_unstable();
                p
            }).collect();
            parts.sort_unstable();
            let saved = std::mem::replace(&mut st.stack, parts.concat());
            st.count += 1u32;
            if st.enumerated.len() < st.budget.enumerate_limit {
                st.enumerated.push(st.stack.clone());
            }
            st.stack = saved;
            return Ok(());
        };
        let (u, v) = g.edges()[e];
        used[e] = true;
        for c in [u, v] {
            let free: Vec<usize> = inc[c].iter().copied().filter(|&x| !used[x]).collect();
            for i in 0..free.len() {
                for j in i + 1..free.len() {
                    used[free[i]] = true;
                    used[free[j]] = true;
                    st.stack.extend([e, free[i], free[j]]);
                    run(g, inc, used, st)?;
                    st.stack.truncate(st.stack.len() - 3);
                    used[free[i]] = false;
                    used[free[j]] = false;
                }
            }
        }
        used[e] = false;
        Ok(())
    }
    let mut st = Search::new(budget);
    let mut used = vec![false; m];
    run(g, &inc, &mut used, &mut st)?;
    Ok(st.report("claws", BigUint::one() << m, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn exact_cover_examples() {
        let one = SetSystem::from_sets(3, &[&[0, 1, 2]]).unwrap();
        let dup = SetSystem::from_sets(3, &[&[0, 1, 2], &[0, 1, 2]]).unwrap();
        let six = SetSystem::from_sets(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 1, 3]]).unwrap();
        assert_eq!(count_exact_covers(&one, &b()).unwrap().count, 1u32.into());
        assert_eq!(count_exact_covers(&dup, &b()).unwrap().count, 2u32.into());
        assert_eq!(count_exact_covers(&six, &b()).unwrap().count, 1u32.into());
        assert_eq!(count_exact_covers(&SetSystem::new(0), &b()).unwrap().count, 1u32.into());
    }

    #[test]
    fn triangle_examples() {
        let tri = LabeledGraph::complete(3);
        assert_eq!(count_triangle_partitions(&tri, &b()).unwrap().count, 1u32.into());
        let two = LabeledGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(count_triangle_partitions(&two, &b()).unwrap().count, 1u32.into());
        // K6 splits into two triangles in C(6,3)/2 ways
        assert_eq!(count_triangle_partitions(&LabeledGraph::complete(6), &b()).unwrap().count, 10u32.into());
        assert!(count_triangle_partitions(&LabeledGraph::complete(4), &b()).is_err());
    }

    #[test]
    fn claw_examples() {
        let k13 = LabeledGraph::complete_bipartite(1, 3);
        assert_eq!(count_claw_partitions(&k13, &b()).unwrap().count, 1u32.into());
        let k16 = LabeledGraph::complete_bipartite(1, 6);
        assert_eq!(count_claw_partitions(&k16, &b()).unwrap().count, 10u32.into());
    }
}
