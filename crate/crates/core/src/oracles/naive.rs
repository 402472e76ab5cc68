//! Plain enumeration counterparts of the pruned graph and set counters.
//! Slow on purpose: they only exist to be compared against.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::setgraph::SetSystem;

use super::SizeMode;

const LIMIT: usize = 22;

fn subsets(n: usize, mut keep: impl FnMut(u64) -> bool) -> Result<u64> {
    if n > LIMIT {
        return Err(Error::BudgetExceeded {
            what: "items for naive enumeration",
            required: n.to_string(),
            limit: LIMIT.to_string(),
        });
    }
    Ok((0..1u64 << n).filter(|&m| keep(m)).count() as u64)
}

fn sized(mode: SizeMode, m: u64) -> bool {
    mode.admits(m.count_ones() as usize)
}

pub fn vertex_covers(g: &LabeledGraph, mode: SizeMode) -> Result<u64> {
    subsets(g.num_vertices(), |m| {
        sized(mode, m) && g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1)
    })
}

pub fn dominating_sets(g: &LabeledGraph, mode: SizeMode) -> Result<u64> {
    subsets(g.num_vertices(), |m| {
        sized(mode, m)
            && (0..g.num_vertices()).all(|v| m >> v & 1 == 1 || g.neighbors(v).iter().any(|&w| m >> w & 1 == 1))
    })
}

pub fn hitting_sets(s: &SetSystem, mode: SizeMode) -> Result<u64> {
    subsets(s.ground_size(), |m| {
        sized(mode, m) && s.sets().iter().all(|set| set.iter().any(|&e| m >> e & 1 == 1))
    })
}

/// Removal leaves a forest iff the kept edges number kept vertices minus
/// kept components.
pub fn feedback_vertex_sets(g: &LabeledGraph, mode: SizeMode) -> Result<u64> {
    let n = g.num_vertices();
    subsets(n, |m| {
        if !sized(mode, m) {
            return false;
        }
        let kept: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| m >> u & 1 == 0 && m >> v & 1 == 0)
            .collect();
        let sub = LabeledGraph::from_edges(n, &kept).expect("subgraph");
        let comps = sub.components();
        let kept_v = (0..n).filter(|&v| m >> v & 1 == 0).count();
        let mut roots: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 0).map(|v| comps[v]).collect();
        roots.sort_unstable();
        roots.dedup();
        kept.len() == kept_v - roots.len()
    })
}

pub fn exact_covers(s: &SetSystem) -> Result<u64> {
    let idx: Vec<usize> = (0..s.num_sets()).collect();
    subsets(s.num_sets(), |m| {
        let sel: Vec<usize> = idx.iter().copied().filter(|&i| m >> i & 1 == 1).collect();
        s.is_exact_cover(&sel)
    })
}

/// Every family of `n/3` vertex-disjoint triangles covering all vertices.
pub fn triangle_partitions(g: &LabeledGraph) -> Result<u64> {
    let n = g.num_vertices();
    let mut tris = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    tris.push(1u64 << a | 1 << b | 1 << c);
                }
            }
        }
    }
    disjoint_unions(&tris, if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
}

/// Every family of edge-disjoint claws covering all edges.
pub fn claw_partitions(g: &LabeledGraph) -> Result<u64> {
    let m = g.num_edges();
    let mut claws = Vec::new();
    for c in 0..g.num_vertices() {
        let inc: Vec<usize> = (0..m).filter(|&e| g.edges()[e].0 == c || g.edges()[e].1 == c).collect();
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                for k in j + 1..inc.len() {
                    claws.push(1u64 << inc[i] | 1 << inc[j] | 1 << inc[k]);
                }
            }
        }
    }
    disjoint_unions(&claws, if m == 64 { u64::MAX } else { (1u64 << m) - 1 })
}

fn disjoint_unions(parts: &[u64], target: u64) -> Result<u64> {
    subsets(parts.len(), |m| {
        let mut acc = 0u64;
        for (i, &p) in parts.iter().enumerate() {
            if m >> i & 1 == 1 {
                if acc & p != 0 {
                    return false;
                }
                acc |= p;
            }
        }
        acc == target
    })
}
