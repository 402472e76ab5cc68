use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formula::{emit_dimacs, BoolExpr, CnfFormula, Literal};
use crate::graph::{emit_graph, LabeledGraph, VertexTag};
use crate::oracles::SizeMode;
use crate::reduction::{Def, FreshBlock, Instance, Lifter, Problem, ReductionOutput};

use super::rotation::rotation;
use super::SetSystem;

/// Pairs of clause positions forming the 2-literal clauses of each group,
/// in the order `(¬x+¬y)(¬x+¬z)(¬z+¬y)`.
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (2, 1)];

/// Vertex cover instance for a monotone exactly-one formula with 3-literal
/// clauses. Each clause group (the clause plus its three exclusion clauses)
/// becomes a triangle and three edges; each variable with `g` occurrences
/// becomes a cycle of length `4g`.
///
/// Covers of size `K = 11m` are exactly `2^m` times the exactly-one models:
/// in every group the one edge between two false literals may be covered
/// from either end.
pub fn mono_to_vertex_cover(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_monotone()?;
    f.check_arity(3, 3, "exactly 3 literals")?;
    f.check_distinct_vars()?;
    f.check_all_vars_used()?;
    let n = f.num_vars();
    let m = f.num_clauses();
    let rot = rotation(f);
    let mut g = LabeledGraph::new();
    let mut conditions = Vec::new();
    let mut fresh_blocks = Vec::new();
    // slot[(clause, position)] = first cycle vertex of that occurrence block
    let mut block = vec![[0usize; 3]; m];
    let mut cycle_size = 0;

    for x in 1..=n {
        let occ = &rot.occurrences[x as usize];
        let len = 4 * occ.len();
        let base = g.num_vertices();
        for slot in 1..=len {
            g.add_vertex(VertexTag::Gadget {
                kind: "cycle",
                owner: x as usize,
                slot,
            });
            // odd slots meet negated occurrences, even ones the unnegated
            let lit = if slot % 2 == 1 { Literal::neg(x) } else { Literal::pos(x) };
            conditions.push(Def::Expr(BoolExpr::lit(lit)));
        }
        fresh_blocks.push(FreshBlock {
            gadget: "vc-cycle",
            owner: x as usize,
            start: base,
            len,
        });
        for (k, &(clause, pos)) in occ.iter().enumerate() {
            block[clause][pos] = base + 4 * k;
        }
        cycle_size += len / 2;
    }

    let mut triangles = Vec::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    for (j, c) in f.clauses().iter().enumerate() {
        let var = |p: usize| c.literals()[p].var();
        let base = g.num_vertices();
        for p in 0..3 {
            g.add_vertex(VertexTag::Gadget {
                kind: "triangle",
                owner: j,
                slot: p,
            });
            conditions.push(Def::Expr(BoolExpr::lit(Literal::neg(var(p)))));
        }
        let bit = BoolExpr::var(n + 1 + j as u32);
        for (q, &(p, r)) in PAIRS.iter().enumerate() {
            for (side, (me, other)) in [(p, r), (r, p)].into_iter().enumerate() {
                g.add_vertex(VertexTag::Gadget {
                    kind: "pair",
                    owner: j,
                    slot: 2 * q + side,
                });
                let both_false = vec![
                    BoolExpr::lit(Literal::neg(var(me))),
                    BoolExpr::lit(Literal::neg(var(other))),
                    if side == 0 { bit.clone() } else { BoolExpr::not(bit.clone()) },
                ];
                conditions.push(Def::Expr(BoolExpr::or(vec![BoolExpr::var(var(me)), BoolExpr::and(both_false)])));
            }
        }
        fresh_blocks.push(FreshBlock {
            gadget: "vc-group",
            owner: j,
            start: base,
            len: 9,
        });
        triangles.push(base);
        pairs.push(base + 3);
    }

    let add = |g: &mut LabeledGraph, u: usize, v: usize| g.add_edge(u, v).map(|_| ());
    for x in 1..=n {
        let occ = rot.occurrences[x as usize].len();
        let start = fresh_blocks[x as usize - 1].start;
        let len = 4 * occ;
        for i in 0..len {
            add(&mut g, start + i, start + (i + 1) % len)?;
        }
    }
    for &t in &triangles {
        add(&mut g, t, t + 1)?;
        add(&mut g, t + 1, t + 2)?;
        add(&mut g, t + 2, t)?;
    }
    for &p in &pairs {
        for q in 0..3 {
            add(&mut g, p + 2 * q, p + 2 * q + 1)?;
        }
    }
    for j in 0..m {
        // walking the clause's literals in rotation order, each occurrence
        // block meets (next pair, triangle, previous pair) on slots 1, 2, 3
        let order = &rot.positions[j];
        for (i, &p) in order.iter().enumerate() {
            let next = order[(i + 1) % 3];
            let prev = order[(i + 2) % 3];
            let b = block[j][p];
            add(&mut g, b, pair_vertex(pairs[j], p, next))?;
            add(&mut g, b + 1, triangles[j] + p)?;
            add(&mut g, b + 2, pair_vertex(pairs[j], p, prev))?;
        }
    }

    let k = cycle_size + 5 * m;
    let lifter = Lifter::Select {
        source_vars: n,
        free_bits: m as u32,
        conditions,
    };
    let mut out = ReductionOutput::new(
        "mono_to_vertex_cover",
        Problem::ExactlyOne,
        &emit_dimacs(f),
        Problem::VertexCover(SizeMode::Exact(k)),
        Instance::Graph(g),
        lifter,
    );
    out.multiplier = BigUint::from(2u32).pow(m as u32);
    out.fresh_blocks = fresh_blocks;
    Ok(out)
}

/// Endpoint owned by position `me` of the pair edge between `me` and `other`.
fn pair_vertex(first: usize, me: usize, other: usize) -> usize {
    for (q, &(p, r)) in PAIRS.iter().enumerate() {
        if (p, r) == (me, other) {
            return first + 2 * q;
        }
        if (r, p) == (me, other) {
            return first + 2 * q + 1;
        }
    }
    unreachable!("positions are 0, 1, 2")
}

/// Two extra vertices per edge, each joined to both endpoints. Shared by the
/// dominating-set and feedback-vertex-set reductions.
fn edge_doubling(g: &LabeledGraph) -> Result<LabeledGraph> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::InvalidGraph(format!("vertex {v} is isolated")));
    }
    let mut t = LabeledGraph::new();
    for v in 0..g.num_vertices() {
        t.add_vertex(g.tag(v).clone());
    }
    for &(u, v) in g.edges() {
        t.add_edge(u, v)?;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for slot in 0..2 {
            let x = t.add_vertex(VertexTag::Gadget {
                kind: "edge",
                owner: e,
                slot,
            });
            t.add_edge(u, x)?;
            t.add_edge(x, v)?;
        }
    }
    Ok(t)
}

fn doubled(name: &str, g: &LabeledGraph, k: usize, target: Problem) -> Result<ReductionOutput> {
    let t = edge_doubling(g)?;
    let n = g.num_vertices();
    let mut out = ReductionOutput::new(
        name,
        Problem::VertexCover(SizeMode::Exact(k)),
        &emit_graph(g),
        target,
        Instance::Graph(t),
        Lifter::Identity,
    );
    out.fresh_blocks.push(FreshBlock {
        gadget: "edge-pair",
        owner: 0,
        start: n,
        len: 2 * g.num_edges(),
    });
    Ok(out)
}

/// Dominating sets of size `k` in the edge-doubled graph. The count matches
/// size-`k` vertex covers of `g` when `k` is the minimum cover size.
pub fn vc_to_dominating_set(g: &LabeledGraph, k: usize) -> Result<ReductionOutput> {
    doubled("vc_to_dominating_set", g, k, Problem::DominatingSet(SizeMode::Exact(k)))
}

/// Undirected feedback vertex sets of size `k` in the edge-doubled graph;
/// same count relation as [`vc_to_dominating_set`].
pub fn vc_to_feedback_vertex_set(g: &LabeledGraph, k: usize) -> Result<ReductionOutput> {
    doubled("vc_to_feedback_vertex_set", g, k, Problem::FeedbackVertexSet(SizeMode::Exact(k)))
}

/// Vertices as elements, edges as 2-element sets. Covers and hitting sets
/// coincide, so any size constraint carries over unchanged.
pub fn vc_to_hitting_set(g: &LabeledGraph, mode: SizeMode) -> Result<ReductionOutput> {
    let mut s = SetSystem::new(0);
    for v in 0..g.num_vertices() {
        s.add_element(g.tag(v).clone());
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        s.add_set(vec![u, v], VertexTag::Set(e))?;
    }
    Ok(ReductionOutput::new(
        "vc_to_hitting_set",
        Problem::VertexCover(mode),
        &emit_graph(g),
        Problem::HittingSet(mode),
        Instance::Sets(s),
        Lifter::Identity,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_monotone_3cnf, Assignment};
    use crate::planarity::{formula_is_planar, is_planar};
    use crate::reduction::Solution;

    fn covers(g: &LabeledGraph, k: usize) -> Vec<Vec<usize>> {
        let n = g.num_vertices();
        let mut out = Vec::new();
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize != k {
                continue;
            }
            if g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1) {
                out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn single_clause_shape_and_count() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let out = mono_to_vertex_cover(&f).unwrap();
        let g = out.target_graph();
        assert_eq!((g.num_vertices(), g.num_edges()), (21, 27));
        assert_eq!(out.k(), Some(11));
        assert_eq!(out.multiplier, BigUint::from(2u32));
        let found = covers(g, 11);
        assert_eq!(found.len(), 6);
        assert!(covers(g, 10).is_empty());
        assert!(is_planar(g));
        for w in 0..8 {
            let v = Assignment::from_word(3, w);
            if !f.evaluate_ex1(&v).unwrap() {
                continue;
            }
            for s in out.lifter.lift(&Solution::Assignment(v)).unwrap() {
                let Solution::Selection(sel) = s else { panic!() };
                assert!(found.contains(&sel));
            }
        }
    }

    #[test]
    fn structural_counts() {
        let f = random_monotone_3cnf(7, 5, 3).unwrap().compact();
        let out = mono_to_vertex_cover(&f).unwrap();
        let g = out.target_graph();
        let m = f.num_clauses();
        let cyc: usize = f.occurrences().iter().map(|o| 4 * o).sum();
        assert_eq!(g.num_vertices(), cyc + 9 * m);
        assert_eq!(g.num_edges(), cyc + 15 * m);
        assert_eq!(out.k(), Some(11 * m));
    }

    #[test]
    fn planar_sources_give_planar_targets() {
        let mut tried = 0;
        for seed in 0..300 {
            let f = random_monotone_3cnf(9, 7, seed).unwrap().compact();
            if !formula_is_planar(&f) {
                continue;
            }
            tried += 1;
            assert!(is_planar(mono_to_vertex_cover(&f).unwrap().target_graph()), "seed {seed}");
        }
        assert!(tried > 100);
    }

    #[test]
    fn doubling_shapes() {
        let k2 = LabeledGraph::from_edges(2, &[(0, 1)]).unwrap();
        let out = vc_to_dominating_set(&k2, 1).unwrap();
        let t = out.target_graph();
        assert_eq!((t.num_vertices(), t.num_edges()), (4, 5));
        assert!(vc_to_feedback_vertex_set(&LabeledGraph::from_edges(3, &[(0, 1)]).unwrap(), 1).is_err());
        let hs = vc_to_hitting_set(&k2, SizeMode::AtMost(1)).unwrap();
        assert_eq!(hs.target_sets().sets(), &[vec![0, 1]]);
    }
}
