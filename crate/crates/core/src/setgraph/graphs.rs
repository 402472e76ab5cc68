use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexTag};
use crate::oracles::SizeMode;
use crate::reduction::{ClawTriple, FreshBlock, Instance, Lifter, Problem, ReductionOutput};

use super::SetSystem;

fn elements_graph(s: &SetSystem) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for e in 0..s.ground_size() {
        g.add_vertex(VertexTag::Element(e));
    }
    g
}

/// Partition into triangles (equivalently, a clique cover by `p + 3m`
/// cliques, since the target has no `K_4`). Each triple becomes a triangle
/// `t1 t2 t3` and three rungs `{alpha, beta}`, `{gamma, delta}`,
/// `{kappa, pi}`, rung `i` forming a triangle with `t_i` and another with
/// the triple's `i`-th element.
pub fn x3c_to_clique_cover(s: &SetSystem) -> Result<ReductionOutput> {
    s.check_x3c()?;
    let mut g = elements_graph(s);
    let mut chosen = Vec::with_capacity(s.num_sets());
    let mut unchosen = Vec::with_capacity(s.num_sets());
    let mut fresh_blocks = Vec::new();
    for (i, set) in s.sets().iter().enumerate() {
        let base = g.num_vertices();
        for slot in 0..9 {
            g.add_vertex(VertexTag::Gadget {
                kind: "triple",
                owner: i,
                slot,
            });
        }
        fresh_blocks.push(FreshBlock {
            gadget: "clique-triple",
            owner: i,
            start: base,
            len: 9,
        });
        let t = |k: usize| base + k;
        let rung = |k: usize| (base + 3 + 2 * k, base + 4 + 2 * k);
        g.add_edge(t(0), t(1))?;
        g.add_edge(t(1), t(2))?;
        g.add_edge(t(2), t(0))?;
        let mut up = Vec::new();
        let mut down = vec![vec![t(0), t(1), t(2)]];
        for k in 0..3 {
            let (a, b) = rung(k);
            g.add_edge(a, b)?;
            g.add_edge(a, t(k))?;
            g.add_edge(b, t(k))?;
            g.add_edge(a, set[k])?;
            g.add_edge(b, set[k])?;
            up.push(vec![a, b, t(k)]);
            down.push(vec![a, b, set[k]]);
        }
        chosen.push(down);
        unchosen.push(up);
    }
    let mut out = ReductionOutput::new(
        "x3c_to_clique_cover",
        Problem::ExactCover,
        &s.to_x3c_text(),
        Problem::TrianglePartition,
        Instance::Graph(g),
        Lifter::PartsFromCover { chosen, unchosen },
    );
    out.fresh_blocks = fresh_blocks;
    Ok(out)
}

/// Same construction as [`x3c_to_clique_cover`].
pub fn x3c_to_partition_into_triangles(s: &SetSystem) -> Result<ReductionOutput> {
    let mut out = x3c_to_clique_cover(s)?;
    out.reduction = "x3c_to_partition_into_triangles".into();
    Ok(out)
}

/// Edge partition into claws. The target is the element/triple incidence
/// graph with pendant edges bringing every element to degree 4, so each
/// element centres exactly one claw.
pub fn x3c_to_partition_into_claws(s: &SetSystem) -> Result<ReductionOutput> {
    s.check_x3c()?;
    let deg = s.element_degrees();
    if let Some(e) = deg.iter().position(|&d| d != 2 && d != 3) {
        return Err(Error::InvalidSetSystem(format!(
            "element {} occurs in {} sets, claws need 2 or 3",
            e + 1,
            deg[e]
        )));
    }
    let mut g = elements_graph(s);
    let mut triples = Vec::with_capacity(s.num_sets());
    for (i, set) in s.sets().iter().enumerate() {
        let v = g.add_vertex(VertexTag::Set(i));
        let mut edges = [0; 3];
        for k in 0..3 {
            edges[k] = g.add_edge(set[k], v)?;
        }
        triples.push(ClawTriple {
            elements: [set[0], set[1], set[2]],
            edges,
        });
    }
    let base = g.num_vertices();
    let mut pendants = vec![Vec::new(); s.ground_size()];
    for (e, &d) in deg.iter().enumerate() {
        for slot in 0..4 - d {
            let leaf = g.add_vertex(VertexTag::Gadget {
                kind: "pendant",
                owner: e,
                slot,
            });
            pendants[e].push(g.add_edge(e, leaf)?);
        }
    }
    let mut out = ReductionOutput::new(
        "x3c_to_partition_into_claws",
        Problem::ExactCover,
        &s.to_x3c_text(),
        Problem::ClawPartition,
        Instance::Graph(g),
        Lifter::ClawsFromCover { triples, pendants },
    );
    out.fresh_blocks.push(FreshBlock {
        gadget: "pendants",
        owner: 0,
        start: base,
        len: out.target_graph().num_vertices() - base,
    });
    Ok(out)
}

/// Dominating sets of size `p + m` in the incidence graph with a 2-claw
/// hung off every triple vertex.
pub fn x3c_to_bipartite_dominating_set(s: &SetSystem) -> Result<ReductionOutput> {
    s.check_x3c()?;
    let deg = s.element_degrees();
    if let Some(e) = deg.iter().position(|&d| d > 3) {
        return Err(Error::InvalidSetSystem(format!(
            "element {} occurs in {} sets, at most 3 allowed",
            e + 1,
            deg[e]
        )));
    }
    let mut g = elements_graph(s);
    let tv: Vec<usize> = (0..s.num_sets()).map(|i| g.add_vertex(VertexTag::Set(i))).collect();
    for (i, set) in s.sets().iter().enumerate() {
        for &e in set {
            g.add_edge(e, tv[i])?;
        }
    }
    let base = g.num_vertices();
    let mut chosen = Vec::new();
    let mut unchosen = Vec::new();
    for i in 0..s.num_sets() {
        let tag = |slot| VertexTag::Gadget {
            kind: "claw",
            owner: i,
            slot,
        };
        let a = g.add_vertex(tag(0));
        g.add_edge(tv[i], a)?;
        for slot in 1..3 {
            let leaf = g.add_vertex(tag(slot));
            g.add_edge(a, leaf)?;
        }
        chosen.push(vec![tv[i], a]);
        unchosen.push(vec![a]);
    }
    let k = s.ground_size() / 3 + s.num_sets();
    let mut out = ReductionOutput::new(
        "x3c_to_bipartite_dominating_set",
        Problem::ExactCover,
        &s.to_x3c_text(),
        Problem::DominatingSet(SizeMode::Exact(k)),
        Instance::Graph(g),
        Lifter::ItemsFromCover { chosen, unchosen },
    );
    out.fresh_blocks.push(FreshBlock {
        gadget: "claw",
        owner: 0,
        start: base,
        len: 3 * s.num_sets(),
    });
    Ok(out)
}
