//! Seeded verification cases. A case's seed and chain fully determine it.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::formula::{incidence_graph, random_3cnf, random_monotone_3cnf, seeded_rng, ArityMix, CnfFormula};
use crate::graph::LabeledGraph;
use crate::oracles::{count_sat, min_vertex_cover_size, Budget, SizeMode};
use crate::planarity::{enumerate_crossings, spine_layout};
use crate::reduction::{Instance, Problem};
use crate::setgraph::SetSystem;

/// Where a case's source instance comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// `random_3cnf(n, m, mix)`, counted as SAT.
    Cnf { n: u32, m: usize, mix: ArityMix },
    /// Like `Cnf`, but the first derived seed whose spine layout has at most
    /// `max_crossings` crossings.
    FewCrossings { n: u32, m: usize, max_crossings: usize },
    /// Like `Cnf`, but the first derived seed that is satisfiable.
    Satisfiable { n: u32, m: usize },
    /// `random_monotone_3cnf(n, m)` with unused variables dropped, counted
    /// under exactly-one semantics.
    Monotone { n: u32, m: usize },
    /// Random graph on `n` vertices without isolated vertices, counted as
    /// vertex covers of exactly the minimum size.
    MinCoverGraph { n: usize, edges: usize },
    /// Two random partitions of `3p` elements into triples plus `extra`
    /// triples of a third, so every element lies in 2 or 3 sets.
    X3c { p: usize, extra: usize },
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::Cnf { n, m, mix } => format!("cnf(n={n},m={m},two={},three={})", mix.two, mix.three),
            Source::FewCrossings { n, m, max_crossings } => format!("cnf(n={n},m={m},crossings<={max_crossings})"),
            Source::Satisfiable { n, m } => format!("satisfiable-cnf(n={n},m={m})"),
            Source::Monotone { n, m } => format!("monotone(n={n},m={m})"),
            Source::MinCoverGraph { n, edges } => format!("graph(n={n},edges={edges},k=min-vc)"),
            Source::X3c { p, extra } => format!("x3c(p={p},extra={extra})"),
        }
    }

    /// The source instance and the problem it is counted under.
    pub fn instantiate(&self, seed: u64) -> Result<(Instance, Problem)> {
        match *self {
            Source::Cnf { n, m, mix } => Ok((Instance::Cnf(random_3cnf(n, m, mix, seed)?), Problem::Sat)),
            Source::FewCrossings { n, m, max_crossings } => {
                for k in 0..10_000u64 {
                    let f = random_3cnf(n, m, ArityMix::MIXED, seed.wrapping_mul(10_007).wrapping_add(k))?;
                    let layout = spine_layout(&incidence_graph(&f))?;
                    if enumerate_crossings(&layout)?.len() <= max_crossings {
                        return Ok((Instance::Cnf(f), Problem::Sat));
                    }
                }
                Err(Error::InvalidArgument(format!("no formula with <= {max_crossings} crossings")))
            }
            Source::Satisfiable { n, m } => {
                for k in 0..10_000u64 {
                    let f = random_3cnf(n, m, ArityMix::MIXED, seed.wrapping_mul(10_007).wrapping_add(k))?;
                    if count_sat(&f, &Budget::default())?.count > 0u32.into() {
                        return Ok((Instance::Cnf(f), Problem::Sat));
                    }
                }
                Err(Error::InvalidArgument("no satisfiable formula found".into()))
            }
            Source::Monotone { n, m } => {
                let f = random_monotone_3cnf(n, m, seed)?.compact();
                Ok((Instance::Cnf(f), Problem::ExactlyOne))
            }
            Source::MinCoverGraph { n, edges } => {
                let g = random_graph(n, edges, seed)?;
                let k = min_vertex_cover_size(&g, &Budget::default())?;
                Ok((Instance::Graph(g), Problem::VertexCover(SizeMode::Exact(k))))
            }
            Source::X3c { p, extra } => Ok((Instance::Sets(random_x3c(p, extra, seed)?), Problem::ExactCover)),
        }
    }
}

/// `edges` random distinct edges, then one more edge at each vertex still
/// isolated.
pub fn random_graph(n: usize, edges: usize, seed: u64) -> Result<LabeledGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    let mut rng = seeded_rng(seed, 2);
    let mut g = LabeledGraph::with_vertices(n);
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    all.shuffle(&mut rng);
    for &(u, v) in all.iter().take(edges) {
        g.add_edge(u, v)?;
    }
    while let Some(v) = g.isolated_vertex() {
        let mut u = rng.random_range(0..n - 1);
        if u >= v {
            u += 1;
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn random_partition(p: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut elems: Vec<usize> = (0..3 * p).collect();
    elems.shuffle(rng);
    elems.chunks(3).map(|c| c.to_vec()).collect()
}

/// Union of two random triple partitions and `extra` triples of a third.
/// Repeated triples are kept as duplicates.
pub fn random_x3c(p: usize, extra: usize, seed: u64) -> Result<SetSystem> {
    if p == 0 || extra > p {
        return Err(Error::InvalidArgument(format!("need 0 < p and extra <= p, got p={p} extra={extra}")));
    }
    let mut rng = seeded_rng(seed, 3);
    let mut sets = random_partition(p, &mut rng);
    sets.extend(random_partition(p, &mut rng));
    sets.extend(random_partition(p, &mut rng).into_iter().take(extra));
    sets.shuffle(&mut rng);
    for s in &mut sets {
        s.sort_unstable();
    }
    let refs: Vec<&[usize]> = sets.iter().map(|s| s.as_slice()).collect();
    SetSystem::from_sets(3 * p, &refs)
}

/// One seeded check of a chain against its declared relation.
#[derive(Clone, Debug)]
pub struct VerificationCase {
    pub id: usize,
    pub seed: u64,
    pub source: Source,
    /// Comma-separated stage names.
    pub chain: String,
    /// `(multiplier, offset)` the chain must declare, when known up front.
    pub expected: Option<(u64, u64)>,
    /// Also check the lifted images of a few source solutions.
    pub witness: bool,
    pub budget: Budget,
}

/// `count` cases of one chain, seeds `base, base+1, ...`; `make` picks the
/// source for the i-th case.
pub fn cases(
    chain: &str,
    count: usize,
    base: u64,
    expected: Option<(u64, u64)>,
    make: impl Fn(usize) -> Source,
) -> Vec<VerificationCase> {
    (0..count)
        .map(|i| VerificationCase {
            id: 0,
            seed: base + i as u64,
            source: make(i),
            chain: chain.to_string(),
            expected,
            witness: i % 4 == 0,
            budget: Budget::default(),
        })
        .collect()
}

fn renumber(mut v: Vec<VerificationCase>) -> Vec<VerificationCase> {
    for (i, c) in v.iter_mut().enumerate() {
        c.id = i;
    }
    v
}

const MIXED: ArityMix = ArityMix::MIXED;

/// The corpus behind `verify default`: every registered stage appears in
/// at least one chain, with sources sized to keep each case small.
pub fn default_corpus(seed: u64) -> Vec<VerificationCase> {
    let s = seed.wrapping_mul(1_000);
    let mut v = Vec::new();
    v.extend(cases("planarize", 12, s, Some((1, 0)), |i| Source::FewCrossings {
        n: 4 + i as u32 % 3,
        m: 3 + i % 3,
        max_crossings: 2,
    }));
    v.extend(cases("normalize,pad_units", 6, s + 100, Some((1, 0)), |i| Source::Cnf {
        n: 3 + i as u32 % 4,
        m: 2 + i % 4,
        mix: MIXED,
    }));
    v.extend(cases("tseitin", 6, s + 200, Some((1, 0)), |i| Source::Cnf {
        n: 3 + i as u32 % 3,
        m: 1 + i % 4,
        mix: MIXED,
    }));
    v.extend(cases("to_ex3sat", 10, s + 300, Some((1, 0)), |i| Source::Cnf {
        n: 3 + i as u32 % 6,
        m: 1 + i % 5,
        mix: MIXED,
    }));
    v.extend(cases("to_1ex3sat", 10, s + 400, Some((1, 0)), |i| Source::Cnf {
        n: 3 + i as u32 % 6,
        m: 1 + i % 5,
        mix: MIXED,
    }));
    v.extend(cases("to_1ex3sat,to_1ex3monosat", 6, s + 500, Some((1, 0)), |i| Source::Cnf {
        n: 3 + i as u32 % 4,
        m: 1 + i % 3,
        mix: MIXED,
    }));
    v.extend(cases("red1", 8, s + 600, Some((1, 0)), |i| Source::Monotone {
        n: 4 + i as u32 % 4,
        m: 1 + i % 5,
    }));
    v.extend(cases("mono_to_x3c", 8, s + 700, Some((1, 0)), |i| Source::Monotone {
        n: 3 + i as u32 % 4,
        m: 1 + i % 3,
    }));
    v.extend(cases("mono_to_vertex_cover", 6, s + 800, None, |i| Source::Monotone {
        n: 3 + i as u32 % 4,
        m: 1 + i % 2,
    }));
    v.extend(cases("red1,mono_to_vertex_cover", 4, s + 900, None, |i| Source::Monotone {
        n: 3 + i as u32 % 3,
        m: 1 + i % 2,
    }));
    for chain in ["vc_to_dominating_set", "vc_to_feedback_vertex_set", "vc_to_hitting_set"] {
        v.extend(cases(chain, 6, s + 1000, Some((1, 0)), |i| Source::MinCoverGraph {
            n: 4 + i % 4,
            edges: 4 + i % 5,
        }));
    }
    for chain in [
        "x3c_to_clique_cover",
        "x3c_to_partition_into_triangles",
        "x3c_to_partition_into_claws",
        "x3c_to_bipartite_dominating_set",
    ] {
        v.extend(cases(chain, 5, s + 1100, Some((1, 0)), |i| Source::X3c {
            p: 1 + i % 3,
            extra: i % 2,
        }));
    }
    v.extend(cases("make_one_valid", 6, s + 1200, Some((1, 0)), |i| Source::Satisfiable {
        n: 3 + i as u32 % 4,
        m: 2 + i % 4,
    }));
    v.extend(cases("make_ambiguous_instance", 4, s + 1300, Some((1, 1)), |i| Source::Cnf {
        n: 3 + i as u32 % 3,
        m: 2 + i % 3,
        mix: MIXED,
    }));
    v.extend(cases("make_unique_one_valid", 4, s + 1400, Some((1, 1)), |i| Source::Cnf {
        n: 3 + i as u32 % 3,
        m: 2 + i % 3,
        mix: MIXED,
    }));
    v.extend(cases("sat_to_ilp", 4, s + 1500, Some((1, 1)), |i| Source::Cnf {
        n: 3 + i as u32 % 2,
        m: 1 + i % 3,
        mix: MIXED,
    }));
    renumber(v)
}

/// Cases from any chain and source list, numbered in order.
pub fn corpus_of(groups: Vec<Vec<VerificationCase>>) -> Vec<VerificationCase> {
    renumber(groups.concat())
}

/// The formula of a CNF source, for callers that need it directly.
pub fn source_formula(src: &Source, seed: u64) -> Result<CnfFormula> {
    match src.instantiate(seed)?.0 {
        Instance::Cnf(f) => Ok(f),
        other => Err(Error::InvalidArgument(format!("source is a {} instance", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_graph(6, 5, 3).unwrap(), random_graph(6, 5, 3).unwrap());
        let s = random_x3c(3, 2, 9).unwrap();
        assert_eq!(s, random_x3c(3, 2, 9).unwrap());
        s.check_x3c().unwrap();
        assert!(s.element_degrees().iter().all(|&d| d == 2 || d == 3));
        assert!(random_graph(7, 2, 1).unwrap().isolated_vertex().is_none());
    }
}
