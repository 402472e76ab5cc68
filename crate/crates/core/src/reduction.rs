//! The contract every reduction returns: a target instance, the count
//! relation it claims against its source, and a way to carry source
//! solutions over to the target.

use std::fmt::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::crossover::{lift_unchecked, PlanarizationTrace};
use crate::error::{Error, Result};
use crate::formula::{emit_dimacs, Assignment, BoolExpr, CnfFormula};
use crate::graph::{emit_graph, LabeledGraph};
use crate::oracles::SizeMode;
use crate::setgraph::{IlpInstance, SetSystem};

/// Any instance a reduction can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Cnf(CnfFormula),
    Graph(LabeledGraph),
    Sets(SetSystem),
    Ilp(IlpInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Cnf(_) => "cnf",
            Instance::Graph(_) => "graph",
            Instance::Sets(_) => "sets",
            Instance::Ilp(_) => "ilp",
        }
    }

    pub fn as_cnf(&self) -> Option<&CnfFormula> {
        match self {
            Instance::Cnf(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_graph(&self) -> Option<&LabeledGraph> {
        match self {
            Instance::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_sets(&self) -> Option<&SetSystem> {
        match self {
            Instance::Sets(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_ilp(&self) -> Option<&IlpInstance> {
        match self {
            Instance::Ilp(i) => Some(i),
            _ => None,
        }
    }

    /// The module-local text format. Hitting-set systems need their bound,
    /// which lives in the problem, so `problem` picks the header.
    pub fn to_text(&self, problem: Problem) -> String {
        match (self, problem) {
            (Instance::Cnf(f), _) => emit_dimacs(f),
            (Instance::Graph(g), _) => emit_graph(g),
            (Instance::Sets(s), Problem::HittingSet(m)) => s.to_hitting_set_text(m.bound()),
            (Instance::Sets(s), _) => s.to_x3c_text(),
            (Instance::Ilp(i), _) => i.to_text(),
        }
    }

    /// Incidence graph for formulas and set systems, the graph itself
    /// otherwise. This is the graph whose planarity a reduction preserves.
    pub fn planarity_graph(&self) -> LabeledGraph {
        match self {
            Instance::Cnf(f) => crate::formula::incidence_graph(f).to_graph(),
            Instance::Graph(g) => g.clone(),
            Instance::Sets(s) => s.incidence_graph(),
            Instance::Ilp(i) => crate::formula::incidence_graph(&i.to_cnf()).to_graph(),
        }
    }
}

/// Which solutions are being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Satisfying assignments.
    Sat,
    /// Assignments with exactly one true literal per clause.
    ExactlyOne,
    /// Sub-families partitioning the ground set.
    ExactCover,
    VertexCover(SizeMode),
    DominatingSet(SizeMode),
    FeedbackVertexSet(SizeMode),
    HittingSet(SizeMode),
    /// Vertex partitions into triangles.
    TrianglePartition,
    /// Edge partitions into copies of K_{1,3}.
    ClawPartition,
    /// Feasible 0/1 points of an equality-constrained program.
    IlpFeasible,
}

impl Problem {
    pub fn label(self) -> String {
        match self {
            Problem::Sat => "sat".into(),
            Problem::ExactlyOne => "ex1".into(),
            Problem::ExactCover => "x3c".into(),
            Problem::VertexCover(m) => format!("vc/{}", m.label()),
            Problem::DominatingSet(m) => format!("ds/{}", m.label()),
            Problem::FeedbackVertexSet(m) => format!("fvs/{}", m.label()),
            Problem::HittingSet(m) => format!("hs/{}", m.label()),
            Problem::TrianglePartition => "triangles".into(),
            Problem::ClawPartition => "claws".into(),
            Problem::IlpFeasible => "ilp".into(),
        }
    }

    /// The size bound, for problems that carry one.
    pub fn k(self) -> Option<usize> {
        match self {
            Problem::VertexCover(m) | Problem::DominatingSet(m) | Problem::FeedbackVertexSet(m) | Problem::HittingSet(m) => {
                Some(m.bound())
            }
            _ => None,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A solution of some instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solution {
    Assignment(Assignment),
    /// Chosen vertices, elements or sets, sorted.
    Selection(Vec<usize>),
    /// Unordered parts, each sorted, parts sorted.
    Partition(Vec<Vec<usize>>),
}

impl Solution {
    pub fn partition(mut parts: Vec<Vec<usize>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        Solution::Partition(parts)
    }

    pub fn selection(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Solution::Selection(items)
    }
}

/// How a fresh variable (or selected item) is computed from what is already
/// known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Const(bool),
    Expr(BoolExpr),
}

impl Def {
    fn eval(&self, v: &Assignment) -> bool {
        match self {
            Def::Const(b) => *b,
            Def::Expr(e) => e.eval_unchecked(v),
        }
    }
}

/// Edges of one X3C triple in the claw construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClawTriple {
    pub elements: [usize; 3],
    /// Edge ids from the triple vertex to each element, in `elements` order.
    pub edges: [usize; 3],
}

/// Deterministic map from one source solution to the target solutions it
/// corresponds to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lifter {
    Identity,
    /// Grow the assignment to `target_vars`, defining each new variable in
    /// order from the ones before it.
    Define { target_vars: u32, defs: Vec<(u32, Def)> },
    /// Complement these variables.
    Flip(Vec<u32>),
    Planarize(Box<PlanarizationTrace>),
    /// Select item `i` iff `conditions[i]` holds. Conditions may read
    /// `free_bits` extra variables after the source's `source_vars`; every
    /// setting of those bits yields one target solution.
    Select {
        source_vars: u32,
        free_bits: u32,
        conditions: Vec<Def>,
    },
    /// Each chosen set `i` contributes the parts `chosen[i]`, each unchosen
    /// set the parts `unchosen[i]`.
    PartsFromCover {
        chosen: Vec<Vec<Vec<usize>>>,
        unchosen: Vec<Vec<Vec<usize>>>,
    },
    /// Selection from an exact cover: each chosen set `i` contributes
    /// `chosen[i]`, each unchosen one `unchosen[i]`.
    ItemsFromCover {
        chosen: Vec<Vec<usize>>,
        unchosen: Vec<Vec<usize>>,
    },
    /// Edge partition into claws from an exact cover: a chosen triple keeps
    /// its three edges; every element takes its pendant edges plus the edges
    /// to its unchosen triples.
    ClawsFromCover {
        triples: Vec<ClawTriple>,
        pendants: Vec<Vec<usize>>,
    },
    Chain(Vec<Lifter>),
}

fn wrong_kind(stage: &str, got: &Solution) -> Error {
    let kind = match got {
        Solution::Assignment(_) => "an assignment",
        Solution::Selection(_) => "a selection",
        Solution::Partition(_) => "a partition",
    };
    Error::StageMismatch {
        stage: stage.to_string(),
        got: kind.to_string(),
    }
}

impl Lifter {
    /// Target solutions corresponding to `s`. Callers pass a source solution;
    /// the lifter does not re-check it.
    pub fn lift(&self, s: &Solution) -> Result<Vec<Solution>> {
        match self {
            Lifter::Identity => Ok(vec![s.clone()]),
            Lifter::Define { target_vars, defs } => {
                let Solution::Assignment(v) = s else {
                    return Err(wrong_kind("define", s));
                };
                let mut out = v.clone();
                out.resize(*target_vars);
                for (var, d) in defs {
                    let val = d.eval(&out);
                    out.set(*var, val);
                }
                Ok(vec![Solution::Assignment(out)])
            }
            Lifter::Flip(vars) => {
                let Solution::Assignment(v) = s else {
                    return Err(wrong_kind("flip", s));
                };
                let mut out = v.clone();
                for &x in vars {
                    out.set(x, !v.value(x));
                }
                Ok(vec![Solution::Assignment(out)])
            }
            Lifter::Planarize(trace) => {
                let Solution::Assignment(v) = s else {
                    return Err(wrong_kind("planarize", s));
                };
                Ok(vec![Solution::Assignment(lift_unchecked(trace, v))])
            }
            Lifter::Select {
                source_vars,
                free_bits,
                conditions,
            } => {
                let Solution::Assignment(v) = s else {
                    return Err(wrong_kind("select", s));
                };
                let mut out = Vec::with_capacity(1 << free_bits);
                for bits in 0..1u64 << free_bits {
                    let mut full = v.truncated(*source_vars);
                    for b in 0..*free_bits {
                        full.set(source_vars + b + 1, bits >> b & 1 == 1);
                    }
                    let chosen = (0..conditions.len()).filter(|&i| conditions[i].eval(&full)).collect();
                    out.push(Solution::Selection(chosen));
                }
                Ok(out)
            }
            Lifter::PartsFromCover { chosen, unchosen } => {
                let Solution::Selection(sel) = s else {
                    return Err(wrong_kind("parts", s));
                };
                let mut parts = Vec::new();
                for i in 0..chosen.len() {
                    let src = if sel.contains(&i) { &chosen[i] } else { &unchosen[i] };
                    parts.extend(src.iter().cloned());
                }
                Ok(vec![Solution::partition(parts)])
            }
            Lifter::ItemsFromCover { chosen, unchosen } => {
                let Solution::Selection(sel) = s else {
                    return Err(wrong_kind("items", s));
                };
                let mut items = Vec::new();
                for i in 0..chosen.len() {
                    items.extend_from_slice(if sel.contains(&i) { &chosen[i] } else { &unchosen[i] });
                }
                Ok(vec![Solution::selection(items)])
            }
            Lifter::ClawsFromCover { triples, pendants } => {
                let Solution::Selection(sel) = s else {
                    return Err(wrong_kind("claws", s));
                };
                let mut parts: Vec<Vec<usize>> = pendants.clone();
                for (i, t) in triples.iter().enumerate() {
                    if sel.contains(&i) {
                        parts.push(t.edges.to_vec());
                    } else {
                        for k in 0..3 {
                            parts[t.elements[k]].push(t.edges[k]);
                        }
                    }
                }
                Ok(vec![Solution::partition(parts)])
            }
            Lifter::Chain(stages) => {
                let mut cur = vec![s.clone()];
                for st in stages {
                    let mut next = Vec::new();
                    for c in &cur {
                        next.extend(st.lift(c)?);
                    }
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    /// Convenience for assignment-to-assignment lifters.
    pub fn lift_assignment(&self, v: &Assignment) -> Result<Assignment> {
        let mut out = self.lift(&Solution::Assignment(v.clone()))?;
        match (out.len(), out.pop()) {
            (1, Some(Solution::Assignment(a))) => Ok(a),
            (_, Some(other)) => Err(wrong_kind("lift_assignment", &other)),
            (_, None) => Err(Error::InvalidArgument("lifter produced no solution".into())),
        }
    }
}

/// A block of fresh indices introduced by one gadget instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshBlock {
    pub gadget: &'static str,
    /// Clause, variable, crossing or set the gadget belongs to.
    pub owner: usize,
    pub start: usize,
    pub len: usize,
}

/// Lower-case hex SHA-256.
pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// A target instance together with its declared relation
/// `count(target) = multiplier * count(source) + offset`.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    /// Stage names, comma-separated for compositions.
    pub reduction: String,
    pub source_problem: Problem,
    pub target_problem: Problem,
    pub target: Instance,
    pub multiplier: BigUint,
    pub offset: BigUint,
    pub lifter: Lifter,
    pub fresh_blocks: Vec<FreshBlock>,
    pub source_sha256: String,
}

impl ReductionOutput {
    /// A parsimonious output; set `multiplier`/`offset` afterwards if needed.
    /// `source_text` is the serialized source, kept only as a hash.
    pub fn new(
        reduction: &str,
        source_problem: Problem,
        source_text: &str,
        target_problem: Problem,
        target: Instance,
        lifter: Lifter,
    ) -> Self {
        ReductionOutput {
            reduction: reduction.to_string(),
            source_problem,
            target_problem,
            source_sha256: sha256_hex(source_text),
            target,
            multiplier: BigUint::one(),
            offset: BigUint::zero(),
            lifter,
            fresh_blocks: Vec::new(),
        }
    }

    pub fn target_cnf(&self) -> &CnfFormula {
        self.target.as_cnf().expect("formula target")
    }

    pub fn target_graph(&self) -> &LabeledGraph {
        self.target.as_graph().expect("graph target")
    }

    pub fn target_sets(&self) -> &SetSystem {
        self.target.as_sets().expect("set-system target")
    }

    pub fn k(&self) -> Option<usize> {
        self.target_problem.k()
    }

    pub fn expected_count(&self, source_count: &BigUint) -> BigUint {
        &self.multiplier * source_count + &self.offset
    }

    pub fn target_text(&self) -> String {
        self.target.to_text(self.target_problem)
    }

    /// Feeds this output into `next`, which must have been built from
    /// `self.target`.
    pub fn then(self, next: ReductionOutput) -> Result<ReductionOutput> {
        if next.source_problem != self.target_problem {
            return Err(Error::StageMismatch {
                stage: next.reduction,
                got: self.target_problem.label(),
            });
        }
        let offset = &next.multiplier * &self.offset + &next.offset;
        let mut stages = match self.lifter {
            Lifter::Chain(s) => s,
            l => vec![l],
        };
        match next.lifter {
            Lifter::Chain(s) => stages.extend(s),
            l => stages.push(l),
        }
        let mut fresh_blocks = self.fresh_blocks;
        fresh_blocks.extend(next.fresh_blocks);
        Ok(ReductionOutput {
            reduction: format!("{},{}", self.reduction, next.reduction),
            source_problem: self.source_problem,
            target_problem: next.target_problem,
            target: next.target,
            multiplier: self.multiplier * next.multiplier,
            offset,
            lifter: Lifter::Chain(stages),
            fresh_blocks,
            source_sha256: self.source_sha256,
        })
    }

    /// Sidecar text: one `key=value` per line, then one `fresh=` line per block.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        writeln!(out, "reduction={}", self.reduction).unwrap();
        writeln!(out, "source_problem={}", self.source_problem).unwrap();
        writeln!(out, "target_problem={}", self.target_problem).unwrap();
        writeln!(out, "target_kind={}", self.target.kind()).unwrap();
        writeln!(out, "multiplier={}", self.multiplier).unwrap();
        writeln!(out, "offset={}", self.offset).unwrap();
        match self.k() {
            Some(k) => writeln!(out, "k={k}").unwrap(),
            None => writeln!(out, "k=none").unwrap(),
        }
        writeln!(out, "source_sha256={}", self.source_sha256).unwrap();
        writeln!(out, "target_sha256={}", sha256_hex(&self.target_text())).unwrap();
        for b in &self.fresh_blocks {
            writeln!(out, "fresh={} owner={} start={} len={}", b.gadget, b.owner, b.start, b.len).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn define_lifter_runs_in_order() {
        use crate::formula::Literal;
        let l = Lifter::Define {
            target_vars: 4,
            defs: vec![
                (3, Def::Expr(BoolExpr::and(vec![BoolExpr::var(1), BoolExpr::var(2)]))),
                (4, Def::Expr(BoolExpr::lit(Literal::neg(3)))),
            ],
        };
        let out = l.lift_assignment(&Assignment::new(vec![true, true])).unwrap();
        assert_eq!(out.values(), &[true, true, true, false]);
    }

    #[test]
    fn select_enumerates_free_bits() {
        let l = Lifter::Select {
            source_vars: 1,
            free_bits: 1,
            conditions: vec![
                Def::Expr(BoolExpr::var(1)),
                Def::Expr(BoolExpr::var(2)),
                Def::Const(true),
            ],
        };
        let out = l.lift(&Solution::Assignment(Assignment::new(vec![true]))).unwrap();
        assert_eq!(out, vec![Solution::Selection(vec![0, 2]), Solution::Selection(vec![0, 1, 2])]);
    }
}
