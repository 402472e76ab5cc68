//! Named reduction stages. A chain is a comma-separated list of stage
//! names; each stage checks that it accepts what the previous one produced.

use crate::error::{Error, Result};
use crate::formula::{Assignment, BoolExpr, CnfFormula};
use crate::oracles::{count_sat, Budget};
use crate::reduction::{Instance, Problem, ReductionOutput};
use crate::sat::{
    make_ambiguous_instance, make_one_valid, make_unique_one_valid, normalize_reduction, pad_units,
    planarize_reduction, red1, red1_groups, to_1ex3monosat, to_1ex3sat, to_ex3sat, tseitin_cnf,
};
use crate::setgraph::{
    mono_to_vertex_cover, mono_to_x3c, sat_to_ilp, vc_to_dominating_set, vc_to_feedback_vertex_set,
    vc_to_hitting_set, x3c_to_bipartite_dominating_set, x3c_to_clique_cover, x3c_to_partition_into_claws,
    x3c_to_partition_into_triangles,
};

type StageFn = fn(&Instance, Problem) -> Result<ReductionOutput>;

/// What a stage promises about the planarity of its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Planarity {
    /// Planar input gives planar output.
    Preserves,
    /// Output is planar whatever the input.
    Produces,
    /// No promise.
    Ignores,
}

/// One registered reduction.
pub struct Stage {
    pub name: &'static str,
    /// What the stage consumes, for help text.
    pub accepts: &'static str,
    pub planarity: Planarity,
    run: StageFn,
}

impl Stage {
    pub fn run(&self, input: &Instance, problem: Problem) -> Result<ReductionOutput> {
        (self.run)(input, problem)
    }
}

fn mismatch(stage: &str, problem: Problem, input: &Instance) -> Error {
    Error::StageMismatch {
        stage: stage.to_string(),
        got: format!("{problem} on a {} instance", input.kind()),
    }
}

fn cnf<'a>(stage: &str, input: &'a Instance, problem: Problem, want: Problem) -> Result<&'a CnfFormula> {
    match input {
        Instance::Cnf(f) if problem == want => Ok(f),
        _ => Err(mismatch(stage, problem, input)),
    }
}

fn vc_graph<'a>(stage: &str, input: &'a Instance, problem: Problem) -> Result<(&'a crate::graph::LabeledGraph, crate::oracles::SizeMode)> {
    match (input, problem) {
        (Instance::Graph(g), Problem::VertexCover(m)) => Ok((g, m)),
        _ => Err(mismatch(stage, problem, input)),
    }
}

fn x3c<'a>(stage: &str, input: &'a Instance, problem: Problem) -> Result<&'a crate::setgraph::SetSystem> {
    match (input, problem) {
        (Instance::Sets(s), Problem::ExactCover) => Ok(s),
        _ => Err(mismatch(stage, problem, input)),
    }
}

fn exact_k(stage: &str, input: &Instance, problem: Problem) -> Result<(crate::graph::LabeledGraph, usize)> {
    match vc_graph(stage, input, problem)? {
        (g, crate::oracles::SizeMode::Exact(k)) => Ok((g.clone(), k)),
        _ => Err(mismatch(stage, problem, input)),
    }
}

/// First model found by the counter, or an error if there is none.
fn some_model(f: &CnfFormula) -> Result<Assignment> {
    let r = count_sat(f, &Budget::enumerating(1))?;
    let support = r
        .enumerated
        .first()
        .ok_or_else(|| Error::InvalidArgument("make_one_valid needs a satisfiable formula".into()))?;
    let mut v = Assignment::all(f.num_vars(), false);
    for &x in support {
        v.set(x as u32, true);
    }
    Ok(v)
}

pub const STAGES: &[Stage] = &[
    Stage {
        name: "planarize",
        accepts: "sat cnf, arity <= 3",
        planarity: Planarity::Produces,
        run: |i, p| planarize_reduction(cnf("planarize", i, p, Problem::Sat)?),
    },
    Stage {
        name: "normalize",
        accepts: "sat cnf",
        planarity: Planarity::Preserves,
        run: |i, p| Ok(normalize_reduction(cnf("normalize", i, p, Problem::Sat)?)),
    },
    Stage {
        name: "pad_units",
        accepts: "sat cnf",
        planarity: Planarity::Preserves,
        run: |i, p| pad_units(cnf("pad_units", i, p, Problem::Sat)?),
    },
    Stage {
        name: "tseitin",
        accepts: "sat cnf",
        planarity: Planarity::Ignores,
        run: |i, p| {
            let f = cnf("tseitin", i, p, Problem::Sat)?;
            if f.num_clauses() == 0 || f.clauses().iter().any(|c| c.is_empty()) {
                return Err(Error::InvalidArgument("tseitin needs nonempty clauses".into()));
            }
            tseitin_cnf(&BoolExpr::and(BoolExpr::cnf_conjuncts(f)), f.num_vars())
        },
    },
    Stage {
        name: "to_ex3sat",
        accepts: "sat cnf, arity <= 3",
        planarity: Planarity::Preserves,
        run: |i, p| to_ex3sat(cnf("to_ex3sat", i, p, Problem::Sat)?),
    },
    Stage {
        name: "to_1ex3sat",
        accepts: "sat cnf",
        planarity: Planarity::Preserves,
        run: |i, p| to_1ex3sat(cnf("to_1ex3sat", i, p, Problem::Sat)?),
    },
    Stage {
        name: "to_1ex3monosat",
        accepts: "ex1 cnf",
        planarity: Planarity::Preserves,
        run: |i, p| to_1ex3monosat(cnf("to_1ex3monosat", i, p, Problem::ExactlyOne)?),
    },
    Stage {
        name: "red1",
        accepts: "monotone ex1 cnf",
        planarity: Planarity::Preserves,
        run: |i, p| red1(cnf("red1", i, p, Problem::ExactlyOne)?),
    },
    Stage {
        name: "make_one_valid",
        accepts: "satisfiable sat cnf",
        planarity: Planarity::Preserves,
        run: |i, p| {
            let f = cnf("make_one_valid", i, p, Problem::Sat)?;
            make_one_valid(f, &some_model(f)?)
        },
    },
    Stage {
        name: "make_ambiguous_instance",
        accepts: "sat cnf",
        planarity: Planarity::Produces,
        run: |i, p| Ok(make_ambiguous_instance(cnf("make_ambiguous_instance", i, p, Problem::Sat)?)?.0),
    },
    Stage {
        name: "make_unique_one_valid",
        accepts: "sat cnf",
        planarity: Planarity::Produces,
        run: |i, p| make_unique_one_valid(cnf("make_unique_one_valid", i, p, Problem::Sat)?),
    },
    Stage {
        name: "sat_to_ilp",
        accepts: "sat cnf",
        planarity: Planarity::Produces,
        run: |i, p| Ok(sat_to_ilp(cnf("sat_to_ilp", i, p, Problem::Sat)?)?.0),
    },
    Stage {
        name: "mono_to_x3c",
        accepts: "monotone ex1 cnf",
        planarity: Planarity::Preserves,
        run: |i, p| mono_to_x3c(cnf("mono_to_x3c", i, p, Problem::ExactlyOne)?),
    },
    Stage {
        name: "mono_to_vertex_cover",
        accepts: "monotone ex1 cnf, or the sat output of red1",
        planarity: Planarity::Preserves,
        run: |i, p| match p {
            Problem::Sat => {
                let f = red1_groups(cnf("mono_to_vertex_cover", i, p, Problem::Sat)?)?;
                let mut out = mono_to_vertex_cover(&f)?;
                out.source_problem = Problem::Sat;
                Ok(out)
            }
            _ => mono_to_vertex_cover(cnf("mono_to_vertex_cover", i, p, Problem::ExactlyOne)?),
        },
    },
    Stage {
        name: "vc_to_dominating_set",
        accepts: "vertex cover graph, exact k",
        planarity: Planarity::Preserves,
        run: |i, p| {
            let (g, k) = exact_k("vc_to_dominating_set", i, p)?;
            vc_to_dominating_set(&g, k)
        },
    },
    Stage {
        name: "vc_to_feedback_vertex_set",
        accepts: "vertex cover graph, exact k",
        planarity: Planarity::Preserves,
        run: |i, p| {
            let (g, k) = exact_k("vc_to_feedback_vertex_set", i, p)?;
            vc_to_feedback_vertex_set(&g, k)
        },
    },
    Stage {
        name: "vc_to_hitting_set",
        accepts: "vertex cover graph",
        planarity: Planarity::Preserves,
        run: |i, p| {
            let (g, m) = vc_graph("vc_to_hitting_set", i, p)?;
            vc_to_hitting_set(g, m)
        },
    },
    Stage {
        name: "x3c_to_clique_cover",
        accepts: "x3c set system",
        planarity: Planarity::Preserves,
        run: |i, p| x3c_to_clique_cover(x3c("x3c_to_clique_cover", i, p)?),
    },
    Stage {
        name: "x3c_to_partition_into_triangles",
        accepts: "x3c set system",
        planarity: Planarity::Preserves,
        run: |i, p| x3c_to_partition_into_triangles(x3c("x3c_to_partition_into_triangles", i, p)?),
    },
    Stage {
        name: "x3c_to_partition_into_claws",
        accepts: "x3c set system, element degrees 2 or 3",
        planarity: Planarity::Preserves,
        run: |i, p| x3c_to_partition_into_claws(x3c("x3c_to_partition_into_claws", i, p)?),
    },
    Stage {
        name: "x3c_to_bipartite_dominating_set",
        accepts: "x3c set system, element degrees <= 3",
        planarity: Planarity::Preserves,
        run: |i, p| x3c_to_bipartite_dominating_set(x3c("x3c_to_bipartite_dominating_set", i, p)?),
    },
];

pub fn stage(name: &str) -> Result<&'static Stage> {
    STAGES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Stage list from `"a,b,c"`.
pub fn parse_chain(spec: &str) -> Result<Vec<&'static Stage>> {
    let names: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(Error::InvalidArgument("empty chain".into()));
    }
    names.into_iter().map(stage).collect()
}

/// Damage applied to every formula a stage emits, for the harness
/// self-test: the first literal of the last clause changes sign. Gadget
/// clauses come last in every construction, so this corrupts a gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    FlipLastClause,
}

impl Fault {
    pub(crate) fn apply_cnf(self, f: &CnfFormula) -> CnfFormula {
        let mut clauses = f.clauses().to_vec();
        if let Some(last) = clauses.last_mut() {
            let mut lits = last.literals().to_vec();
            lits[0] = !lits[0];
            *last = crate::formula::Clause::new(lits);
        }
        let mut out = CnfFormula::from_clauses(f.num_vars(), clauses).expect("same variables");
        for (v, n) in f.var_names() {
            out.set_var_name(*v, n.clone());
        }
        out
    }

    fn apply(self, out: &mut ReductionOutput) {
        if let Instance::Cnf(f) = &out.target {
            out.target = Instance::Cnf(self.apply_cnf(f));
        }
    }
}

/// Whether the output of `stages` must be planar when the input is.
pub fn promises_planarity(stages: &[&Stage], input_planar: bool) -> bool {
    stages.iter().fold(input_planar, |planar, st| match st.planarity {
        Planarity::Preserves => planar,
        Planarity::Produces => true,
        Planarity::Ignores => false,
    })
}

/// Runs `stages` in order on `input`, composing relations and lifters.
pub fn run_chain(stages: &[&Stage], input: &Instance, problem: Problem, fault: Option<Fault>) -> Result<ReductionOutput> {
    let (first, rest) = stages
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty chain".into()))?;
    let mut out = first.run(input, problem)?;
    if let Some(f) = fault {
        f.apply(&mut out);
    }
    for st in rest {
        let mut next = st.run(&out.target, out.target_problem)?;
        if let Some(f) = fault {
            f.apply(&mut next);
        }
        out = out.then(next)?;
    }
    Ok(out)
}
