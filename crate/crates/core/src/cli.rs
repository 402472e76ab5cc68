//! Command-line driver. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or every verdict held |
//! | 1 | a verdict failed or was skipped |
//! | 2 | usage error (bad flag, unknown stage or problem) |
//! | 3 | input file does not parse |
//! | 4 | chain stages do not fit together, or the problem does not fit the file |
//! | 5 | a counting budget ran out |
//! | 6 | file could not be read or written |
//! | 7 | the instance breaks a stage precondition (arity, monotonicity, ...) |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use planred::crossover::PlanarizationTrace;
use planred::formula::{incidence_graph, parse_dimacs, CnfFormula};
use planred::graph::{parse_graph, to_dot};
use planred::harness::{
    all_hold, check_registry, default_corpus, parse_chain, run_chain, self_test, tally, verify_gadgets,
    verify_reduction, Fault, Verdict,
};
use planred::oracles::{count_instance, ilp_optimize, Budget, SizeMode};
use planred::planarity::spine_layout;
use planred::reduction::{Instance, Lifter, Problem, ReductionOutput};
use planred::setgraph::{parse_ilp, parse_set_system, SetFileKind};
use planred::{sat, setgraph, Error};

#[derive(Parser)]
#[command(name = "planred", version, about = "Parsimonious planar reductions and exact counters")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a chain of reductions on an instance file.
    Reduce(ReduceArgs),
    /// Count the solutions of an instance.
    Count(CountArgs),
    /// Run a verification corpus and print one verdict per case.
    Verify(VerifyArgs),
    /// Write an instance's graph as DOT.
    ExportDot(ExportArgs),
}

#[derive(Args)]
struct ProblemFlags {
    /// Size bound for vertex cover, dominating set, FVS and hitting set.
    #[arg(long)]
    k: Option<usize>,
    /// Count sets of size exactly K instead of at most K.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct BudgetFlags {
    /// Search node limit.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
    /// Print up to this many solutions.
    #[arg(long, default_value_t = 0)]
    enumerate: usize,
}

impl BudgetFlags {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            enumerate_limit: self.enumerate,
            ..Budget::default()
        }
    }
}

#[derive(Args)]
struct ReduceArgs {
    /// Comma-separated stage names, e.g. `red1,mono_to_vertex_cover`.
    #[arg(long)]
    chain: String,
    /// Input instance; the format follows the extension (.cnf, .graph, .x3c, .hs, .ilp).
    input: PathBuf,
    /// Target instance.
    #[arg(short, long)]
    output: PathBuf,
    /// Problem the input is read as. Defaults by format: sat, vc, x3c or hs.
    #[arg(long)]
    problem: Option<CountKind>,
    #[command(flatten)]
    flags: ProblemFlags,
    /// Manifest path [default: <output>.manifest].
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Write the planarization trace of every planarizing stage here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the target's graph (incidence graph for formulas) as DOT.
    #[arg(long)]
    emit_dot: Option<PathBuf>,
    /// Builder witness path, for `sat_to_ilp` and `make_ambiguous_instance`
    /// [default: <output>.point].
    #[arg(long)]
    point: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Sat,
    Ex1,
    X3c,
    Hs,
    Vc,
    Ds,
    Fvs,
    Triangles,
    Claws,
    /// Maximum objective; `count=` is the number of optimal points.
    Ilp,
    /// Feasible points, ignoring the objective.
    IlpFeasible,
}

#[derive(Args)]
struct CountArgs {
    kind: CountKind,
    input: PathBuf,
    #[command(flatten)]
    flags: ProblemFlags,
    #[command(flatten)]
    budget: BudgetFlags,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusName {
    Default,
    Gadgets,
    SelfTest,
}

#[derive(Args)]
struct VerifyArgs {
    corpus: CorpusName,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Damage the last clause of every emitted formula; a sound harness
    /// then reports failures.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Args)]
struct ExportArgs {
    input: PathBuf,
    /// DOT output; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// For formulas, pin vertices to the spine layout used by planarization.
    #[arg(long)]
    layout: bool,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => 3,
            Error::StageMismatch { .. } => 4,
            Error::BudgetExceeded { .. } => 5,
            Error::UnknownName(_) | Error::InvalidArgument(_) => 2,
            _ => 7,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 6,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: 6,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// An input file, with the `k` from a hitting-set header if there was one.
fn load(path: &Path) -> Result<(Instance, Option<usize>), Failure> {
    let text = read(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    Ok(match ext {
        "cnf" | "dimacs" => (Instance::Cnf(parse_dimacs(&text)?), None),
        "graph" | "g" => (Instance::Graph(parse_graph(&text)?), None),
        "x3c" | "hs" | "sets" => {
            let (s, kind) = parse_set_system(&text)?;
            let k = match kind {
                SetFileKind::HittingSet { k } => Some(k),
                SetFileKind::X3c => None,
            };
            (Instance::Sets(s), k)
        }
        "ilp" => (Instance::Ilp(parse_ilp(&text)?), None),
        _ => return Err(usage(format!("cannot infer the format of {}", path.display()))),
    })
}

fn size_mode(flags: &ProblemFlags, file_k: Option<usize>) -> Result<SizeMode, Failure> {
    let k = flags
        .k
        .or(file_k)
        .ok_or_else(|| usage("this problem needs --k"))?;
    Ok(if flags.exact { SizeMode::Exact(k) } else { SizeMode::AtMost(k) })
}

fn problem_of(kind: CountKind, flags: &ProblemFlags, file_k: Option<usize>) -> Result<Problem, Failure> {
    Ok(match kind {
        CountKind::Sat => Problem::Sat,
        CountKind::Ex1 => Problem::ExactlyOne,
        CountKind::X3c => Problem::ExactCover,
        CountKind::Hs => Problem::HittingSet(size_mode(flags, file_k)?),
        CountKind::Vc => Problem::VertexCover(size_mode(flags, file_k)?),
        CountKind::Ds => Problem::DominatingSet(size_mode(flags, file_k)?),
        CountKind::Fvs => Problem::FeedbackVertexSet(size_mode(flags, file_k)?),
        CountKind::Triangles => Problem::TrianglePartition,
        CountKind::Claws => Problem::ClawPartition,
        CountKind::Ilp | CountKind::IlpFeasible => Problem::IlpFeasible,
    })
}

fn default_kind(inst: &Instance, file_k: Option<usize>) -> CountKind {
    match inst {
        Instance::Cnf(_) => CountKind::Sat,
        Instance::Graph(_) => CountKind::Vc,
        Instance::Sets(_) if file_k.is_some() => CountKind::Hs,
        Instance::Sets(_) => CountKind::X3c,
        Instance::Ilp(_) => CountKind::IlpFeasible,
    }
}

fn traces(l: &Lifter, out: &mut Vec<PlanarizationTrace>) {
    match l {
        Lifter::Planarize(t) => out.push((**t).clone()),
        Lifter::Chain(ls) => ls.iter().for_each(|l| traces(l, out)),
        _ => {}
    }
}

fn dot_of(inst: &Instance) -> String {
    to_dot(&inst.planarity_graph(), None)
}

/// Builders that also return a witness, when they make up the whole chain.
fn build_with_witness(chain: &str, inst: &Instance) -> Option<planred::Result<(ReductionOutput, String)>> {
    let f: &CnfFormula = inst.as_cnf()?;
    let point = |v: &planred::formula::Assignment| {
        let ones: Vec<String> = (1..=v.len() as u32).filter(|&i| v.get(i) == Some(true)).map(|i| i.to_string()).collect();
        format!("x {}\n", ones.join(" "))
    };
    match chain.trim() {
        "sat_to_ilp" => Some(setgraph::sat_to_ilp(f).map(|(o, w)| (o, point(&w)))),
        "make_ambiguous_instance" => Some(sat::make_ambiguous_instance(f).map(|(o, w)| (o, point(&w)))),
        _ => None,
    }
}

fn reduce(a: &ReduceArgs) -> Result<i32, Failure> {
    let (inst, file_k) = load(&a.input)?;
    let stages = parse_chain(&a.chain)?;
    // Formulas are read as the first of sat, ex1 that the first stage takes.
    let kinds = match (a.problem, &inst) {
        (Some(k), _) => vec![k],
        (None, Instance::Cnf(_)) => vec![CountKind::Sat, CountKind::Ex1],
        (None, _) => vec![default_kind(&inst, file_k)],
    };
    let mut problem = problem_of(kinds[0], &a.flags, file_k)?;
    for &k in &kinds {
        let p = problem_of(k, &a.flags, file_k)?;
        if !matches!(stages[0].run(&inst, p), Err(Error::StageMismatch { .. })) {
            problem = p;
            break;
        }
    }
    let (out, witness) = match build_with_witness(&a.chain, &inst) {
        Some(r) => {
            let (o, w) = r?;
            if o.source_problem != problem {
                return Err(Error::StageMismatch {
                    stage: a.chain.clone(),
                    got: problem.label(),
                }
                .into());
            }
            (o, Some(w))
        }
        None => (run_chain(&stages, &inst, problem, None)?, None),
    };
    write(&a.output, &out.target_text())?;
    let manifest = a.manifest.clone().unwrap_or_else(|| with_suffix(&a.output, ".manifest"));
    write(&manifest, &out.manifest())?;
    if let Some(w) = witness {
        write(&a.point.clone().unwrap_or_else(|| with_suffix(&a.output, ".point")), &w)?;
    }
    if let Some(p) = &a.trace {
        let mut ts = Vec::new();
        traces(&out.lifter, &mut ts);
        let mut text = format!("planarizations {}\n", ts.len());
        for (i, t) in ts.iter().enumerate() {
            writeln!(text, "planarization {i}").unwrap();
            text.push_str(&t.to_text());
        }
        write(p, &text)?;
    }
    if let Some(p) = &a.emit_dot {
        write(p, &dot_of(&out.target))?;
    }
    print!("{}", out.manifest());
    Ok(0)
}

fn count(a: &CountArgs) -> Result<i32, Failure> {
    let (inst, file_k) = load(&a.input)?;
    let budget = a.budget.budget();
    let report = if a.kind == CountKind::Ilp {
        let i = inst.as_ilp().ok_or_else(|| Error::StageMismatch {
            stage: "count ilp".into(),
            got: format!("a {} instance", inst.kind()),
        })?;
        ilp_optimize(i, &budget)?
    } else {
        count_instance(problem_of(a.kind, &a.flags, file_k)?, &inst, &budget)?
    };
    print!("{}", report.to_text());
    Ok(0)
}

fn print_verdicts(v: &[Verdict]) {
    for x in v {
        print!("{}", x.to_text());
    }
    let (p, f, s) = tally(v);
    println!("summary pass={p} fail={f} skip={s}");
}

fn verify(a: &VerifyArgs) -> Result<i32, Failure> {
    let fault = a.inject_fault.then_some(Fault::FlipLastClause);
    let v = match a.corpus {
        CorpusName::Default => {
            let cases = default_corpus(a.seed);
            check_registry(&cases)?;
            verify_reduction(&cases, fault)
        }
        CorpusName::Gadgets => verify_gadgets(fault),
        CorpusName::SelfTest => {
            return Ok(match self_test(a.seed) {
                Ok(v) => {
                    print_verdicts(&v);
                    println!("self-test ok: the damaged run was caught");
                    0
                }
                Err(e) => {
                    println!("self-test failed: {e}");
                    1
                }
            });
        }
    };
    print_verdicts(&v);
    Ok(if all_hold(&v) { 0 } else { 1 })
}

fn export_dot(a: &ExportArgs) -> Result<i32, Failure> {
    let (inst, _) = load(&a.input)?;
    let text = match (&inst, a.layout) {
        (Instance::Cnf(f), true) => {
            let ig = incidence_graph(f);
            let l = spine_layout(&ig)?;
            to_dot(&ig.to_graph(), Some(&l.positions_f64()))
        }
        (_, true) => return Err(usage("--layout applies to formulas only")),
        _ => dot_of(&inst),
    };
    match &a.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let r = match &cli.cmd {
        Cmd::Reduce(a) => reduce(a),
        Cmd::Count(a) => count(a),
        Cmd::Verify(a) => verify(a),
        Cmd::ExportDot(a) => export_dot(a),
    };
    match r {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
