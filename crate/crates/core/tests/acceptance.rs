//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use planred::crossover::crossover_box_formula;
use planred::formula::{Assignment, ArityMix};
use planred::harness::{
    cases, corpus_of, random_x3c, self_test, source_formula, stage, verify_gadgets, verify_reduction,
    verify_with_witness, Source, Status, Verdict,
};
use planred::oracles::{
    count_hitting_sets, count_naive, count_sat, count_vertex_covers, ilp_optimize, min_dominating_set_size,
    min_feedback_vertex_set_size, Budget, Semantics, SizeMode,
};
use planred::planarity::{formula_is_planar, is_planar};
use planred::reduction::{Instance, Problem};
use planred::setgraph::{mono_to_vertex_cover, sat_to_ilp, vc_to_hitting_set, x3c_to_clique_cover};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Everything the blanket planarity criterion needs from earlier ones.
#[derive(Default)]
struct Seen {
    verdicts: Vec<Verdict>,
}

fn failures(v: &[Verdict]) -> String {
    let bad: Vec<String> = v
        .iter()
        .filter(|x| x.status != Status::Pass)
        .take(3)
        .map(|x| format!("[{}]", x.to_text().lines().next().unwrap_or("")))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!(" first failures: {}", bad.join(" "))
    }
}

fn all_pass(v: &[Verdict]) -> bool {
    v.iter().all(|x| x.status == Status::Pass)
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn c01_crossover_box(_: &mut Seen) -> Outcome {
    let (bx, f) = crossover_box_formula();
    let r = count_naive(&f, Semantics::Sat, &Budget::enumerating(1 << 11)).expect("enumerate box");
    let proj: BTreeSet<[bool; 4]> = r
        .enumerated
        .iter()
        .map(|m| [bx.a, bx.b, bx.a1, bx.b1].map(|v| m.contains(&(v as usize))))
        .collect();
    let diagonal = proj.len() == 4 && proj.iter().all(|p| p[0] == p[2] && p[1] == p[3]);
    let planar = formula_is_planar(&f);
    outcome(
        r.count == big(4) && diagonal && planar && r.search_space == big(1 << 11),
        format!(
            "{} models over 2^{} assignments, diagonal projections {diagonal}, planar {planar}",
            r.count,
            f.num_vars()
        ),
    )
}

fn c02_gadget_uniqueness(_: &mut Seen) -> Outcome {
    let v = verify_gadgets(None);
    let pick = |name: &str| v.iter().find(|x| x.name == name).expect("gadget verdict");
    let (g, t) = (pick("gadget:g"), pick("gadget:exactly-one-triple"));
    outcome(
        g.passed() && t.passed(),
        format!("G: {}; triple: {}", g.detail, t.detail),
    )
}

fn c03_planarize(seen: &mut Seen) -> Outcome {
    let cs = cases("planarize", 110, 30_000, Some((1, 0)), |i| Source::FewCrossings {
        n: 4 + i as u32 % 5,
        m: 3 + i % 4,
        max_crossings: 2,
    });
    let v = verify_reduction(&corpus_of(vec![cs]), None);
    let crossed = v.iter().filter(|x| x.target_count.is_some()).count();
    let ok = all_pass(&v);
    let detail = format!("{} formulas (n 4..8, <= 2 crossings), {crossed} counted,{}", v.len(), failures(&v));
    seen.verdicts.extend(v);
    outcome(ok && crossed >= 100, detail)
}

fn c04_sat_chain(seen: &mut Seen) -> Outcome {
    let src = |i: usize| Source::Cnf {
        n: 3 + i as u32 % 6,
        m: 1 + i % 5,
        mix: ArityMix::MIXED,
    };
    let mono = |i: usize| Source::Monotone {
        n: 3 + i as u32 % 6,
        m: 1 + i % 4,
    };
    let corpus = corpus_of(vec![
        cases("to_ex3sat", 100, 40_000, Some((1, 0)), src),
        cases("to_ex3sat,to_1ex3sat", 100, 40_000, Some((1, 0)), src),
        cases("to_1ex3monosat", 40, 41_000, Some((1, 0)), mono),
        cases("red1", 40, 41_000, Some((1, 0)), mono),
    ]);
    let v = verify_reduction(&corpus, None);
    let ok = all_pass(&v);
    let detail = format!(
        "100 formulas (n <= 8, m <= 5) through to_ex3sat and to_1ex3sat, 40 monotone through to_1ex3monosat and red1, {} verdicts{}",
        v.len(),
        failures(&v)
    );
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c05_x3c(seen: &mut Seen) -> Outcome {
    let cs = cases("mono_to_x3c", 60, 50_000, Some((1, 0)), |i| Source::Monotone {
        n: 3 + i as u32 % 5,
        m: 1 + i % 3,
    });
    let mut v = verify_reduction(&corpus_of(vec![cs]), None);
    let gadgets: Vec<Verdict> = verify_gadgets(None)
        .into_iter()
        .filter(|x| x.name.starts_with("gadget:x3c"))
        .collect();
    let ok = all_pass(&v) && gadgets.len() == 5 && all_pass(&gadgets);
    let detail = format!(
        "{} monotone formulas (m <= 3), {} gadget verdicts{}",
        v.len(),
        gadgets.len(),
        failures(&v)
    );
    v.extend(gadgets);
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c06_vertex_cover(seen: &mut Seen) -> Outcome {
    let b = Budget::default();
    let f = planred::formula::CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
    let out = mono_to_vertex_cover(&f).unwrap();
    let g = out.target_graph();
    let k = out.k().unwrap();
    let at_k = count_vertex_covers(g, SizeMode::Exact(k), &b).unwrap().count;
    let below = count_vertex_covers(g, SizeMode::AtMost(k - 1), &b).unwrap().count;
    let worked = k == 11 && at_k == big(6) && out.multiplier == big(2) && below == big(0);

    let mut groups = Vec::new();
    for (m, mult) in [(1usize, 2u64), (2, 4)] {
        groups.push(cases("mono_to_vertex_cover", 12, 60_000 + 100 * m as u64, Some((mult, 0)), move |i| {
            Source::Monotone { n: 3 + i as u32 % 4, m }
        }));
        groups.push(cases("red1,mono_to_vertex_cover", 6, 60_500 + 100 * m as u64, Some((mult, 0)), move |i| {
            Source::Monotone { n: 3 + i as u32 % 4, m }
        }));
    }
    let v = verify_reduction(&corpus_of(groups), None);
    let ok = worked && all_pass(&v);
    let detail = format!(
        "(x+y+z): K={k}, {at_k} covers of size K, {below} of size <= {}; {} one/two-group formulas with multiplier 2^m{}",
        k - 1,
        v.len(),
        failures(&v)
    );
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c07_ds_fvs_hs(seen: &mut Seen) -> Outcome {
    let b = Budget::default();
    let src = |i: usize| Source::MinCoverGraph {
        n: 4 + i % 5,
        edges: 4 + i % 6,
    };
    let mut groups = Vec::new();
    for chain in ["vc_to_dominating_set", "vc_to_feedback_vertex_set", "vc_to_hitting_set"] {
        groups.push(cases(chain, 24, 70_000, Some((1, 0)), src));
    }
    let corpus = corpus_of(groups);
    let v = verify_reduction(&corpus, None);

    // The target counts are at K; K must also be the target's minimum.
    let mut minima_ok = true;
    let mut hs_ok = true;
    for c in corpus.iter().filter(|c| c.chain != "vc_to_hitting_set") {
        let (inst, problem) = c.source.instantiate(c.seed).unwrap();
        let out = stage(&c.chain).unwrap().run(&inst, problem).unwrap();
        let g = out.target_graph();
        let k = out.k().unwrap();
        let min = if c.chain == "vc_to_dominating_set" {
            min_dominating_set_size(g, &b).unwrap()
        } else {
            min_feedback_vertex_set_size(g, &b).unwrap()
        };
        minima_ok &= min == k;
    }
    // Hitting sets equal vertex covers at every bound, in both modes.
    for c in corpus.iter().filter(|c| c.chain == "vc_to_hitting_set") {
        let Instance::Graph(g) = c.source.instantiate(c.seed).unwrap().0 else {
            unreachable!()
        };
        for k in 0..=g.num_vertices() {
            for mode in [SizeMode::Exact(k), SizeMode::AtMost(k)] {
                let hs = vc_to_hitting_set(&g, mode).unwrap();
                hs_ok &= count_hitting_sets(hs.target_sets(), mode, &b).unwrap().count
                    == count_vertex_covers(&g, mode, &b).unwrap().count;
            }
        }
    }
    let ok = all_pass(&v) && minima_ok && hs_ok;
    let detail = format!(
        "24 graphs per target at K = min cover, {} verdicts, K is the target minimum {minima_ok}, hitting = cover at every bound {hs_ok}{}",
        v.len(),
        failures(&v)
    );
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c08_x3c_graphs(seen: &mut Seen) -> Outcome {
    let src = |i: usize| Source::X3c { p: 1 + i % 3, extra: i % 3 };
    let n = 24;
    let mut groups = Vec::new();
    for chain in [
        "x3c_to_partition_into_triangles",
        "x3c_to_partition_into_claws",
        "x3c_to_bipartite_dominating_set",
        "x3c_to_clique_cover",
    ] {
        groups.push(cases(chain, n, 80_000, Some((1, 0)), src));
    }
    let v = verify_reduction(&corpus_of(groups), None);

    let mut sizes_ok = true;
    let mut duplicates = 0;
    for i in 0..n {
        let Source::X3c { p, extra } = src(i) else { unreachable!() };
        let s = random_x3c(p, extra, 80_000 + i as u64).unwrap();
        let distinct: BTreeSet<&Vec<usize>> = s.sets().iter().collect();
        if distinct.len() < s.num_sets() {
            duplicates += 1;
        }
        let out = x3c_to_clique_cover(&s).unwrap();
        let g = out.target_graph();
        let m = s.num_sets();
        sizes_ok &= g.num_vertices() == 3 * p + 9 * m && g.num_edges() == 18 * m && !g.has_k4();
    }
    let ok = all_pass(&v) && sizes_ok && duplicates > 0;
    let detail = format!(
        "{n} instances ({duplicates} with duplicate triples), clique cover 3p+9m vertices, 18m edges, K4-free {sizes_ok}, {} verdicts{}",
        v.len(),
        failures(&v)
    );
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c09_builders(seen: &mut Seen) -> Outcome {
    let b = Budget::default();
    let n = 50;
    // odd cases are small 2CNFs, which are often unsatisfiable
    let any = |i: usize| match i % 2 {
        0 => Source::Cnf {
            n: 3 + i as u32 % 4,
            m: 2 + i % 3,
            mix: ArityMix::MIXED,
        },
        _ => Source::Cnf {
            n: 2 + (i / 2) as u32 % 2,
            m: 4 + (i / 2) % 3,
            mix: ArityMix::ALL_TWO,
        },
    };
    let sat = |i: usize| Source::Satisfiable {
        n: 3 + i as u32 % 4,
        m: 2 + i % 4,
    };
    let amb = cases("make_ambiguous_instance", n, 90_000, Some((1, 1)), any);
    let one = cases("make_one_valid", n, 91_000, Some((1, 0)), sat);
    let uniq = cases("make_unique_one_valid", n, 92_000, Some((1, 1)), any);
    let corpus = corpus_of(vec![amb.clone(), one.clone(), uniq.clone()]);
    let v = verify_reduction(&corpus, None);

    let witnesses: Vec<Verdict> = amb.iter().map(verify_with_witness).collect();
    let mut all_true = true;
    for c in &one {
        let (inst, problem) = c.source.instantiate(c.seed).unwrap();
        let out = stage("make_one_valid").unwrap().run(&inst, problem).unwrap();
        let t = out.target_cnf();
        all_true &= t.evaluate(&Assignment::all(t.num_vars(), true)).unwrap();
    }
    let mut unique_iff = true;
    let mut unsat_sources = 0;
    for c in &uniq {
        let f = source_formula(&c.source, c.seed).unwrap();
        let out = stage("make_unique_one_valid").unwrap().run(&Instance::Cnf(f.clone()), Problem::Sat).unwrap();
        let src_unsat = count_sat(&f, &b).unwrap().count == big(0);
        let unique = count_sat(out.target_cnf(), &b).unwrap().count == big(1);
        unsat_sources += src_unsat as usize;
        unique_iff &= unique == src_unsat;
    }
    let ok = all_pass(&v) && all_pass(&witnesses) && all_true && unique_iff && unsat_sources > 0;
    let detail = format!(
        "{n} formulas per builder (n <= 6): relations {}, witnesses {}, all-true satisfies {all_true}, unique iff unsatisfiable {unique_iff} ({unsat_sources} unsatisfiable sources){}",
        all_pass(&v),
        all_pass(&witnesses),
        failures(&v)
    );
    seen.verdicts.extend(v);
    outcome(ok, detail)
}

fn c10_ilp(seen: &mut Seen) -> Outcome {
    let b = Budget::default();
    let mut sources: Vec<(Source, u64)> = Vec::new();
    for i in 0..30u64 {
        let n = 2 + (i % 2) as u32;
        sources.push((Source::Cnf { n, m: 4 + (i % 3) as usize, mix: ArityMix::ALL_TWO }, 100_000 + i));
    }
    for i in 0..26u64 {
        let n = 3 + (i % 3) as u32;
        sources.push((Source::Cnf { n, m: 1 + (i % 3) as usize, mix: ArityMix::MIXED }, 101_000 + i));
    }
    let mut ok = true;
    let (mut sat, mut unsat) = (0, 0);
    let mut first_bad = String::new();
    for (src, seed) in &sources {
        let f = source_formula(src, *seed).unwrap();
        let (out, point) = sat_to_ilp(&f).unwrap();
        let ilp = out.target.as_ilp().unwrap();
        let satisfiable = count_sat(&f, &b).unwrap().count > big(0);
        let best = ilp_optimize(ilp, &b).unwrap().optimum;
        let feasible = ilp.is_feasible(&point).unwrap();
        let planar = is_planar(&out.target.planarity_graph());
        if satisfiable {
            sat += 1;
        } else {
            unsat += 1;
        }
        let good = best == Some(satisfiable as i64) && feasible && planar;
        if !good && first_bad.is_empty() {
            first_bad = format!(" first failure: {} seed {seed} optimum {best:?} feasible {feasible} planar {planar}", src.describe());
        }
        ok &= good;
        seen.verdicts.push(checked(format!("sat_to_ilp:{}", src.describe()), *seed, good, planar));
    }
    outcome(
        ok && sat > 0 && unsat > 0,
        format!(
            "{} formulas (n <= 5, {sat} satisfiable, {unsat} not): optimum matches, feasible point holds, planar{first_bad}",
            sources.len()
        ),
    )
}

fn c11_planarity(seen: &mut Seen) -> Outcome {
    let bad: Vec<&Verdict> = seen.verdicts.iter().filter(|v| !v.planarity_holds).collect();
    outcome(
        bad.is_empty() && !seen.verdicts.is_empty(),
        format!(
            "{} outputs from criteria 3-10 checked, {} non-planar{}",
            seen.verdicts.len(),
            bad.len(),
            bad.first().map_or(String::new(), |v| format!(" first: {}", v.name))
        ),
    )
}

fn c12_sensitivity(_: &mut Seen) -> Outcome {
    match self_test(7) {
        Ok(v) => {
            let failed = v.iter().filter(|x| x.status == Status::Fail).count();
            outcome(failed > 0, format!("{failed} of {} damaged checks failed", v.len()))
        }
        Err(e) => outcome(false, format!("damaged run passed: {e}")),
    }
}

/// A verdict for a check done outside the harness, so the planarity
/// blanket sees it too.
fn checked(name: String, seed: u64, ok: bool, planar: bool) -> Verdict {
    Verdict {
        id: 0,
        name,
        seed: Some(seed),
        source: String::new(),
        source_count: None,
        target_count: None,
        multiplier: big(1),
        offset: big(1),
        relation_holds: ok,
        planarity_holds: planar,
        witness_holds: Some(ok),
        status: if ok && planar { Status::Pass } else { Status::Fail },
        detail: String::new(),
        counterexample: None,
    }
}

type Check = fn(&mut Seen) -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Check); 12] = [
        ("crossover box", Duration::from_secs(1), c01_crossover_box),
        ("gadget uniqueness", Duration::from_secs(1), c02_gadget_uniqueness),
        ("planarization parsimony", Duration::from_secs(60), c03_planarize),
        ("sat chain parsimony", Duration::from_secs(120), c04_sat_chain),
        ("x3c parsimony", Duration::from_secs(120), c05_x3c),
        ("vertex cover weak parsimony", Duration::from_secs(120), c06_vertex_cover),
        ("dominating, feedback and hitting sets", Duration::from_secs(60), c07_ds_fvs_hs),
        ("x3c graph family", Duration::from_secs(120), c08_x3c_graphs),
        ("ambiguous and 1-valid builders", Duration::from_secs(120), c09_builders),
        ("ilp emitter", Duration::from_secs(120), c10_ilp),
        ("planarity preservation", Duration::from_secs(120), c11_planarity),
        ("harness sensitivity", Duration::from_secs(60), c12_sensitivity),
    ];
    let mut seen = Seen::default();
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check(&mut seen);
        let took = t.elapsed();
        let pass = o.pass && took <= *limit;
        failed += !pass as usize;
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s, limit {}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
