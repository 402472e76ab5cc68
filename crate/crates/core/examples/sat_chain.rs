//! From 3SAT to monotone 1-in-3 SAT and back, one named stage at a time.
//! Chains are plain strings, so new compositions need no code.

use planred::formula::{random_3cnf, ArityMix};
use planred::harness::{parse_chain, run_chain};
use planred::oracles::count_instance;
use planred::oracles::Budget;
use planred::reduction::{Instance, Problem};

pub fn run() -> planred::Result<()> {
    let b = Budget::default();
    let f = random_3cnf(4, 3, ArityMix::MIXED, 11)?;
    let src = Instance::Cnf(f);
    let base = count_instance(Problem::Sat, &src, &b)?.count;
    println!("source: {} models", base);

    let mut spec = String::new();
    for stage in ["to_ex3sat", "to_1ex3sat", "to_1ex3monosat", "red1"] {
        if !spec.is_empty() {
            spec.push(',');
        }
        spec.push_str(stage);
        let out = run_chain(&parse_chain(&spec)?, &src, Problem::Sat, None)?;
        let n = count_instance(out.target_problem, &out.target, &b)?.count;
        println!(
            "{stage:>15}: {:>4} vars, counted as {:<4} {n}",
            out.target.as_cnf().map_or(0, |t| t.num_vars()),
            out.target_problem.label()
        );
        assert_eq!(n, out.expected_count(&base));
    }
    Ok(())
}

fn main() {
    run().expect("chain");
}
