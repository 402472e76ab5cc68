//! The crossover box: eleven variables whose four models carry `a` to `a1`
//! and `b` to `b1` while staying planar.

use std::collections::BTreeSet;

use planred::crossover::crossover_box_formula;
use planred::oracles::{count_naive, Budget, Semantics};
use planred::planarity::formula_is_planar;

pub fn run() -> planred::Result<()> {
    let (bx, f) = crossover_box_formula();
    println!("{} variables, {} clauses", f.num_vars(), f.num_clauses());

    let models = count_naive(&f, Semantics::Sat, &Budget::enumerating(16))?;
    let proj: BTreeSet<[bool; 4]> = models
        .enumerated
        .iter()
        .map(|m| [bx.a, bx.b, bx.a1, bx.b1].map(|v| m.contains(&(v as usize))))
        .collect();
    for p in &proj {
        println!("a={} b={} -> a1={} b1={}", p[0] as u8, p[1] as u8, p[2] as u8, p[3] as u8);
    }
    assert_eq!(models.count, 4u32.into());
    assert!(proj.iter().all(|p| p[0] == p[2] && p[1] == p[3]));
    assert!(formula_is_planar(&f));
    println!("models={} planar=true", models.count);
    Ok(())
}

fn main() {
    run().expect("crossover box");
}
