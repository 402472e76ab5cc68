//! Seeded instance generation.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Independent substreams come from `set_stream`, so a
//! corpus can hand each case its own generator without consuming another's
//! output. Ports that reproduce ChaCha8 and rand's `seed_from_u64` expansion
//! reproduce the corpora bit for bit.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clause, CnfFormula, Literal};
use crate::error::{Error, Result};

/// Generator for `seed`, restricted to substream `stream`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Relative weights of 2- and 3-literal clauses.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ArityMix {
    pub two: u32,
    pub three: u32,
}

impl ArityMix {
    pub const ALL_THREE: ArityMix = ArityMix { two: 0, three: 1 };
    pub const ALL_TWO: ArityMix = ArityMix { two: 1, three: 0 };
    pub const MIXED: ArityMix = ArityMix { two: 1, three: 1 };
}

fn pick_arity(rng: &mut ChaCha8Rng, mix: ArityMix) -> usize {
    if rng.random_range(0..mix.two + mix.three) < mix.two {
        2
    } else {
        3
    }
}

fn distinct_vars(rng: &mut ChaCha8Rng, num_vars: u32, k: usize) -> Vec<u32> {
    let mut vs: Vec<u32> = sample(rng, num_vars as usize, k)
        .into_iter()
        .map(|i| i as u32 + 1)
        .collect();
    vs.sort_unstable();
    vs
}

fn check_args(num_vars: u32, mix: ArityMix) -> Result<()> {
    if mix.two + mix.three == 0 {
        return Err(Error::InvalidArgument("arity mix has zero total weight".into()));
    }
    let need = if mix.three > 0 { 3 } else { 2 };
    if num_vars < need {
        return Err(Error::InvalidArgument(format!(
            "{need}-literal clauses need at least {need} variables, got {num_vars}"
        )));
    }
    Ok(())
}

/// Random formula with distinct variables per clause and random polarities.
/// Never produces unit clauses.
pub fn random_3cnf(num_vars: u32, num_clauses: usize, mix: ArityMix, seed: u64) -> Result<CnfFormula> {
    check_args(num_vars, mix)?;
    let mut rng = seeded_rng(seed, 0);
    let mut f = CnfFormula::new(num_vars);
    for _ in 0..num_clauses {
        let k = pick_arity(&mut rng, mix);
        let lits = distinct_vars(&mut rng, num_vars, k)
            .into_iter()
            .map(|v| Literal::new(v, rng.random_bool(0.5)))
            .collect();
        f.push(Clause::new(lits))?;
    }
    Ok(f)
}

/// Random monotone formula of 3-literal clauses.
pub fn random_monotone_3cnf(num_vars: u32, num_clauses: usize, seed: u64) -> Result<CnfFormula> {
    check_args(num_vars, ArityMix::ALL_THREE)?;
    let mut rng = seeded_rng(seed, 1);
    let mut f = CnfFormula::new(num_vars);
    for _ in 0..num_clauses {
        let lits = distinct_vars(&mut rng, num_vars, 3)
            .into_iter()
            .map(Literal::pos)
            .collect();
        f.push(Clause::new(lits))?;
    }
    Ok(f)
}
