use std::time::Instant;

use num_traits::Zero;

use super::report::{Budget, CountReport};
use super::sat::{count_under, Semantics};
use crate::error::Result;
use crate::formula::Literal;
use crate::setgraph::IlpInstance;

/// Maximum objective over feasible 0/1 points and how many points reach it.
/// `optimum` is `None` when nothing is feasible.
///
/// A program of `= 1` constraints over three variables is a monotone
/// exactly-one formula, so this is two exact counts: objective forced to 1,
/// then (if that is empty) forced to 0.
pub fn ilp_optimize(i: &IlpInstance, budget: &Budget) -> Result<CountReport> {
    let start = Instant::now();
    let f = i.to_cnf();
    let x = i.objective();
    let mut nodes = 0;
    for value in [1i64, 0] {
        let lit = Literal::new(x, value == 1);
        let r = count_under(&f, Semantics::ExactlyOne, &[lit], budget)?;
        nodes += r.nodes;
        if !r.count.is_zero() || value == 0 {
            let mut out = CountReport::new("ilp", r.count.clone(), r.search_space.clone());
            out.optimum = (!r.count.is_zero()).then_some(value);
            out.enumerated = r.enumerated;
            out.nodes = nodes;
            out.elapsed = start.elapsed();
            return Ok(out);
        }
    }
    unreachable!()
}

/// Number of feasible points, ignoring the objective.
pub fn count_ilp_feasible(i: &IlpInstance, budget: &Budget) -> Result<CountReport> {
    let mut r = count_under(&i.to_cnf(), Semantics::ExactlyOne, &[], budget)?;
    r.mode = "ilp-feasible".into();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = Budget::default();
        let one = IlpInstance::new(3, vec![[1, 2, 3]], 1).unwrap();
        let r = ilp_optimize(&one, &b).unwrap();
        assert_eq!((r.optimum, r.count), (Some(1), 1u32.into()));
        let free = IlpInstance::new(1, vec![], 1).unwrap();
        assert_eq!(ilp_optimize(&free, &b).unwrap().optimum, Some(1));
        let bad = IlpInstance::new(4, vec![[1, 2, 3], [1, 2, 4], [3, 4, 2]], 1).unwrap();
        let r = ilp_optimize(&bad, &b).unwrap();
        assert_eq!(r.optimum, Some(0));
        assert_eq!(count_ilp_feasible(&one, &b).unwrap().count, 3u32.into());
    }
}
