//! Exhaustive checks of the building blocks.

use std::collections::BTreeSet;

use super::chains::Fault;
use super::verdict::Verdict;
use crate::crossover::crossover_box_formula;
use crate::formula::CnfFormula;
use crate::oracles::{count_naive, Budget, Semantics};
use crate::planarity::{formula_is_planar, is_planar};
use crate::sat::{exactly_one_triple_formula, gadget_g_formula};
use crate::setgraph::{clause_gadget, variable_gadget};

fn models(f: &CnfFormula, sem: Semantics) -> Vec<Vec<usize>> {
    count_naive(f, sem, &Budget::enumerating(1 << 12)).map_or(Vec::new(), |r| r.enumerated)
}

fn gadget(id: usize, name: &str, holds: bool, count: usize, planar: bool, detail: String) -> Verdict {
    let mut v = Verdict::new(id, format!("gadget:{name}"), None, name);
    v.target_count = Some(count.into());
    v.relation_holds = holds;
    v.planarity_holds = planar;
    v.detail = detail;
    v.settle()
}

/// Crossover box, G, the exactly-one triple, and the X3C clause and
/// variable gadgets (r = 1..4). A fault, if given, is applied to the three
/// formulas before they are enumerated.
pub fn verify_gadgets(fault: Option<Fault>) -> Vec<Verdict> {
    let damage = |f: CnfFormula| fault.map_or(f.clone(), |x| x.apply_cnf(&f));
    let mut out = Vec::new();

    let (bx, f) = crossover_box_formula();
    let f = damage(f);
    let ms = models(&f, Semantics::Sat);
    let proj: BTreeSet<[bool; 4]> = ms
        .iter()
        .map(|m| [bx.a, bx.b, bx.a1, bx.b1].map(|v| m.contains(&(v as usize))))
        .collect();
    let diagonal = (0..4).all(|k| proj.contains(&[k & 1 == 1, k & 2 == 2, k & 1 == 1, k & 2 == 2]));
    out.push(gadget(
        out.len(),
        "crossover-box",
        ms.len() == 4 && proj.len() == 4 && diagonal,
        ms.len(),
        formula_is_planar(&f),
        format!("{} models, projections {:?}", ms.len(), proj),
    ));

    let g = damage(gadget_g_formula());
    let ms = models(&g, Semantics::Sat);
    out.push(gadget(
        out.len(),
        "g",
        ms == [Vec::<usize>::new()],
        ms.len(),
        formula_is_planar(&g),
        format!("models {ms:?}"),
    ));

    let t = damage(exactly_one_triple_formula());
    let ms = models(&t, Semantics::ExactlyOne);
    out.push(gadget(
        out.len(),
        "exactly-one-triple",
        ms == [vec![3]],
        ms.len(),
        formula_is_planar(&t),
        format!("ex1 models {ms:?}"),
    ));

    let c = clause_gadget();
    let states = c.states();
    let mut open: Vec<Vec<usize>> = states.iter().map(|s| c.uncovered_groups(s)).collect();
    open.sort();
    out.push(gadget(
        out.len(),
        "x3c-clause",
        open == [vec![0], vec![1], vec![2]],
        states.len(),
        is_planar(&c.sets.incidence_graph()),
        format!("uncovered terminals per state {open:?}"),
    ));

    for r in 1..=4 {
        let g = variable_gadget(r);
        let states = g.states();
        let mut open: Vec<usize> = states.iter().map(|s| g.uncovered_groups(s).len()).collect();
        open.sort();
        out.push(gadget(
            out.len(),
            &format!("x3c-variable-r{r}"),
            open == [0, r],
            states.len(),
            is_planar(&g.sets.incidence_graph()),
            format!("uncovered connectors per state {open:?}"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_gadgets_hold() {
        let v = verify_gadgets(None);
        assert_eq!(v.len(), 8);
        for x in &v {
            assert!(x.passed(), "{}", x.to_text());
        }
    }

    #[test]
    fn damaged_formulas_are_caught() {
        let v = verify_gadgets(Some(Fault::FlipLastClause));
        let failed: Vec<&str> = v.iter().filter(|x| !x.passed()).map(|x| x.name.as_str()).collect();
        assert!(failed.contains(&"gadget:g"), "{failed:?}");
    }
}
