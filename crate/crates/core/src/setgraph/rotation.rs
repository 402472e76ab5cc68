use crate::formula::{incidence_graph, CnfFormula};
use crate::planarity::planar_embedding;

/// Cyclic orders used to wire gadgets without crossings.
///
/// `occurrences[x]` lists `(clause, position)` for variable `x` (index 0
/// unused). `positions[j]` permutes the literal positions of clause `j`.
/// Both follow one clockwise rotation system of the incidence graph when it
/// is planar, and plain clause/literal order otherwise.
pub(crate) struct Rotation {
    pub occurrences: Vec<Vec<(usize, usize)>>,
    pub positions: Vec<Vec<usize>>,
}

pub(crate) fn rotation(f: &CnfFormula) -> Rotation {
    let n = f.num_vars() as usize;
    let mut occurrences = vec![Vec::new(); n + 1];
    for (j, c) in f.clauses().iter().enumerate() {
        for (p, l) in c.iter().enumerate() {
            occurrences[l.var() as usize].push((j, p));
        }
    }
    let mut positions: Vec<Vec<usize>> = f.clauses().iter().map(|c| (0..c.len()).collect()).collect();

    let ig = incidence_graph(f);
    let Some(emb) = planar_embedding(&ig.to_graph()) else {
        return Rotation { occurrences, positions };
    };
    let nv = ig.variables.len();
    for (vi, &x) in ig.variables.iter().enumerate() {
        let occ = &occurrences[x as usize];
        let ordered = emb.rotation[vi]
            .iter()
            .filter_map(|&cv| occ.iter().find(|o| o.0 == cv - nv).copied())
            .collect();
        occurrences[x as usize] = ordered;
    }
    for (j, c) in f.clauses().iter().enumerate() {
        let lits = c.literals();
        positions[j] = emb.rotation[nv + j]
            .iter()
            .filter_map(|&vv| lits.iter().position(|l| l.var() == ig.variables[vv]))
            .collect();
    }
    Rotation { occurrences, positions }
}
