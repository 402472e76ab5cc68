//! The parsimonious planar crossover box and 3SAT planarization.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::formula::{incidence_graph, Assignment, Clause, CnfFormula, Literal};
use crate::planarity::{enumerate_crossings, spine_layout, Crossing, Layout};

/// Variables introduced for each crossing: a1, b1, a2, b2, α, β, γ, δ, ξ.
pub const BOX_FRESH_VARS: u32 = 9;
pub const BOX_CLAUSES: usize = 22;

/// One instance of the box over concrete variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossoverBox {
    pub a: u32,
    pub b: u32,
    pub a1: u32,
    pub b1: u32,
    pub a2: u32,
    pub b2: u32,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub xi: u32,
    pub clauses: Vec<Clause>,
}

/// Values of the box's variables for one assignment to `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxValues {
    pub a: bool,
    pub b: bool,
    pub a1: bool,
    pub b1: bool,
    pub a2: bool,
    pub b2: bool,
    pub alpha: bool,
    pub beta: bool,
    pub gamma: bool,
    pub delta: bool,
    pub xi: bool,
}

impl CrossoverBox {
    #[allow(clippy::too_many_arguments)]
    fn with_vars(a: u32, b: u32, a1: u32, b1: u32, a2: u32, b2: u32, internal: [u32; 5]) -> Self {
        let [alpha, beta, gamma, delta, xi] = internal;
        let p = Literal::pos;
        let n = Literal::neg;
        let c = |ls: &[Literal]| Clause::new(ls.to_vec());
        let clauses = vec![
            c(&[n(a2), n(b2), p(alpha)]),
            c(&[p(a2), n(alpha)]),
            c(&[p(b2), n(alpha)]),
            c(&[n(a2), p(b1), p(beta)]),
            c(&[p(a2), n(beta)]),
            c(&[n(b1), n(beta)]),
            c(&[p(a1), p(b1), p(gamma)]),
            c(&[n(a1), n(gamma)]),
            c(&[n(b1), n(gamma)]),
            c(&[p(a1), n(b2), p(delta)]),
            c(&[n(a1), n(delta)]),
            c(&[p(b2), n(delta)]),
            c(&[p(alpha), p(delta), p(xi)]),
            c(&[n(xi), p(beta), p(gamma)]),
            c(&[n(alpha), n(beta)]),
            c(&[n(beta), n(gamma)]),
            c(&[n(gamma), n(delta)]),
            c(&[n(delta), n(alpha)]),
            c(&[p(a2), n(a)]),
            c(&[p(a), n(a2)]),
            c(&[p(b2), n(b)]),
            c(&[p(b), n(b2)]),
        ];
        CrossoverBox {
            a,
            b,
            a1,
            b1,
            a2,
            b2,
            alpha,
            beta,
            gamma,
            delta,
            xi,
            clauses,
        }
    }

    /// All eleven variables in the order a, b, a1, b1, a2, b2, α, β, γ, δ, ξ.
    pub fn vars(&self) -> [u32; 11] {
        [
            self.a, self.b, self.a1, self.b1, self.a2, self.b2, self.alpha, self.beta, self.gamma, self.delta,
            self.xi,
        ]
    }

    /// Writes `values` into `v` at this box's indices.
    pub fn assign(&self, values: &BoxValues, v: &mut Assignment) {
        let vals = [
            values.a,
            values.b,
            values.a1,
            values.b1,
            values.a2,
            values.b2,
            values.alpha,
            values.beta,
            values.gamma,
            values.delta,
            values.xi,
        ];
        for (var, val) in self.vars().into_iter().zip(vals) {
            v.set(var, val);
        }
    }
}

/// Standalone box over `fresh_base .. fresh_base + 11`, in the order of
/// [`CrossoverBox::vars`].
pub fn emit_crossover_box(fresh_base: u32) -> CrossoverBox {
    let v = |i: u32| fresh_base + i;
    CrossoverBox::with_vars(v(0), v(1), v(2), v(3), v(4), v(5), [v(6), v(7), v(8), v(9), v(10)])
}

/// The box as a formula over variables `1..=11`.
pub fn crossover_box_formula() -> (CrossoverBox, CnfFormula) {
    let bx = emit_crossover_box(1);
    let mut f = CnfFormula::from_clauses(11, bx.clauses.clone()).unwrap();
    for (var, name) in bx.vars().into_iter().zip(["a", "b", "a1", "b1", "a2", "b2", "α", "β", "γ", "δ", "ξ"]) {
        f.set_var_name(var, name);
    }
    (bx, f)
}

/// The unique satisfying extension of an assignment to the old variables.
pub fn extend_through_box(a: bool, b: bool) -> BoxValues {
    let beta = a && !b;
    let gamma = !a && !b;
    BoxValues {
        a,
        b,
        a1: a,
        b1: b,
        a2: a,
        b2: b,
        alpha: a && b,
        beta,
        gamma,
        delta: !a && b,
        xi: beta || gamma,
    }
}

/// One replaced crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub crossing: Crossing,
    /// Source variables of `edge_a` and `edge_b`.
    pub source_vars: (u32, u32),
    /// First index of the 9-variable block.
    pub block_start: u32,
    /// Whether the box's `b` is the chain variable before the crossing on
    /// `edge_b` (otherwise it is the one after).
    pub b_is_before: bool,
    pub boxed: CrossoverBox,
}

/// Everything needed to audit a planarization and lift assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarizationTrace {
    pub source: CnfFormula,
    pub layout: Option<Layout>,
    pub records: Vec<CrossingRecord>,
    /// `(clause, source variable, final chain variable)` for each re-targeted edge.
    pub retargeted: Vec<(usize, u32, u32)>,
}

impl PlanarizationTrace {
    pub fn num_crossings(&self) -> usize {
        self.records.len()
    }

    pub fn fresh_blocks(&self) -> Vec<(u32, u32)> {
        self.records
            .iter()
            .map(|r| (r.block_start, BOX_FRESH_VARS))
            .collect()
    }

    /// One line per crossing: edges, ranks, and the fresh block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "crossings {}", self.records.len()).unwrap();
        for (i, r) in self.records.iter().enumerate() {
            let c = &r.crossing;
            writeln!(
                out,
                "crossing {i} edges {} {} ranks {} {} vars {} {} block {}..{} b_side {}",
                c.edge_a,
                c.edge_b,
                c.order_on_a,
                c.order_on_b,
                r.source_vars.0,
                r.source_vars.1,
                r.block_start,
                r.block_start + BOX_FRESH_VARS - 1,
                if r.b_is_before { "before" } else { "after" },
            )
            .unwrap();
        }
        out
    }
}

fn cross_sign(l: &Layout, ea: (usize, usize), eb: (usize, usize)) -> bool {
    let p = &l.positions;
    let dx_a = &p[ea.1].x - &p[ea.0].x;
    let dy_a = &p[ea.1].y - &p[ea.0].y;
    let dx_b = &p[eb.1].x - &p[eb.0].x;
    let dy_b = &p[eb.1].y - &p[eb.0].y;
    dx_a * dy_b - dy_a * dx_b > num_traits::Zero::zero()
}

/// Replaces every crossing of the spine layout of `f` by a crossover box.
///
/// Crossings are numbered in enumeration order; crossing `k` owns variables
/// `n + 9k + 1 ..= n + 9k + 9`, where the first is the new chain variable on
/// `edge_a` and the second the one on `edge_b`. Original clauses keep their
/// position and polarity but refer to the last chain variable of each edge;
/// box clauses follow in crossing order.
pub fn planarize(f: &CnfFormula) -> Result<(CnfFormula, PlanarizationTrace)> {
    f.check_arity(0, 3, "at most 3 literals")?;
    let ig = incidence_graph(f);
    let layout = spine_layout(&ig)?;
    let crossings = enumerate_crossings(&layout)?;
    if crossings.is_empty() {
        return Ok((
            f.clone(),
            PlanarizationTrace {
                source: f.clone(),
                layout: Some(layout),
                records: Vec::new(),
                retargeted: Vec::new(),
            },
        ));
    }

    let n = f.num_vars();
    let block = |k: usize| n + BOX_FRESH_VARS * k as u32 + 1;
    // chain[e] = crossing ids along edge e in rank order
    let mut chain: Vec<Vec<usize>> = vec![Vec::new(); ig.edges.len()];
    for (k, c) in crossings.iter().enumerate() {
        chain[c.edge_a].push(k);
        chain[c.edge_b].push(k);
    }
    for (e, ks) in chain.iter_mut().enumerate() {
        ks.sort_by_key(|&k| {
            let c = &crossings[k];
            if c.edge_a == e {
                c.order_on_a
            } else {
                c.order_on_b
            }
        });
    }
    let new_var = |k: usize, e: usize| -> u32 {
        if crossings[k].edge_a == e {
            block(k)
        } else {
            block(k) + 1
        }
    };
    let var_before = |k: usize, e: usize| -> u32 {
        let pos = chain[e].iter().position(|&x| x == k).unwrap();
        if pos == 0 {
            ig.edges[e].0
        } else {
            new_var(chain[e][pos - 1], e)
        }
    };

    let mut out = CnfFormula::new(n + BOX_FRESH_VARS * crossings.len() as u32);
    for (&v, name) in f.var_names() {
        out.set_var_name(v, name.clone());
    }
    let mut records = Vec::with_capacity(crossings.len());
    for (k, c) in crossings.iter().enumerate() {
        let (ea, eb) = (c.edge_a, c.edge_b);
        let base = block(k);
        let seg_a = layout.segments[ea];
        let seg_b = layout.segments[eb];
        let b_is_before = cross_sign(&layout, seg_a, seg_b);
        let a = var_before(k, ea);
        let a1 = base;
        let (b, b1) = if b_is_before {
            (var_before(k, eb), base + 1)
        } else {
            (base + 1, var_before(k, eb))
        };
        let bx = CrossoverBox::with_vars(a, b, a1, b1, base + 2, base + 3, [base + 4, base + 5, base + 6, base + 7, base + 8]);
        records.push(CrossingRecord {
            crossing: c.clone(),
            source_vars: (ig.edges[ea].0, ig.edges[eb].0),
            block_start: base,
            b_is_before,
            boxed: bx,
        });
    }

    let mut retargeted = Vec::new();
    let mut final_var: std::collections::HashMap<(u32, usize), u32> = std::collections::HashMap::new();
    for (e, &(v, j)) in ig.edges.iter().enumerate() {
        if let Some(&last) = chain[e].last() {
            let fv = new_var(last, e);
            final_var.insert((v, j), fv);
            retargeted.push((j, v, fv));
        }
    }
    for (j, c) in f.clauses().iter().enumerate() {
        let lits = c
            .iter()
            .map(|l| match final_var.get(&(l.var(), j)) {
                Some(&fv) => l.with_var(fv),
                None => l,
            })
            .collect();
        out.push(Clause::new(lits))?;
    }
    for r in &records {
        for c in &r.boxed.clauses {
            out.push(c.clone())?;
        }
    }
    Ok((
        out,
        PlanarizationTrace {
            source: f.clone(),
            layout: Some(layout),
            records,
            retargeted,
        },
    ))
}

/// Unique extension of a source model to the planarized formula.
pub fn lift_assignment(trace: &PlanarizationTrace, v: &Assignment) -> Result<Assignment> {
    if let Some(j) = trace.source.first_falsified(v)? {
        return Err(Error::NotSatisfying { clause: j });
    }
    Ok(lift_unchecked(trace, v))
}

/// Like [`lift_assignment`] but without the source check; used when lifting
/// non-models for bijection tests.
pub fn lift_unchecked(trace: &PlanarizationTrace, v: &Assignment) -> Assignment {
    let n = trace.source.num_vars();
    let mut out = v.truncated(n);
    out.resize(n + BOX_FRESH_VARS * trace.records.len() as u32);
    for r in &trace.records {
        let (xa, xb) = r.source_vars;
        // every chain variable carries its edge's source value, so the box
        // sees the same pair whichever side its b sits on
        r.boxed.assign(&extend_through_box(v.value(xa), v.value(xb)), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_models(f: &CnfFormula) -> usize {
        assert!(f.num_vars() <= 24);
        (0..1u64 << f.num_vars())
            .filter(|&w| f.evaluate(&Assignment::from_word(f.num_vars(), w)).unwrap())
            .count()
    }

    #[test]
    fn box_shape() {
        let (bx, f) = crossover_box_formula();
        assert_eq!(bx.clauses.len(), BOX_CLAUSES);
        assert_eq!(f.num_vars(), 11);
        let arity3 = bx.clauses.iter().filter(|c| c.len() == 3).count();
        assert_eq!(arity3, 6);
    }

    #[test]
    fn box_models_are_the_diagonal() {
        let (bx, f) = crossover_box_formula();
        let mut proj = Vec::new();
        for w in 0..1u64 << 11 {
            let v = Assignment::from_word(11, w);
            if f.evaluate(&v).unwrap() {
                proj.push([bx.a, bx.b, bx.a1, bx.b1].map(|x| v.value(x) as u8));
            }
        }
        proj.sort();
        assert_eq!(proj, vec![[0, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 1, 1]]);
    }

    #[test]
    fn extension_matches_enumeration() {
        let (bx, f) = crossover_box_formula();
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let mut found = Vec::new();
            for w in 0..1u64 << 11 {
                let v = Assignment::from_word(11, w);
                if v.value(bx.a) == a && v.value(bx.b) == b && f.evaluate(&v).unwrap() {
                    found.push(v);
                }
            }
            assert_eq!(found.len(), 1);
            let mut expect = Assignment::all(11, false);
            bx.assign(&extend_through_box(a, b), &mut expect);
            assert_eq!(found[0], expect);
        }
        let e = extend_through_box(false, false);
        assert!(e.gamma && e.xi && !e.alpha && !e.beta && !e.delta);
    }

    #[test]
    fn planar_input_is_unchanged() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let (g, t) = planarize(&f).unwrap();
        assert_eq!(g, f);
        assert!(t.records.is_empty());
        let v = Assignment::new(vec![true, false, false]);
        assert_eq!(lift_assignment(&t, &v).unwrap(), v);
    }

    #[test]
    fn arity_four_rejected() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(matches!(planarize(&f), Err(Error::Arity { .. })));
    }

    #[test]
    fn one_crossing_adds_one_box() {
        // (x1 x3)(x2 x4): clause 0 above, clause 1 below the spine; add a
        // third clause above over (x2, x4) to force a crossing with clause 0
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 3], &[1, 2], &[2, 4]]).unwrap();
        let (g, t) = planarize(&f).unwrap();
        assert_eq!(t.num_crossings(), 1);
        assert_eq!(g.num_vars(), f.num_vars() + 9);
        assert_eq!(g.num_clauses(), f.num_clauses() + 22);
        assert_eq!(count_models(&g), count_models(&f));
        assert!(crate::planarity::formula_is_planar(&g));
    }
}
