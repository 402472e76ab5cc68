use crate::error::Result;
use crate::formula::{BoolExpr, CnfFormula, Literal};
use crate::graph::VertexTag;
use crate::reduction::{Def, FreshBlock, Instance, Lifter, Problem, ReductionOutput};

use super::rotation::rotation;
use super::SetSystem;

/// Clause gadget over local elements `g1 g2 g3 | a1 a2 a3 | b1 b2 b3 | c1 c2 c3`
/// (ids 0..12). The nine sets run once around a cycle through the terminals,
/// each internal element owning three consecutive sets, so the gadget stays
/// planar with the terminals on its outer face.
pub const CLAUSE_SETS: [[usize; 3]; 9] = [
    [0, 4, 5],
    [0, 5, 6],
    [0, 6, 7],
    [1, 7, 8],
    [1, 8, 9],
    [1, 9, 10],
    [2, 10, 11],
    [2, 11, 3],
    [2, 3, 4],
];

/// A gadget in isolation: internal elements must be covered exactly once,
/// each group of external elements all or not at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub sets: SetSystem,
    pub internal: Vec<usize>,
    pub groups: Vec<Vec<usize>>,
}

impl Gadget {
    /// Every admissible sub-family, as sorted set indices, found by trying
    /// all of them.
    pub fn states(&self) -> Vec<Vec<usize>> {
        let m = self.sets.num_sets();
        assert!(m <= 20, "gadget too large to enumerate");
        let mut out = Vec::new();
        'outer: for mask in 0u32..1 << m {
            let mut cover = vec![0u8; self.sets.ground_size()];
            for i in 0..m {
                if mask >> i & 1 == 1 {
                    for &e in &self.sets.sets()[i] {
                        cover[e] += 1;
                    }
                }
            }
            if cover.iter().any(|&c| c > 1) || self.internal.iter().any(|&e| cover[e] != 1) {
                continue;
            }
            for g in &self.groups {
                let hit = g.iter().filter(|&&e| cover[e] == 1).count();
                if hit != 0 && hit != g.len() {
                    continue 'outer;
                }
            }
            out.push((0..m).filter(|&i| mask >> i & 1 == 1).collect());
        }
        out
    }

    /// Groups left uncovered by a state.
    pub fn uncovered_groups(&self, state: &[usize]) -> Vec<usize> {
        let covered: Vec<usize> = state.iter().flat_map(|&i| self.sets.sets()[i].iter().copied()).collect();
        (0..self.groups.len())
            .filter(|&k| !self.groups[k].iter().any(|e| covered.contains(e)))
            .collect()
    }
}

pub fn clause_gadget() -> Gadget {
    let mut sets = SetSystem::new(0);
    for i in 0..12 {
        sets.add_element(VertexTag::Gadget {
            kind: "clause",
            owner: 0,
            slot: i,
        });
    }
    for (i, s) in CLAUSE_SETS.iter().enumerate() {
        sets.add_set(s.to_vec(), VertexTag::Gadget {
            kind: "clause-set",
            owner: 0,
            slot: i,
        })
        .expect("static gadget");
    }
    Gadget {
        sets,
        internal: vec![0, 1, 2],
        groups: vec![vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]],
    }
}

/// Local element ids of the variable gadget with `r` occurrences.
struct VarLayout {
    r: usize,
}

impl VarLayout {
    fn s(&self, k: usize) -> usize {
        (k - 1) % (2 * self.r)
    }
    fn m(&self, k: usize) -> usize {
        2 * self.r + k - 1
    }
    fn w(&self, j: usize) -> usize {
        4 * self.r + 2 * (j - 1)
    }
    fn w2(&self, j: usize) -> usize {
        self.w(j) + 1
    }
    fn size(&self) -> usize {
        6 * self.r
    }
    /// Ring sets F_1..F_2r, then attachment sets A_1..A_r.
    fn sets(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = (1..=2 * self.r).map(|k| [self.s(k), self.m(k), self.s(k + 1)]).collect();
        out.extend((1..=self.r).map(|j| [self.m(2 * j - 1), self.w(j), self.w2(j)]));
        out
    }
    fn connector(&self, j: usize) -> [usize; 3] {
        [self.m(2 * j), self.w(j), self.w2(j)]
    }
}

/// Variable gadget for `r >= 1` occurrences: a ring of `2r` sets over
/// `s_1..s_2r` with `m_k` hanging off ring set `k`, plus one attachment set
/// per occurrence. Connector `j` is `(m_2j, w_j, w'_j)`.
pub fn variable_gadget(r: usize) -> Gadget {
    assert!(r >= 1);
    let lay = VarLayout { r };
    let mut sets = SetSystem::new(0);
    for i in 0..lay.size() {
        sets.add_element(VertexTag::Gadget {
            kind: "var",
            owner: 0,
            slot: i,
        });
    }
    for (i, s) in lay.sets().iter().enumerate() {
        sets.add_set(s.to_vec(), VertexTag::Gadget {
            kind: "var-set",
            owner: 0,
            slot: i,
        })
        .expect("distinct elements");
    }
    let mut internal: Vec<usize> = (1..=2 * r).map(|k| lay.s(k)).collect();
    internal.extend((1..=r).map(|j| lay.m(2 * j - 1)));
    Gadget {
        sets,
        internal,
        groups: (1..=r).map(|j| lay.connector(j).to_vec()).collect(),
    }
}

/// Exact-cover encoding of a monotone exactly-one formula with 3-literal
/// clauses. Covers correspond one to one with exactly-one models.
///
/// Variable `x` with `r` occurrences gets the ring gadget; it is true when
/// the odd ring sets are left out, which forces every attachment set in and
/// covers all connectors internally. Each clause gadget covers the
/// connectors of its false literals and leaves the true one's alone.
pub fn mono_to_x3c(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_monotone()?;
    f.check_arity(3, 3, "exactly 3 literals")?;
    f.check_distinct_vars()?;
    f.check_all_vars_used()?;
    let n = f.num_vars() as usize;
    let rot = rotation(f);
    let clause_states = clause_state_table();

    let mut sys = SetSystem::new(0);
    let mut conditions = Vec::new();
    let mut fresh_blocks = Vec::new();
    // connector[(clause, position)] = global element ids
    let mut connector = vec![[[0usize; 3]; 3]; f.num_clauses()];

    for x in 1..=n {
        let occ = &rot.occurrences[x];
        let lay = VarLayout { r: occ.len() };
        let base = sys.ground_size();
        for slot in 0..lay.size() {
            sys.add_element(VertexTag::Gadget {
                kind: "var",
                owner: x,
                slot,
            });
        }
        fresh_blocks.push(FreshBlock {
            gadget: "x3c-variable",
            owner: x,
            start: base,
            len: lay.size(),
        });
        for (i, s) in lay.sets().iter().enumerate() {
            sys.add_set(s.iter().map(|e| base + e).collect(), VertexTag::Gadget {
                kind: "var-set",
                owner: x,
                slot: i,
            })?;
            let lit = if i < 2 * lay.r && i % 2 == 0 {
                Literal::neg(x as u32)
            } else {
                Literal::pos(x as u32)
            };
            conditions.push(Def::Expr(BoolExpr::lit(lit)));
        }
        for (j, &(clause, pos)) in occ.iter().enumerate() {
            connector[clause][pos] = lay.connector(j + 1).map(|e| base + e);
        }
    }

    for (j, c) in f.clauses().iter().enumerate() {
        let base = sys.ground_size();
        for slot in 0..3 {
            sys.add_element(VertexTag::Gadget {
                kind: "clause",
                owner: j,
                slot,
            });
        }
        fresh_blocks.push(FreshBlock {
            gadget: "x3c-clause",
            owner: j,
            start: base,
            len: 3,
        });
        // terminal group t is wired to the literal at positions[j][t]
        let order = &rot.positions[j];
        let local = |e: usize| -> usize {
            if e < 3 {
                base + e
            } else {
                connector[j][order[(e - 3) / 3]][(e - 3) % 3]
            }
        };
        for (i, s) in CLAUSE_SETS.iter().enumerate() {
            sys.add_set(s.iter().map(|&e| local(e)).collect(), VertexTag::Gadget {
                kind: "clause-set",
                owner: j,
                slot: i,
            })?;
            let when: Vec<BoolExpr> = (0..3)
                .filter(|&t| clause_states[t].contains(&i))
                .map(|t| BoolExpr::var(c.literals()[order[t]].var()))
                .collect();
            conditions.push(match when.len() {
                0 => Def::Const(false),
                1 => Def::Expr(when.into_iter().next().unwrap()),
                _ => Def::Expr(BoolExpr::or(when)),
            });
        }
    }

    let lifter = Lifter::Select {
        source_vars: n as u32,
        free_bits: 0,
        conditions,
    };
    let mut out = ReductionOutput::new(
        "mono_to_x3c",
        Problem::ExactlyOne,
        &crate::formula::emit_dimacs(f),
        Problem::ExactCover,
        Instance::Sets(sys),
        lifter,
    );
    out.fresh_blocks = fresh_blocks;
    Ok(out)
}

/// `table[t]` is the unique clause-gadget state leaving terminal group `t`
/// uncovered.
fn clause_state_table() -> [Vec<usize>; 3] {
    let g = clause_gadget();
    let mut table: [Vec<usize>; 3] = Default::default();
    for s in g.states() {
        let open = g.uncovered_groups(&s);
        debug_assert_eq!(open.len(), 1);
        table[open[0]] = s;
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_monotone_3cnf, Assignment};
    use crate::planarity::{formula_is_planar, is_planar};
    use crate::reduction::Solution;

    fn exact_covers(s: &SetSystem) -> Vec<Vec<usize>> {
        let m = s.num_sets();
        (0u64..1 << m)
            .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|sel| s.is_exact_cover(sel))
            .collect()
    }

    fn ex1_models(f: &CnfFormula) -> Vec<Assignment> {
        (0..1u64 << f.num_vars())
            .map(|w| Assignment::from_word(f.num_vars(), w))
            .filter(|v| f.evaluate_ex1(v).unwrap())
            .collect()
    }

    #[test]
    fn clause_gadget_has_one_state_per_open_terminal() {
        let g = clause_gadget();
        let states = g.states();
        assert_eq!(states.len(), 3);
        let mut open: Vec<usize> = states.iter().flat_map(|s| g.uncovered_groups(s)).collect();
        open.sort();
        assert_eq!(open, vec![0, 1, 2]);
        for e in 0..3 {
            assert_eq!(g.sets.sets().iter().filter(|s| s.contains(&e)).count(), 3);
        }
        assert!(g.sets.sets().iter().all(|s| s.iter().filter(|&&e| e < 3).count() == 1));
        assert!(is_planar(&g.sets.incidence_graph()));
    }

    #[test]
    fn variable_gadget_has_two_states() {
        for r in 1..=4 {
            let g = variable_gadget(r);
            let states = g.states();
            assert_eq!(states.len(), 2, "r={r}");
            let mut open: Vec<usize> = states.iter().map(|s| g.uncovered_groups(s).len()).collect();
            open.sort();
            assert_eq!(open, vec![0, r]);
        }
    }

    #[test]
    fn single_clause() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let out = mono_to_x3c(&f).unwrap();
        let s = out.target_sets();
        assert_eq!((s.ground_size(), s.num_sets()), (21, 18));
        s.check_x3c().unwrap();
        let covers = exact_covers(s);
        assert_eq!(covers.len(), 3);
        for v in ex1_models(&f) {
            let lifted = out.lifter.lift(&Solution::Assignment(v)).unwrap();
            let [Solution::Selection(sel)] = &lifted[..] else { panic!() };
            assert!(covers.contains(sel));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let neg = CnfFormula::from_dimacs_clauses(3, &[&[1, -2, 3]]).unwrap();
        assert!(mono_to_x3c(&neg).is_err());
        let unused = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3]]).unwrap();
        assert!(mono_to_x3c(&unused).is_err());
        let short = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        assert!(mono_to_x3c(&short).is_err());
    }

    #[test]
    fn planar_sources_give_planar_targets() {
        let mut tried = 0;
        for seed in 0..300 {
            let f = random_monotone_3cnf(9, 7, seed).unwrap().compact();
            if !formula_is_planar(&f) {
                continue;
            }
            tried += 1;
            let out = mono_to_x3c(&f).unwrap();
            assert!(is_planar(&out.target.planarity_graph()), "seed {seed}");
        }
        assert!(tried > 100);
    }
}
