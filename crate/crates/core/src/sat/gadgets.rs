use crate::formula::{Clause, CnfFormula, Literal};

/// The 14 clauses of G over local variables 1..=9, as signed integers.
pub const G_CLAUSES: [[i8; 3]; 14] = [
    [-1, -2, -3],
    [-1, 2, 7],
    [-2, 3, 8],
    [-3, 1, 9],
    [-4, 1, 7],
    [-5, 2, 8],
    [-6, 3, 9],
    [-7, 5, 8],
    [-8, 6, 9],
    [-9, 4, 7],
    [-1, -4, -9],
    [-2, -5, -7],
    [-3, -6, -8],
    [-7, -8, -9],
];

/// An instance of the 9-variable formula whose only model is all-false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetG {
    /// `vars[i]` plays x_{i+1}.
    pub vars: [u32; 9],
    pub clauses: Vec<Clause>,
}

impl GadgetG {
    /// The padding variable x9, the one external clauses attach to.
    pub fn pad(&self) -> u32 {
        self.vars[8]
    }
}

/// G over `base ..= base + 8`.
pub fn gadget_g(base: u32) -> GadgetG {
    let vars: [u32; 9] = std::array::from_fn(|i| base + i as u32);
    let clauses = G_CLAUSES
        .iter()
        .map(|c| {
            Clause::new(
                c.iter()
                    .map(|&x| Literal::new(vars[x.unsigned_abs() as usize - 1], x > 0))
                    .collect(),
            )
        })
        .collect();
    GadgetG { vars, clauses }
}

/// G as a standalone formula over variables 1..=9.
pub fn gadget_g_formula() -> CnfFormula {
    CnfFormula::from_clauses(9, gadget_g(1).clauses).unwrap()
}

/// `(c+d+e)(c+e+f)(d+e+f)`: under exactly-one semantics its only model is
/// `e = 1`, `c = d = f = 0`.
pub fn exactly_one_triple(c: u32, d: u32, e: u32, f: u32) -> [Clause; 3] {
    let p = Literal::pos;
    [
        Clause::new(vec![p(c), p(d), p(e)]),
        Clause::new(vec![p(c), p(e), p(f)]),
        Clause::new(vec![p(d), p(e), p(f)]),
    ]
}

/// The triple over c, d, e, f = 1, 2, 3, 4.
pub fn exactly_one_triple_formula() -> CnfFormula {
    let mut f = CnfFormula::from_clauses(4, exactly_one_triple(1, 2, 3, 4).to_vec()).unwrap();
    for (v, name) in [(1, "c"), (2, "d"), (3, "e"), (4, "f")] {
        f.set_var_name(v, name);
    }
    f
}
