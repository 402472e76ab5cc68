//! Reductions among satisfiability variants, plus the instance builders that
//! come with a known solution.

mod builders;
mod chain;
mod gadgets;
mod tseitin;

pub use builders::{disjunction_trick, make_ambiguous_instance, make_one_valid, make_unique_one_valid};
pub use chain::{normalize_reduction, pad_units, planarize_reduction, red1, red1_groups, to_1ex3monosat, to_1ex3sat, to_ex3sat};
pub use gadgets::{
    exactly_one_triple, exactly_one_triple_formula, gadget_g, gadget_g_formula, GadgetG, G_CLAUSES,
};
pub use tseitin::tseitin_cnf;
