//! Executable parsimonious reductions between planar satisfiability variants,
//! exact covers and graph problems, with brute-force counting oracles to check
//! every declared count relation.

pub mod error;
pub mod formula;
pub mod graph;
pub mod planarity;
pub mod crossover;
pub mod oracles;
pub mod reduction;
pub mod sat;
pub mod setgraph;
pub mod harness;

pub use error::{Error, Result};
