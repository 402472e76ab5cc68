use std::fmt::Write;
use std::time::Duration;

use num_bigint::BigUint;

/// Search limits. Exceeding one is an error, never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Decision nodes a pruned search may visit.
    pub max_nodes: u64,
    /// Largest variable count for plain 2^n enumeration.
    pub max_naive_vars: u32,
    /// Largest set count for subset enumeration over set families.
    pub max_naive_sets: usize,
    /// How many solutions to record in the report.
    pub enumerate_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
            max_naive_vars: 28,
            max_naive_sets: 30,
            enumerate_limit: 0,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }

    pub fn enumerating(limit: usize) -> Self {
        Budget {
            enumerate_limit: limit,
            ..Budget::default()
        }
    }
}

/// Size constraint on counted subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SizeMode {
    Exact(usize),
    AtMost(usize),
}

impl SizeMode {
    pub fn bound(self) -> usize {
        match self {
            SizeMode::Exact(k) | SizeMode::AtMost(k) => k,
        }
    }

    pub fn admits(self, size: usize) -> bool {
        match self {
            SizeMode::Exact(k) => size == k,
            SizeMode::AtMost(k) => size <= k,
        }
    }

    pub fn label(self) -> String {
        match self {
            SizeMode::Exact(k) => format!("exact-{k}"),
            SizeMode::AtMost(k) => format!("at-most-{k}"),
        }
    }
}

/// Result of a counting run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub count: BigUint,
    /// Minimum size or maximum objective, when the question has one.
    pub optimum: Option<i64>,
    /// Up to `Budget::enumerate_limit` solutions, each given as its support
    /// (true variables, chosen vertices or chosen sets, 1-based for
    /// variables and 0-based otherwise).
    pub enumerated: Vec<Vec<usize>>,
    /// Size of the unpruned space, e.g. 2^n.
    pub search_space: BigUint,
    /// Search nodes actually visited.
    pub nodes: u64,
    pub mode: String,
    pub elapsed: Duration,
}

impl CountReport {
    pub fn new(mode: impl Into<String>, count: BigUint, search_space: BigUint) -> Self {
        CountReport {
            count,
            optimum: None,
            enumerated: Vec::new(),
            search_space,
            nodes: 0,
            mode: mode.into(),
            elapsed: Duration::ZERO,
        }
    }

    /// Deterministic `key=value` lines. Elapsed time is left out so reports
    /// from repeated runs compare equal byte for byte.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mode={}", self.mode).unwrap();
        writeln!(out, "count={}", self.count).unwrap();
        match self.optimum {
            Some(o) => writeln!(out, "optimum={o}").unwrap(),
            None => writeln!(out, "optimum=none").unwrap(),
        }
        writeln!(out, "space={}", self.search_space).unwrap();
        writeln!(out, "nodes={}", self.nodes).unwrap();
        for s in &self.enumerated {
            let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            writeln!(out, "solution={}", items.join(",")).unwrap();
        }
        out
    }
}
