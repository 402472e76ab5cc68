use thiserror::Error;

/// Errors raised by parsing, reductions, and the counting oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("variable {var} out of range (formula has {num_vars} variables)")]
    VariableOutOfRange { var: u32, num_vars: u32 },

    #[error("clause {clause} has arity {arity}, expected {expected}")]
    Arity {
        clause: usize,
        arity: usize,
        expected: &'static str,
    },

    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: u32 },

    #[error("clause {clause} contains negated literal of variable {var}")]
    NotMonotone { clause: usize, var: u32 },

    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },

    #[error("variable {var} does not occur in any clause")]
    UnusedVariable { var: u32 },

    #[error("assignment covers {given} variables, formula needs {needed}")]
    PartialAssignment { given: usize, needed: usize },

    #[error("assignment does not satisfy the formula (clause {clause} falsified)")]
    NotSatisfying { clause: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),

    #[error("general position violated: {0}")]
    GeneralPosition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("chain stage `{stage}` cannot accept {got}")]
    StageMismatch { stage: String, got: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
