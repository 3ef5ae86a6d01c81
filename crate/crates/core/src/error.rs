use thiserror::Error;

use crate::convex::TableViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("poset: {0}")]
    Poset(String),

    #[error("vertex {vertex} is outside the vertex range 0..{len}")]
    VertexOutOfRange { vertex: usize, len: usize },

    #[error("not an ideal: {member} is a member but {missing} (below it) is not")]
    NotAnIdeal { member: usize, missing: usize },

    #[error("reduction map: element {element} has e+ = {plus} not below e- = {minus}")]
    ReductionOrder {
        element: usize,
        plus: usize,
        minus: usize,
    },

    #[error("k must be at least 1 (got {0})")]
    InvalidK(usize),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("convex table rejected: {}", format_violations(.0))]
    ConvexTable(Vec<TableViolation>),

    #[error("convex function evaluated at {x}, outside [0, {bound}]")]
    ConvexOutOfRange { x: i64, bound: usize },

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("infeasible demands: {unmet} units of supply cannot be routed")]
    Infeasible { unmet: i64 },

    #[error("negative-length cycle in residual graph")]
    NegativeCycle,

    #[error("flow is not maximum: sink reachable in residual graph")]
    NotMaximum,

    #[error("the cut backend only supports binom and cov penalties; use the mcf backend")]
    UnsupportedPenalty,

    #[error("instance too large for brute force: {0}")]
    TooLarge(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn format_violations(v: &[TableViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
