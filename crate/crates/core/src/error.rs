use thiserror::Error;

use crate::model::{FeasibilityReport, InstanceIssue};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", format_issues(.0))]
    InvalidInstance(Vec<InstanceIssue>),

    #[error("infeasible solution: {} violation(s), first: {}", .0.violations.len(), first_violation(.0))]
    Infeasible(FeasibilityReport),

    #[error("layer `{layer}` is structurally infeasible: total capacity {capacity} < required {required}")]
    StructurallyInfeasible {
        layer: &'static str,
        capacity: f64,
        required: f64,
    },

    #[error("genotype length {got} does not match instance layout ({expected})")]
    GenotypeLength { expected: usize, got: usize },

    #[error("scenario spread {0} outside [0, 1)")]
    InvalidSpread(f64),

    #[error("scenario count {0} not supported (expected 1 or 3)")]
    InvalidScenarioCount(usize),

    #[error("invalid GA configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("degenerate normalization bounds on objective `{0}` (utopia == nadir)")]
    DegenerateBounds(&'static str),

    #[error("exact enumeration intractable: {configurations} facility configurations exceed the limit of {limit}")]
    Intractable { configurations: u128, limit: u128 },

    #[error("no facility configuration admits a feasible flow")]
    NoFeasibleConfiguration,

    #[error("min-cost flow infeasible: {0}")]
    FlowInfeasible(String),

    #[error("point {index} does not strictly dominate the reference point")]
    PointOutsideReference { index: usize },

    #[error("coverage is undefined for an empty reference front")]
    EmptyFront,
}

fn format_issues(issues: &[InstanceIssue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn first_violation(report: &FeasibilityReport) -> String {
    report
        .violations
        .first()
        .map(|v| v.to_string())
        .unwrap_or_else(|| "none".to_string())
}
