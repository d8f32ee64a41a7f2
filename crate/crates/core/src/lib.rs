//! Three-objective closed-loop supply-chain network design.
//!
//! Minimizes total cost and CO₂ emissions while maximizing expected reliable
//! dispatch, under discrete demand scenarios. Two solvers are provided: a
//! real-coded NSGA-II ([`moga`]) and an exact weighted-sum method
//! ([`scalarize`]); [`pareto`] holds the dominance algebra and front
//! indicators used to compare them.

pub mod cli;
pub mod error;
pub mod flow;
pub mod instances;
pub mod model;
pub mod moga;
pub mod pareto;
pub mod scalarize;
pub mod uncertainty;

pub use error::{Error, Result};
pub use model::{
    check_feasibility, evaluate, validate_instance, FeasibilityReport, NetworkInstance, ObjectiveVector, Solution,
};
pub use moga::{decode, run_nsga2, GaConfig, GaRun, Genotype};
pub use pareto::{nondominated_filter, FrontPoint, ParetoFront, Provenance};
pub use scalarize::{compute_bounds, solve_weighted_exact, sweep_weights, NormalizationBounds, WeightVector};
pub use uncertainty::{DemandScenario, ScenarioSet};
