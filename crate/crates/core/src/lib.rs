//! Edge and fog node placement on a city base-station graph.
//!
//! The crate models users offloading tasks over a wireless hop to edge
//! nodes, with overloaded edge nodes forwarding work over wired links to
//! other edge or fog nodes. A deployment is scored by
//! `-(V * mean latency + total cost)` and optimized by a genetic algorithm
//! whose selection pressure and mutation rate adapt to population
//! diversity. A random-placement baseline and an exhaustive lattice search
//! are included for comparison and verification.
//!
//! Evaluation of a population, lattice enumeration and sweep cells run on
//! rayon when the default `parallel` feature is enabled.

pub mod assignment;
pub mod baselines;
pub mod genetic;
pub mod harness;
pub mod model;
pub mod objectives;
pub mod par;
pub mod routing;
pub mod scenario;
pub mod wireless;

pub use assignment::{assign, attach_users, AssignmentError, AssignmentPlan};
pub use baselines::{exhaustive_oracle, random_placement, Lattice, OracleError};
pub use genetic::{evolve, Evolution, GaParams, GenerationStats, OptimizeError};
pub use model::{
    repair_deployment, validate_deployment, Deployment, EdgeGene, Fitness, FogGene, GeneBounds,
    IntSpan, NetworkGraph, SiteId, SiteKind, TaskSpec,
};
pub use objectives::{capacity_feasible, evaluate, CompModel, EvalReport, Evaluator};
pub use scenario::{generate, Scenario, ScenarioConfig, ScenarioError};
