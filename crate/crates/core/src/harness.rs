//! Experiment drivers shared by the CLI and the tests: single runs, sweeps
//! over user count or V, and their CSV renderings.
//!
//! CSV columns are fixed:
//!
//! * run: `gen,best_fitness,mean_fitness,worst_fitness,n_infeasible,df`
//! * sweep: `axis,axis_value,method,seed,avg_latency_s,total_cost,fitness,feasible,wall_ms`
//!
//! Infeasible fitness is written as `-inf`; quantities that do not exist
//! (latency of an unroutable deployment) are left empty.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use crate::baselines::random_placement;
use crate::genetic::{evolve_with, GaParams, GenerationStats, INIT_REDRAWS};
use crate::model::{Deployment, Fitness};
use crate::objectives::{EvalReport, Evaluator};
use crate::par;
use crate::scenario::{generate, ScenarioConfig, ScenarioError};

pub const RUN_CSV_HEADER: &str = "gen,best_fitness,mean_fitness,worst_fitness,n_infeasible,df";
pub const SWEEP_CSV_HEADER: &str =
    "axis,axis_value,method,seed,avg_latency_s,total_cost,fitness,feasible,wall_ms";

/// User counts swept by default.
pub const DEFAULT_USER_VALUES: [f64; 6] = [70.0, 90.0, 110.0, 130.0, 150.0, 170.0];
/// V values swept by default.
pub const DEFAULT_V_VALUES: [f64; 7] = [1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn fitness_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-inf".to_owned(), |x| x.to_string())
}

pub fn run_csv(history: &[GenerationStats]) -> String {
    let mut out = String::with_capacity(64 * (history.len() + 1));
    out.push_str(RUN_CSV_HEADER);
    out.push('\n');
    for h in history {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            h.gen,
            fitness_cell(h.best),
            fitness_cell(h.mean),
            fitness_cell(h.worst),
            h.n_infeasible,
            h.df
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Users,
    V,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Users => "users",
            Axis::V => "V",
        })
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "users" => Ok(Axis::Users),
            "V" | "v" => Ok(Axis::V),
            other => Err(format!("unknown sweep axis {other:?} (expected users or V)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Craft,
    Random,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Craft => "craft",
            Method::Random => "random",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "craft" => Ok(Method::Craft),
            "random" => Ok(Method::Random),
            other => Err(format!("unknown method {other:?} (expected craft or random)")),
        }
    }
}

/// Outcome of one method on one scenario.
#[derive(Debug, Clone)]
pub struct MethodOutcome {
    pub deployment: Option<Deployment>,
    pub report: Option<EvalReport>,
}

/// Runs `method` with `ga` (whose `v` and `seed` are used for both methods).
pub fn run_method(evaluator: &Evaluator<'_>, method: Method, ga: &GaParams, random_max_tries: usize) -> MethodOutcome {
    match method {
        Method::Craft => match evolve_with(evaluator, ga) {
            Ok(evo) => MethodOutcome { deployment: Some(evo.best), report: Some(evo.report) },
            Err(_) => MethodOutcome { deployment: None, report: None },
        },
        Method::Random => {
            let dep = random_placement(evaluator.scenario(), ga.seed, random_max_tries);
            let report = evaluator.evaluate(&dep, ga.v);
            MethodOutcome { deployment: Some(dep), report: Some(report) }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub methods: Vec<Method>,
    pub repeats: usize,
    /// Repeat `r` uses seed `base_seed + r` for the scenario and the method.
    pub base_seed: u64,
    pub base_config: ScenarioConfig,
    /// GA template; `v` is the fixed V for a users sweep, `seed` is ignored.
    pub ga: GaParams,
    pub random_max_tries: usize,
    /// When false, `wall_ms` is written as 0 so output is byte-reproducible.
    pub record_timing: bool,
}

impl SweepSpec {
    pub fn new(axis: Axis) -> Self {
        let values = match axis {
            Axis::Users => DEFAULT_USER_VALUES.to_vec(),
            Axis::V => DEFAULT_V_VALUES.to_vec(),
        };
        Self {
            axis,
            values,
            methods: vec![Method::Craft, Method::Random],
            repeats: 1,
            base_seed: 0,
            base_config: ScenarioConfig::default(),
            ga: GaParams::default(),
            random_max_tries: 1 + INIT_REDRAWS,
            record_timing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: Axis,
    pub axis_value: f64,
    pub method: Method,
    pub seed: u64,
    pub avg_latency_s: Option<f64>,
    pub total_cost: Option<f64>,
    pub fitness: Fitness,
    pub feasible: bool,
    pub wall_ms: u128,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("user count {0} is not a positive integer")]
    BadUserCount(f64),
    #[error("V value {0} must be finite and non-negative")]
    BadV(f64),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Params(#[from] crate::genetic::OptimizeError),
}

struct Cell {
    axis_value: f64,
    method: Method,
    seed: u64,
}

/// Runs every (value, method, repeat) cell. Rows come back in that nested
/// order whatever the worker count.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    for &x in &spec.values {
        match spec.axis {
            Axis::Users if !(x >= 1.0 && x.fract() == 0.0 && x.is_finite()) => {
                return Err(SweepError::BadUserCount(x))
            }
            Axis::V if !(x >= 0.0 && x.is_finite()) => return Err(SweepError::BadV(x)),
            _ => {}
        }
    }
    spec.ga.validate()?;
    let mut cells = Vec::new();
    for &axis_value in &spec.values {
        for &method in &spec.methods {
            for r in 0..spec.repeats {
                cells.push(Cell { axis_value, method, seed: spec.base_seed.wrapping_add(r as u64) });
            }
        }
    }
    // Scenario generation is cheap; validate every config up front so a bad
    // cell fails the whole sweep before any optimization runs.
    let configs: Vec<ScenarioConfig> = cells
        .iter()
        .map(|c| {
            let mut cfg = spec.base_config.clone();
            cfg.seed = c.seed;
            if spec.axis == Axis::Users {
                cfg.n_users = c.axis_value as usize;
            }
            cfg
        })
        .collect();
    for cfg in &configs {
        cfg.clone().resolve().validate()?;
    }

    let jobs: Vec<(&Cell, &ScenarioConfig)> = cells.iter().zip(&configs).collect();
    let results = par::map(&jobs, |&(cell, cfg)| -> Result<SweepRow, SweepError> {
        let start = Instant::now();
        let scn = generate(cfg)?;
        let evaluator = Evaluator::new(&scn);
        let mut ga = spec.ga.clone();
        ga.seed = cell.seed;
        if spec.axis == Axis::V {
            ga.v = cell.axis_value;
        }
        let outcome = run_method(&evaluator, cell.method, &ga, spec.random_max_tries);
        let wall_ms = if spec.record_timing { start.elapsed().as_millis() } else { 0 };
        let report = outcome.report.as_ref();
        Ok(SweepRow {
            axis: spec.axis,
            axis_value: cell.axis_value,
            method: cell.method,
            seed: cell.seed,
            avg_latency_s: report.and_then(|r| r.avg_latency_s),
            total_cost: report.map(|r| r.total_cost),
            fitness: report.map_or(Fitness::Infeasible, |r| r.fitness),
            feasible: report.is_some_and(|r| r.feasible),
            wall_ms,
        })
    });
    results.into_iter().collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.axis,
            r.axis_value,
            r.method,
            r.seed,
            opt(r.avg_latency_s),
            opt(r.total_cost),
            fitness_cell(r.fitness.value()),
            r.feasible,
            r.wall_ms
        )
        .unwrap();
    }
    out
}
