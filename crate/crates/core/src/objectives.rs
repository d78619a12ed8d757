//! Latency, cost, capacity constraint and the V-weighted fitness.

use serde::{Deserialize, Serialize};

use crate::assignment::{assign_with, AssignmentError, AssignmentPlan, TaskAssignment};
use crate::model::{Deployment, Fitness, TaskSpec};
use crate::routing::RoutingTable;
use crate::scenario::{Scenario, ScenarioConfig};

/// How a task's `cycles` field turns into computation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompModel {
    /// `cycles / freq`.
    #[default]
    Literal,
    /// `cycles * d / freq`, with `cycles` read as a per-bit demand.
    PerBit,
}

impl std::str::FromStr for CompModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(CompModel::Literal),
            "per-bit" => Ok(CompModel::PerBit),
            other => Err(format!("unknown comp model {other:?} (expected literal or per-bit)")),
        }
    }
}

/// Computation latency in seconds.
pub fn t_comp(task: &TaskSpec, model: CompModel) -> f64 {
    match model {
        CompModel::Literal => task.cycles / task.freq_hz,
        CompModel::PerBit => task.cycles * task.d_bits / task.freq_hz,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("wireless bitrate of the attach link is zero")]
pub struct ZeroBitrate;

/// Uplink transmission latency in seconds: the wireless hop plus every wired
/// hop on the task's path. The downlink is not modeled.
pub fn t_tr(task: &TaskSpec, assigned: &TaskAssignment, wireless_bps: f64) -> Result<f64, ZeroBitrate> {
    if !(wireless_bps > 0.0) {
        return Err(ZeroBitrate);
    }
    let wired: f64 = assigned.wired_path.iter().map(|h| task.d_bits / h.bitrate_bps).sum();
    Ok(task.d_bits / wireless_bps + wired)
}

/// Total placed frequency against total demanded frequency.
pub fn capacity_feasible(scn: &Scenario, dep: &Deployment) -> bool {
    let cfg = &scn.config;
    let supply: f64 = dep
        .placed_edges()
        .map(|g| f64::from(g.sc) * cfg.edge_server_hz)
        .sum::<f64>()
        + dep.placed_fogs().map(|g| f64::from(g.sc) * cfg.fog_server_hz).sum::<f64>();
    scn.total_demand_hz() <= supply
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cost {
    pub edge: f64,
    pub fog: f64,
}

impl Cost {
    pub fn total(&self) -> f64 {
        self.edge + self.fog
    }
}

/// Fixed plus per-server (and per-access-point, for edge nodes) cost of the
/// placed sites. Independent of tasks and V.
pub fn deployment_cost(cfg: &ScenarioConfig, dep: &Deployment) -> Cost {
    // folding from +0.0 keeps an empty sum from printing as -0
    let edge = dep
        .placed_edges()
        .map(|g| cfg.c_fixed + f64::from(g.sc + g.ac) * cfg.c_dynamic)
        .fold(0.0, |a, b| a + b);
    let fog = dep
        .placed_fogs()
        .map(|g| cfg.c_fixed + f64::from(g.sc) * cfg.c_dynamic)
        .fold(0.0, |a, b| a + b);
    Cost { edge, fog }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskLatency {
    pub comp_s: f64,
    pub tr_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InfeasibleReason {
    #[error("total demand exceeds placed capacity")]
    Capacity,
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
    #[error("task {user_id}: {source}")]
    Wireless { user_id: usize, source: ZeroBitrate },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Mean total latency over all tasks; `None` when no plan exists.
    pub avg_latency_s: Option<f64>,
    pub total_cost: f64,
    pub edge_cost: f64,
    pub fog_cost: f64,
    pub fitness: Fitness,
    pub feasible: bool,
    pub per_task: Vec<TaskLatency>,
    pub infeasible_reason: Option<InfeasibleReason>,
}

/// Evaluates deployments on one scenario, reusing its routing table.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    scn: &'a Scenario,
    routes: RoutingTable,
}

impl<'a> Evaluator<'a> {
    pub fn new(scn: &'a Scenario) -> Self {
        Self { scn, routes: RoutingTable::new(&scn.graph) }
    }

    pub fn scenario(&self) -> &'a Scenario {
        self.scn
    }

    pub fn routes(&self) -> &RoutingTable {
        &self.routes
    }

    pub fn assign(&self, dep: &Deployment) -> Result<AssignmentPlan, AssignmentError> {
        assign_with(self.scn, &self.routes, dep)
    }

    pub fn evaluate(&self, dep: &Deployment, v: f64) -> EvalReport {
        let scn = self.scn;
        let cost = deployment_cost(&scn.config, dep);
        let infeasible = |reason: InfeasibleReason, latency: Option<(f64, Vec<TaskLatency>)>| {
            let (avg, per_task) = match latency {
                Some((a, p)) => (Some(a), p),
                None => (None, Vec::new()),
            };
            EvalReport {
                avg_latency_s: avg,
                total_cost: cost.total(),
                edge_cost: cost.edge,
                fog_cost: cost.fog,
                fitness: Fitness::Infeasible,
                feasible: false,
                per_task,
                infeasible_reason: Some(reason),
            }
        };

        let plan = match self.assign(dep) {
            Ok(plan) => plan,
            Err(e) => return infeasible(e.into(), None),
        };
        let channel = scn.config.channel();
        let mut per_task = Vec::with_capacity(scn.tasks.len());
        let mut wireless_failure = None;
        for (task, assigned) in scn.tasks.iter().zip(&plan.tasks) {
            let edge = &dep.edge_genes[assigned.attach_site];
            let rate = channel
                .uplink_bitrate(plan.n_attached[assigned.attach_site], edge.ac)
                .unwrap_or(0.0);
            let tr = match t_tr(task, assigned, rate) {
                Ok(tr) => tr,
                Err(source) => {
                    wireless_failure.get_or_insert(InfeasibleReason::Wireless { user_id: task.user_id, source });
                    f64::INFINITY
                }
            };
            let comp = t_comp(task, scn.config.comp_model);
            per_task.push(TaskLatency { comp_s: comp, tr_s: tr, total_s: comp + tr });
        }
        let avg = per_task.iter().map(|t| t.total_s).sum::<f64>() / per_task.len() as f64;
        if let Some(reason) = wireless_failure {
            return infeasible(reason, Some((avg, per_task)));
        }
        if !capacity_feasible(scn, dep) {
            return infeasible(InfeasibleReason::Capacity, Some((avg, per_task)));
        }
        EvalReport {
            avg_latency_s: Some(avg),
            total_cost: cost.total(),
            edge_cost: cost.edge,
            fog_cost: cost.fog,
            fitness: Fitness::Finite(-(v * avg + cost.total())),
            feasible: true,
            per_task,
            infeasible_reason: None,
        }
    }
}

/// One-off evaluation; builds a routing table per call. Prefer
/// [`Evaluator`] when evaluating many deployments on one scenario.
pub fn evaluate(scn: &Scenario, dep: &Deployment, v: f64) -> EvalReport {
    Evaluator::new(scn).evaluate(dep, v)
}
