//! Task-to-node assignment for a deployment.
//!
//! Users attach wirelessly to the nearest placed edge node. Tasks are then
//! placed in ascending user id: locally if the attach node still has room,
//! otherwise on the placed node (edge or fog) with room whose wired path
//! costs the least transmission time. Tasks are never split.

use crate::model::{Deployment, SiteId, SiteKind};
use crate::routing::{Hop, RoutingTable};
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    #[error("no edge coverage: no edge node is placed")]
    NoEdgeCoverage,
    #[error("capacity routing failed: task {user_id} fits on no placed node")]
    CapacityRoutingFailed { user_id: usize },
}

/// Wireless attachment of every task.
#[derive(Debug, Clone, PartialEq)]
pub struct Attachment {
    /// Attach edge site per task, indexed by user id.
    pub attach_site: Vec<SiteId>,
    /// Attached user count per edge candidate.
    pub n_attached: Vec<usize>,
}

/// Attaches each task to the closest placed edge node; ties go to the lower
/// site id.
pub fn attach_users(scn: &Scenario, dep: &Deployment) -> Result<Attachment, AssignmentError> {
    let placed: Vec<(SiteId, crate::model::Point)> = dep
        .placed_edges()
        .map(|g| (g.site_id, scn.graph.site(g.site_id).pos))
        .collect();
    if placed.is_empty() {
        return Err(AssignmentError::NoEdgeCoverage);
    }
    let mut n_attached = vec![0; scn.graph.n_edge()];
    let attach_site = scn
        .tasks
        .iter()
        .map(|t| {
            let mut best = placed[0].0;
            let mut best_d = t.pos.distance(&placed[0].1);
            for &(id, pos) in &placed[1..] {
                let d = t.pos.distance(&pos);
                if d < best_d {
                    best = id;
                    best_d = d;
                }
            }
            n_attached[best] += 1;
            best
        })
        .collect();
    Ok(Attachment { attach_site, n_attached })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskAssignment {
    pub user_id: usize,
    pub attach_site: SiteId,
    pub exec_site: SiteId,
    /// Wired hops from attach to exec site; empty for local execution.
    pub wired_path: Vec<Hop>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentPlan {
    pub tasks: Vec<TaskAssignment>,
    /// Hz consumed per site.
    pub load_hz: Vec<f64>,
    /// Hz available per site (zero when not placed).
    pub capacity_hz: Vec<f64>,
    /// Attached users per edge candidate.
    pub n_attached: Vec<usize>,
}

/// Capacity in Hz of every site under `dep`.
pub fn site_capacities(scn: &Scenario, dep: &Deployment) -> Vec<f64> {
    scn.graph
        .sites()
        .iter()
        .map(|s| {
            let per_server = match s.kind {
                SiteKind::Edge => scn.config.edge_server_hz,
                SiteKind::Fog => scn.config.fog_server_hz,
            };
            f64::from(dep.servers_at(s.site_id)) * per_server
        })
        .collect()
}

/// Builds the assignment plan, computing the routing table on the fly.
pub fn assign(scn: &Scenario, dep: &Deployment) -> Result<AssignmentPlan, AssignmentError> {
    assign_with(scn, &RoutingTable::new(&scn.graph), dep)
}

pub fn assign_with(
    scn: &Scenario,
    routes: &RoutingTable,
    dep: &Deployment,
) -> Result<AssignmentPlan, AssignmentError> {
    let attachment = attach_users(scn, dep)?;
    let capacity_hz = site_capacities(scn, dep);
    let mut load_hz = vec![0.0; capacity_hz.len()];
    let placed: Vec<SiteId> = (0..capacity_hz.len()).filter(|&s| capacity_hz[s] > 0.0).collect();

    let mut tasks = Vec::with_capacity(scn.tasks.len());
    for task in &scn.tasks {
        let attach = attachment.attach_site[task.user_id];
        let fits = |site: SiteId, load: &[f64]| load[site] + task.freq_hz <= capacity_hz[site];

        let exec = if fits(attach, &load_hz) {
            attach
        } else {
            let mut best: Option<(f64, SiteId)> = None;
            for &site in &placed {
                if site == attach || !fits(site, &load_hz) {
                    continue;
                }
                let Some(w) = routes.weight(attach, site) else { continue };
                let latency = task.d_bits * w;
                if best.is_none_or(|(b, _)| latency < b) {
                    best = Some((latency, site));
                }
            }
            match best {
                Some((_, site)) => site,
                None => return Err(AssignmentError::CapacityRoutingFailed { user_id: task.user_id }),
            }
        };
        load_hz[exec] += task.freq_hz;
        let wired_path = if exec == attach {
            Vec::new()
        } else {
            routes.route(attach, exec).map(|r| r.hops.clone()).unwrap_or_default()
        };
        tasks.push(TaskAssignment { user_id: task.user_id, attach_site: attach, exec_site: exec, wired_path });
    }
    Ok(AssignmentPlan { tasks, load_hz, capacity_hz, n_attached: attachment.n_attached })
}

impl AssignmentPlan {
    /// Checks the plan invariants against the deployment it was built for.
    /// Returns a description of the first broken invariant.
    pub fn audit(&self, scn: &Scenario, dep: &Deployment) -> Result<(), String> {
        for (site, (&load, &cap)) in self.load_hz.iter().zip(&self.capacity_hz).enumerate() {
            if load > cap {
                return Err(format!("site {site}: load {load} Hz exceeds capacity {cap} Hz"));
            }
        }
        let mut recount = vec![0.0; self.load_hz.len()];
        for t in &self.tasks {
            if dep.servers_at(t.exec_site) == 0 {
                return Err(format!("task {} runs on unplaced site {}", t.user_id, t.exec_site));
            }
            recount[t.exec_site] += scn.tasks[t.user_id].freq_hz;
            let mut at = t.attach_site;
            for hop in &t.wired_path {
                if hop.from != at {
                    return Err(format!("task {}: broken wired path", t.user_id));
                }
                let linked = scn
                    .graph
                    .neighbors(hop.from)
                    .iter()
                    .any(|&(v, i)| v == hop.to && scn.graph.link(i).bitrate_bps == hop.bitrate_bps);
                if !linked {
                    return Err(format!("task {}: hop {}->{} is not a link", t.user_id, hop.from, hop.to));
                }
                at = hop.to;
            }
            if at != t.exec_site {
                return Err(format!("task {}: path ends at {at}, not {}", t.user_id, t.exec_site));
            }
        }
        for (site, (&a, &b)) in recount.iter().zip(&self.load_hz).enumerate() {
            if (a - b).abs() > 1e-6 * b.max(1.0) {
                return Err(format!("site {site}: recorded load {b} differs from task sum {a}"));
            }
        }
        Ok(())
    }
}
