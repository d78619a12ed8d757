//! Straight-line re-implementation of the latency/cost/fitness model used
//! as a test oracle. Shares no code with the crate's evaluation path: it
//! uses Floyd-Warshall for wired distances and recomputes attachment,
//! overflow routing, interference, bitrate, cost and fitness from the raw
//! scenario fields.

#![allow(dead_code)]

use craft_core::{CompModel, Deployment, Scenario};

pub struct Reference {
    pub feasible: bool,
    pub avg_latency: Option<f64>,
    pub cost: f64,
    pub fitness: Option<f64>,
}

/// All-pairs minimum of `sum(1 / bitrate)` over wired paths.
pub fn floyd_warshall(scn: &Scenario) -> Vec<Vec<f64>> {
    let n = scn.graph.sites().len();
    let mut w = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in w.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for l in scn.graph.links() {
        let c = 1.0 / l.bitrate_bps;
        if c < w[l.a][l.b] {
            w[l.a][l.b] = c;
            w[l.b][l.a] = c;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = w[i][k] + w[k][j];
                if via < w[i][j] {
                    w[i][j] = via;
                }
            }
        }
    }
    w
}

pub fn reference_evaluate(scn: &Scenario, dep: &Deployment, v: f64) -> Reference {
    let cfg = &scn.config;
    let n_sites = scn.graph.sites().len();
    let n_edge = dep.edge_genes.len();

    let mut cost = 0.0;
    let mut supply = 0.0;
    let mut cap = vec![0.0; n_sites];
    for g in &dep.edge_genes {
        let x = if g.placed { 1.0 } else { 0.0 };
        cost += x * (cfg.c_fixed + (g.sc as f64 + g.ac as f64) * cfg.c_dynamic);
        supply += x * g.sc as f64 * cfg.edge_server_hz;
        cap[g.site_id] = x * g.sc as f64 * cfg.edge_server_hz;
    }
    for g in &dep.fog_genes {
        let y = if g.placed { 1.0 } else { 0.0 };
        cost += y * (cfg.c_fixed + g.sc as f64 * cfg.c_dynamic);
        supply += y * g.sc as f64 * cfg.fog_server_hz;
        cap[g.site_id] = y * g.sc as f64 * cfg.fog_server_hz;
    }
    let demand: f64 = scn.tasks.iter().map(|t| t.freq_hz).sum();
    let infeasible = Reference { feasible: false, avg_latency: None, cost, fitness: None };
    if demand > supply {
        return infeasible;
    }

    // Attachment.
    let mut attach = vec![usize::MAX; scn.tasks.len()];
    let mut n_att = vec![0usize; n_edge];
    for (i, t) in scn.tasks.iter().enumerate() {
        let mut best_d = f64::INFINITY;
        for g in &dep.edge_genes {
            if !g.placed {
                continue;
            }
            let p = scn.graph.sites()[g.site_id].pos;
            let d = ((t.pos.x - p.x).powi(2) + (t.pos.y - p.y).powi(2)).sqrt();
            if d < best_d {
                best_d = d;
                attach[i] = g.site_id;
            }
        }
        if attach[i] == usize::MAX {
            return infeasible;
        }
        n_att[attach[i]] += 1;
    }

    let dist = floyd_warshall(scn);
    let mut load = vec![0.0; n_sites];
    let mut total_latency = 0.0;
    for (i, t) in scn.tasks.iter().enumerate() {
        let a = attach[i];
        let exec = if load[a] + t.freq_hz <= cap[a] {
            a
        } else {
            let mut choice = None;
            let mut best = f64::INFINITY;
            for s in 0..n_sites {
                if s == a || cap[s] == 0.0 || load[s] + t.freq_hz > cap[s] {
                    continue;
                }
                let lat = t.d_bits * dist[a][s];
                if lat < best {
                    best = lat;
                    choice = Some(s);
                }
            }
            match choice {
                Some(s) => s,
                None => return infeasible,
            }
        };
        load[exec] += t.freq_hz;

        let ac = dep.edge_genes[a].ac as f64;
        let ratio = n_att[a] as f64 / ac;
        let interference = if ratio > 1.0 { (ratio - 1.0) * cfg.tx_power_w * cfg.power_gain } else { 0.0 };
        let sinr = cfg.tx_power_w * cfg.power_gain / (cfg.noise_w + interference);
        let rate = cfg.bandwidth_hz * (1.0 + sinr).ln() / std::f64::consts::LN_2;
        let t_wireless = t.d_bits / rate;
        let t_wired = t.d_bits * dist[a][exec];
        let t_comp = match cfg.comp_model {
            CompModel::Literal => t.cycles / t.freq_hz,
            CompModel::PerBit => t.cycles * t.d_bits / t.freq_hz,
        };
        total_latency += t_comp + t_wireless + t_wired;
    }
    let avg = total_latency / scn.tasks.len() as f64;
    Reference { feasible: true, avg_latency: Some(avg), cost, fitness: Some(-(v * avg + cost)) }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
