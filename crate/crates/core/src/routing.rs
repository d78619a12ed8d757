//! Shortest wired paths under the per-bit transmission weight `1 / bitrate`.
//!
//! A path weight multiplied by a task's data size gives the wired part of its
//! transmission latency. Ties between equal-weight paths go to the
//! lexicographically smaller site sequence.

use crate::model::{NetworkGraph, SiteId};

/// One wired hop of a routed task.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hop {
    pub from: SiteId,
    pub to: SiteId,
    pub bitrate_bps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    /// Site sequence from source to destination, both included.
    pub sites: Vec<SiteId>,
    pub hops: Vec<Hop>,
    /// Sum of `1 / bitrate` over the hops, in s/bit.
    pub weight: f64,
}

impl Route {
    fn trivial(src: SiteId) -> Self {
        Self { sites: vec![src], hops: Vec::new(), weight: 0.0 }
    }
}

/// Single-source shortest paths. Entry `v` is `None` only if `v` is
/// unreachable from `src`.
pub fn shortest_wired_paths(graph: &NetworkGraph, src: SiteId) -> Vec<Option<Route>> {
    let n = graph.len();
    let mut best: Vec<Option<Route>> = vec![None; n];
    let mut done = vec![false; n];
    best[src] = Some(Route::trivial(src));

    // Dense Dijkstra; graphs here have tens of nodes.
    loop {
        let mut next: Option<SiteId> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            let Some(rv) = &best[v] else { continue };
            let better = match next {
                None => true,
                Some(u) => {
                    let ru = best[u].as_ref().unwrap();
                    rv.weight < ru.weight || (rv.weight == ru.weight && rv.sites < ru.sites)
                }
            };
            if better {
                next = Some(v);
            }
        }
        let Some(u) = next else { break };
        done[u] = true;
        let ru = best[u].clone().unwrap();
        for &(v, link_idx) in graph.neighbors(u) {
            if done[v] {
                continue;
            }
            let bitrate = graph.link(link_idx).bitrate_bps;
            let weight = ru.weight + 1.0 / bitrate;
            let replace = match &best[v] {
                None => true,
                Some(rv) => {
                    weight < rv.weight
                        || (weight == rv.weight && path_lt_extended(&ru.sites, v, &rv.sites))
                }
            };
            if replace {
                let mut sites = ru.sites.clone();
                sites.push(v);
                let mut hops = ru.hops.clone();
                hops.push(Hop { from: u, to: v, bitrate_bps: bitrate });
                best[v] = Some(Route { sites, hops, weight });
            }
        }
    }
    best
}

/// `prefix ++ [last] < other`, without allocating.
fn path_lt_extended(prefix: &[SiteId], last: SiteId, other: &[SiteId]) -> bool {
    prefix.iter().copied().chain(std::iter::once(last)).lt(other.iter().copied())
}

/// All-pairs shortest paths, computed once per graph and shared by every
/// evaluation on that graph.
#[derive(Debug, Clone)]
pub struct RoutingTable {
    routes: Vec<Vec<Option<Route>>>,
}

impl RoutingTable {
    pub fn new(graph: &NetworkGraph) -> Self {
        Self {
            routes: (0..graph.len()).map(|s| shortest_wired_paths(graph, s)).collect(),
        }
    }

    pub fn route(&self, from: SiteId, to: SiteId) -> Option<&Route> {
        self.routes[from][to].as_ref()
    }

    pub fn weight(&self, from: SiteId, to: SiteId) -> Option<f64> {
        self.route(from, to).map(|r| r.weight)
    }
}
