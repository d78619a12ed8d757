//! Domain types shared across the simulator: tasks, the candidate-site graph,
//! deployment chromosomes and the fitness value.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifier of a placement candidate (edge or fog base station).
pub type SiteId = usize;

/// A point on the flat simulation plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One user's offloaded workload.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskSpec {
    pub user_id: usize,
    /// Data size in bits.
    pub d_bits: f64,
    /// Required computation frequency in Hz.
    pub freq_hz: f64,
    /// Cycle demand; see [`crate::objectives::CompModel`] for its unit.
    pub cycles: f64,
    pub pos: Point,
}

impl TaskSpec {
    pub fn is_valid(&self) -> bool {
        self.d_bits > 0.0 && self.freq_hz > 0.0 && self.cycles > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteKind {
    Edge,
    Fog,
}

impl fmt::Display for SiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteKind::Edge => f.write_str("edge"),
            SiteKind::Fog => f.write_str("fog"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SiteCandidate {
    pub site_id: SiteId,
    pub kind: SiteKind,
    pub pos: Point,
}

/// A fiber link between two candidates with a constant bitrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WiredLink {
    pub a: SiteId,
    pub b: SiteId,
    pub bitrate_bps: f64,
}

impl WiredLink {
    pub fn other(&self, site: SiteId) -> Option<SiteId> {
        if site == self.a {
            Some(self.b)
        } else if site == self.b {
            Some(self.a)
        } else {
            None
        }
    }
}

/// Candidate sites plus the wired links between them.
///
/// Site ids are dense: `sites[i].site_id == i`. Edge candidates come first,
/// followed by fog candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkGraph {
    sites: Vec<SiteCandidate>,
    links: Vec<WiredLink>,
    adjacency: Vec<Vec<(SiteId, usize)>>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("site at index {index} has site_id {site_id}; ids must be dense and ordered")]
    NonDenseIds { index: usize, site_id: SiteId },
    #[error("fog site {0} is listed before an edge site; edge candidates must come first")]
    KindOrder(SiteId),
    #[error("link {index} references unknown site {site}")]
    UnknownSite { index: usize, site: SiteId },
    #[error("link {index} is a self-loop on site {site}")]
    SelfLoop { index: usize, site: SiteId },
    #[error("link {index} has non-positive bitrate {bitrate}")]
    BadBitrate { index: usize, bitrate: f64 },
    #[error("link {index} joins two fog sites ({a}, {b})")]
    FogFogLink { index: usize, a: SiteId, b: SiteId },
    #[error("edge candidates do not form a connected subgraph")]
    EdgeSubgraphDisconnected,
    #[error("fog site {0} has no link to an edge candidate")]
    IsolatedFog(SiteId),
}

impl NetworkGraph {
    /// Builds a graph and checks every structural invariant.
    pub fn new(sites: Vec<SiteCandidate>, links: Vec<WiredLink>) -> Result<Self, GraphError> {
        let mut seen_fog = false;
        for (index, site) in sites.iter().enumerate() {
            if site.site_id != index {
                return Err(GraphError::NonDenseIds { index, site_id: site.site_id });
            }
            match site.kind {
                SiteKind::Fog => seen_fog = true,
                SiteKind::Edge if seen_fog => return Err(GraphError::KindOrder(index)),
                SiteKind::Edge => {}
            }
        }
        let mut adjacency = vec![Vec::new(); sites.len()];
        for (index, link) in links.iter().enumerate() {
            for site in [link.a, link.b] {
                if site >= sites.len() {
                    return Err(GraphError::UnknownSite { index, site });
                }
            }
            if link.a == link.b {
                return Err(GraphError::SelfLoop { index, site: link.a });
            }
            if !(link.bitrate_bps > 0.0) || !link.bitrate_bps.is_finite() {
                return Err(GraphError::BadBitrate { index, bitrate: link.bitrate_bps });
            }
            if sites[link.a].kind == SiteKind::Fog && sites[link.b].kind == SiteKind::Fog {
                return Err(GraphError::FogFogLink { index, a: link.a, b: link.b });
            }
            adjacency[link.a].push((link.b, index));
            adjacency[link.b].push((link.a, index));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let graph = Self { sites, links, adjacency };
        graph.check_connectivity()?;
        Ok(graph)
    }

    fn check_connectivity(&self) -> Result<(), GraphError> {
        let n_edge = self.n_edge();
        if n_edge > 0 {
            let mut seen = vec![false; n_edge];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if v < n_edge && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(GraphError::EdgeSubgraphDisconnected);
            }
        }
        for fog in self.fog_ids() {
            if !self.adjacency[fog].iter().any(|&(v, _)| v < n_edge) {
                return Err(GraphError::IsolatedFog(fog));
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> &[SiteCandidate] {
        &self.sites
    }

    pub fn links(&self) -> &[WiredLink] {
        &self.links
    }

    pub fn site(&self, id: SiteId) -> &SiteCandidate {
        &self.sites[id]
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn n_edge(&self) -> usize {
        self.sites.iter().take_while(|s| s.kind == SiteKind::Edge).count()
    }

    pub fn n_fog(&self) -> usize {
        self.sites.len() - self.n_edge()
    }

    pub fn edge_ids(&self) -> std::ops::Range<SiteId> {
        0..self.n_edge()
    }

    pub fn fog_ids(&self) -> std::ops::Range<SiteId> {
        self.n_edge()..self.sites.len()
    }

    /// Neighbors of `site` as `(neighbor, link index)`, sorted by neighbor id.
    pub fn neighbors(&self, site: SiteId) -> &[(SiteId, usize)] {
        &self.adjacency[site]
    }

    pub fn link(&self, index: usize) -> &WiredLink {
        &self.links[index]
    }
}

/// Inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntSpan {
    pub min: u32,
    pub max: u32,
}

impl IntSpan {
    pub const fn new(min: u32, max: u32) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.min <= v && v <= self.max
    }

    pub fn clamp(&self, v: u32) -> u32 {
        v.clamp(self.min, self.max)
    }
}

/// Allowed server/access-point counts for placed candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneBounds {
    /// Server count range for a placed edge node.
    pub edge_sc: IntSpan,
    /// Server count range for a placed fog node.
    pub fog_sc: IntSpan,
    /// Upper bound on access points per edge node (lower bound is always 1).
    pub ac_max: u32,
}

impl Default for GeneBounds {
    fn default() -> Self {
        Self {
            edge_sc: IntSpan::new(4, 6),
            fog_sc: IntSpan::new(6, 8),
            ac_max: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeGene {
    pub site_id: SiteId,
    pub sc: u32,
    pub ac: u32,
    pub placed: bool,
}

impl EdgeGene {
    pub fn dormant(site_id: SiteId) -> Self {
        Self { site_id, sc: 0, ac: 1, placed: false }
    }

    pub fn placed(site_id: SiteId, sc: u32, ac: u32) -> Self {
        Self { site_id, sc, ac, placed: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FogGene {
    pub site_id: SiteId,
    pub sc: u32,
    pub placed: bool,
}

impl FogGene {
    pub fn dormant(site_id: SiteId) -> Self {
        Self { site_id, sc: 0, placed: false }
    }

    pub fn placed(site_id: SiteId, sc: u32) -> Self {
        Self { site_id, sc, placed: true }
    }
}

/// A complete placement decision (one chromosome).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Deployment {
    pub edge_genes: Vec<EdgeGene>,
    pub fog_genes: Vec<FogGene>,
}

impl Deployment {
    /// Every candidate dormant.
    pub fn empty(graph: &NetworkGraph) -> Self {
        Self {
            edge_genes: graph.edge_ids().map(EdgeGene::dormant).collect(),
            fog_genes: graph.fog_ids().map(FogGene::dormant).collect(),
        }
    }

    pub fn placed_edges(&self) -> impl Iterator<Item = &EdgeGene> {
        self.edge_genes.iter().filter(|g| g.placed)
    }

    pub fn placed_fogs(&self) -> impl Iterator<Item = &FogGene> {
        self.fog_genes.iter().filter(|g| g.placed)
    }

    /// Server count at `site`, zero for dormant or unknown sites.
    pub fn servers_at(&self, site: SiteId) -> u32 {
        let n_edge = self.edge_genes.len();
        if site < n_edge {
            let g = &self.edge_genes[site];
            if g.placed { g.sc } else { 0 }
        } else {
            self.fog_genes
                .get(site - n_edge)
                .filter(|g| g.placed)
                .map_or(0, |g| g.sc)
        }
    }

    /// Flattened gene vector used for lexicographic tie-breaks:
    /// `(sc, ac)` per edge gene, then `sc` per fog gene.
    pub fn gene_vector(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.edge_genes.len() * 2 + self.fog_genes.len());
        for g in &self.edge_genes {
            out.push(g.sc);
            out.push(g.ac);
        }
        out.extend(self.fog_genes.iter().map(|g| g.sc));
        out
    }

    /// Human-readable list of placed sites, e.g. `E3(sc=4,ac=2) F31(sc=6)`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .placed_edges()
            .map(|g| format!("E{}(sc={},ac={})", g.site_id, g.sc, g.ac))
            .collect();
        parts.extend(self.placed_fogs().map(|g| format!("F{}(sc={})", g.site_id, g.sc)));
        if parts.is_empty() {
            "(nothing placed)".to_owned()
        } else {
            parts.join(" ")
        }
    }
}

/// Why a deployment fails validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Gene count does not match the candidate count of that kind.
    Coverage,
    /// Gene sits at the wrong position or names the wrong site.
    SiteOrder,
    /// Gene references a site of the other kind.
    KindMismatch,
    /// Placement indicator disagrees with the server count.
    IndicatorMismatch,
    /// Server count outside the configured range.
    ServerRange,
    /// Access-point count outside `[1, ac_max]`, or not 1 on a dormant site.
    AccessPointRange,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Coverage => "coverage",
            ViolationKind::SiteOrder => "site order",
            ViolationKind::KindMismatch => "kind mismatch",
            ViolationKind::IndicatorMismatch => "indicator/server-count mismatch",
            ViolationKind::ServerRange => "server count out of range",
            ViolationKind::AccessPointRange => "access-point count out of range",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub site_id: Option<SiteId>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.site_id {
            Some(id) => write!(f, "site {id}: {} ({})", self.kind, self.detail),
            None => write!(f, "{} ({})", self.kind, self.detail),
        }
    }
}

/// Checks a deployment against the graph and gene bounds. An empty result
/// means every invariant holds.
pub fn validate_deployment(
    graph: &NetworkGraph,
    bounds: &GeneBounds,
    dep: &Deployment,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |site_id: Option<SiteId>, kind: ViolationKind, detail: String| {
        out.push(Violation { site_id, kind, detail })
    };

    if dep.edge_genes.len() != graph.n_edge() {
        push(
            None,
            ViolationKind::Coverage,
            format!("{} edge genes for {} edge candidates", dep.edge_genes.len(), graph.n_edge()),
        );
    }
    if dep.fog_genes.len() != graph.n_fog() {
        push(
            None,
            ViolationKind::Coverage,
            format!("{} fog genes for {} fog candidates", dep.fog_genes.len(), graph.n_fog()),
        );
    }

    for (pos, g) in dep.edge_genes.iter().enumerate() {
        let id = g.site_id;
        match graph.sites().get(id) {
            None => push(Some(id), ViolationKind::SiteOrder, "unknown site".into()),
            Some(site) if site.kind != SiteKind::Edge => {
                push(Some(id), ViolationKind::KindMismatch, format!("edge gene on {} site", site.kind))
            }
            Some(_) if id != pos => {
                push(Some(id), ViolationKind::SiteOrder, format!("edge gene at position {pos}"))
            }
            Some(_) => {}
        }
        if g.placed != (g.sc >= 1) {
            push(Some(id), ViolationKind::IndicatorMismatch, format!("x={}, sc={}", g.placed as u8, g.sc));
        }
        if g.sc >= 1 && !bounds.edge_sc.contains(g.sc) {
            push(
                Some(id),
                ViolationKind::ServerRange,
                format!("sc={} not in [{}, {}]", g.sc, bounds.edge_sc.min, bounds.edge_sc.max),
            );
        }
        let ac_ok = if g.sc >= 1 { (1..=bounds.ac_max).contains(&g.ac) } else { g.ac == 1 };
        if !ac_ok {
            push(Some(id), ViolationKind::AccessPointRange, format!("ac={}", g.ac));
        }
    }

    let n_edge = graph.n_edge();
    for (pos, g) in dep.fog_genes.iter().enumerate() {
        let id = g.site_id;
        match graph.sites().get(id) {
            None => push(Some(id), ViolationKind::SiteOrder, "unknown site".into()),
            Some(site) if site.kind != SiteKind::Fog => {
                push(Some(id), ViolationKind::KindMismatch, format!("fog gene on {} site", site.kind))
            }
            Some(_) if id != n_edge + pos => {
                push(Some(id), ViolationKind::SiteOrder, format!("fog gene at position {pos}"))
            }
            Some(_) => {}
        }
        if g.placed != (g.sc >= 1) {
            push(Some(id), ViolationKind::IndicatorMismatch, format!("y={}, sc={}", g.placed as u8, g.sc));
        }
        if g.sc >= 1 && !bounds.fog_sc.contains(g.sc) {
            push(
                Some(id),
                ViolationKind::ServerRange,
                format!("sc={} not in [{}, {}]", g.sc, bounds.fog_sc.min, bounds.fog_sc.max),
            );
        }
    }
    out
}

/// Restores every gene invariant: clamps counts into range and recomputes
/// the placement indicators from the server counts. Dormant edge sites get
/// `ac = 1`.
pub fn repair_deployment(dep: &Deployment, bounds: &GeneBounds) -> Deployment {
    let mut out = dep.clone();
    repair_in_place(&mut out, bounds);
    out
}

pub(crate) fn repair_in_place(dep: &mut Deployment, bounds: &GeneBounds) {
    for g in &mut dep.edge_genes {
        if g.sc >= 1 {
            g.sc = bounds.edge_sc.clamp(g.sc);
        }
        g.placed = g.sc >= 1;
        g.ac = if g.placed { g.ac.clamp(1, bounds.ac_max.max(1)) } else { 1 };
    }
    for g in &mut dep.fog_genes {
        if g.sc >= 1 {
            g.sc = bounds.fog_sc.clamp(g.sc);
        }
        g.placed = g.sc >= 1;
    }
}

/// Fitness of a deployment. `Infeasible` sorts strictly below every finite
/// value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fitness {
    Infeasible,
    Finite(f64),
}

impl Fitness {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Fitness::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Fitness::Finite(v) => Some(*v),
            Fitness::Infeasible => None,
        }
    }
}

impl Eq for Fitness {}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fitness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Fitness::Infeasible, Fitness::Infeasible) => Ordering::Equal,
            (Fitness::Infeasible, Fitness::Finite(_)) => Ordering::Less,
            (Fitness::Finite(_), Fitness::Infeasible) => Ordering::Greater,
            (Fitness::Finite(a), Fitness::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fitness::Infeasible => f.write_str("-inf"),
            Fitness::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph() -> NetworkGraph {
        let sites = vec![
            SiteCandidate { site_id: 0, kind: SiteKind::Edge, pos: Point::new(0.0, 0.0) },
            SiteCandidate { site_id: 1, kind: SiteKind::Edge, pos: Point::new(10.0, 0.0) },
            SiteCandidate { site_id: 2, kind: SiteKind::Fog, pos: Point::new(5.0, 5.0) },
        ];
        let links = vec![
            WiredLink { a: 0, b: 1, bitrate_bps: 5e6 },
            WiredLink { a: 1, b: 2, bitrate_bps: 3e6 },
        ];
        NetworkGraph::new(sites, links).unwrap()
    }

    fn good() -> Deployment {
        Deployment {
            edge_genes: vec![EdgeGene::placed(0, 4, 2), EdgeGene::dormant(1)],
            fog_genes: vec![FogGene::placed(2, 6)],
        }
    }

    #[test]
    fn well_formed_deployment_has_no_violations() {
        assert!(validate_deployment(&graph(), &GeneBounds::default(), &good()).is_empty());
    }

    #[test]
    fn placed_flag_without_servers_is_flagged() {
        let mut dep = good();
        dep.edge_genes[0].sc = 0;
        dep.edge_genes[0].ac = 1;
        let v = validate_deployment(&graph(), &GeneBounds::default(), &dep);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].kind, ViolationKind::IndicatorMismatch);
        assert_eq!(v[0].site_id, Some(0));
        assert!(v[0].to_string().contains("indicator/server-count mismatch"));
    }

    #[test]
    fn fog_gene_on_edge_site_is_kind_mismatch() {
        let mut dep = good();
        dep.fog_genes[0].site_id = 1;
        let v = validate_deployment(&graph(), &GeneBounds::default(), &dep);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].kind, ViolationKind::KindMismatch);
        assert_eq!(v[0].site_id, Some(1));
    }

    #[test]
    fn missing_gene_is_a_coverage_violation() {
        let mut dep = good();
        dep.fog_genes.clear();
        let v = validate_deployment(&graph(), &GeneBounds::default(), &dep);
        assert!(v.iter().any(|v| v.kind == ViolationKind::Coverage));
    }

    #[test]
    fn repair_examples() {
        let b = GeneBounds::default();
        let one = |g: EdgeGene| {
            repair_deployment(&Deployment { edge_genes: vec![g], fog_genes: vec![] }, &b).edge_genes[0]
        };
        let r = one(EdgeGene { site_id: 0, sc: 4, ac: 1, placed: false });
        assert_eq!((r.sc, r.placed), (4, true));
        let r = one(EdgeGene { site_id: 0, sc: 9, ac: 1, placed: true });
        assert_eq!((r.sc, r.placed), (6, true));
        let r = one(EdgeGene { site_id: 0, sc: 0, ac: 3, placed: true });
        assert_eq!((r.sc, r.ac, r.placed), (0, 1, false));
        let r = one(EdgeGene { site_id: 0, sc: 5, ac: 0, placed: true });
        assert_eq!(r.ac, 1);
        let r = one(EdgeGene { site_id: 0, sc: 5, ac: 11, placed: true });
        assert_eq!(r.ac, 5);
    }

    #[test]
    fn graph_rejects_fog_fog_and_disconnected() {
        let sites = vec![
            SiteCandidate { site_id: 0, kind: SiteKind::Edge, pos: Point::new(0.0, 0.0) },
            SiteCandidate { site_id: 1, kind: SiteKind::Edge, pos: Point::new(1.0, 0.0) },
            SiteCandidate { site_id: 2, kind: SiteKind::Fog, pos: Point::new(2.0, 0.0) },
            SiteCandidate { site_id: 3, kind: SiteKind::Fog, pos: Point::new(3.0, 0.0) },
        ];
        let err = NetworkGraph::new(
            sites.clone(),
            vec![
                WiredLink { a: 0, b: 1, bitrate_bps: 1.0 },
                WiredLink { a: 2, b: 3, bitrate_bps: 1.0 },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::FogFogLink { .. }));
        let err = NetworkGraph::new(
            sites,
            vec![WiredLink { a: 0, b: 2, bitrate_bps: 1.0 }, WiredLink { a: 1, b: 3, bitrate_bps: 1.0 }],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::EdgeSubgraphDisconnected);
    }

    fn arb_fitness() -> impl Strategy<Value = Fitness> {
        prop_oneof![
            Just(Fitness::Infeasible),
            (-1e9f64..1e9).prop_map(Fitness::Finite),
        ]
    }

    fn arb_deployment() -> impl Strategy<Value = Deployment> {
        (
            proptest::collection::vec((0u32..12, 0u32..9, any::<bool>()), 2),
            (0u32..12, any::<bool>()),
        )
            .prop_map(|(edges, (fsc, fy))| Deployment {
                edge_genes: edges
                    .into_iter()
                    .enumerate()
                    .map(|(i, (sc, ac, placed))| EdgeGene { site_id: i, sc, ac, placed })
                    .collect(),
                fog_genes: vec![FogGene { site_id: 2, sc: fsc, placed: fy }],
            })
    }

    proptest! {
        #[test]
        fn fitness_order_is_total(a in arb_fitness(), b in arb_fitness()) {
            let n = [a < b, a == b, a > b].iter().filter(|x| **x).count();
            prop_assert_eq!(n, 1);
            if let Fitness::Finite(_) = a {
                prop_assert!(Fitness::Infeasible < a);
            }
        }

        #[test]
        fn repair_is_idempotent_and_valid(dep in arb_deployment()) {
            let b = GeneBounds::default();
            let once = repair_deployment(&dep, &b);
            prop_assert_eq!(&repair_deployment(&once, &b), &once);
            prop_assert!(validate_deployment(&graph(), &b, &once).is_empty());
        }
    }
}
