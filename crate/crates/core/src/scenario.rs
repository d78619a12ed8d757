//! Seeded generation of city scenarios and their TOML file format.
//!
//! A scenario file holds four top-level items: the `[config]` table, then
//! `[[sites]]` (`id`, `kind`, `x`, `y`), `[[links]]` (`a`, `b`,
//! `bitrate_bps`) and `[[tasks]]` (`id`, `d_bits`, `freq_hz`, `cycles`, `x`,
//! `y`). All quantities are SI base units. In the config table the noise
//! power may be given as `noise_dbm` instead of `noise_w`.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{
    GeneBounds, GraphError, NetworkGraph, Point, SiteCandidate, SiteKind, TaskSpec, WiredLink,
};
use crate::objectives::CompModel;
use crate::wireless::Channel;

/// Inclusive real range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Span {
    pub min: f64,
    pub max: f64,
}

impl Span {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.min <= v && v <= self.max
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        if self.min == self.max {
            self.min
        } else {
            rng.gen_range(self.min..=self.max)
        }
    }

    /// Uniform draw rounded to a whole number, kept inside the range.
    fn sample_whole<R: Rng>(&self, rng: &mut R) -> f64 {
        self.sample(rng).round().clamp(self.min, self.max)
    }
}

/// Converts a power level in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_edge_candidates: usize,
    pub n_fog_candidates: usize,
    pub n_users: usize,
    pub area_side_m: f64,
    pub bounds: GeneBounds,
    /// Per-server frequency of an edge node, Hz.
    pub edge_server_hz: f64,
    /// Per-server frequency of a fog node, Hz.
    pub fog_server_hz: f64,
    pub edge_edge_bitrate_bps: Span,
    pub edge_fog_bitrate_bps: Span,
    /// Channel bandwidth W, Hz.
    pub bandwidth_hz: f64,
    /// Average power gain.
    pub power_gain: f64,
    /// Noise power, W.
    pub noise_w: f64,
    /// Alternative to `noise_w`; converted on load and never written back.
    #[serde(skip_serializing)]
    pub noise_dbm: Option<f64>,
    /// UE transmission power, W.
    pub tx_power_w: f64,
    pub c_fixed: f64,
    pub c_dynamic: f64,
    pub task_freq_hz: Span,
    pub task_cycles: Span,
    pub task_data_bits: Span,
    pub comp_model: CompModel,
    /// Extra random edge-edge links beyond the spanning tree, as a fraction
    /// of the edge candidate count.
    pub extra_link_fraction: f64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_edge_candidates: 30,
            n_fog_candidates: 5,
            n_users: 100,
            area_side_m: 1000.0,
            bounds: GeneBounds::default(),
            edge_server_hz: 0.5e9,
            fog_server_hz: 0.5e9,
            edge_edge_bitrate_bps: Span::new(4.85e6, 6.85e6),
            edge_fog_bitrate_bps: Span::new(2.01e6, 4.01e6),
            bandwidth_hz: 10e6,
            power_gain: 1e-5,
            noise_w: 1e-13,
            noise_dbm: None,
            tx_power_w: 0.1,
            c_fixed: 500.0,
            c_dynamic: 100.0,
            task_freq_hz: Span::new(50e6, 200e6),
            task_cycles: Span::new(10.0, 60.0),
            task_data_bits: Span::new(800.0, 4e6),
            comp_model: CompModel::Literal,
            extra_link_fraction: 0.3,
            seed: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("failed to parse scenario file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("failed to serialize scenario: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ScenarioConfig {
    /// Folds `noise_dbm` into `noise_w`.
    pub fn resolve(mut self) -> Self {
        if let Some(dbm) = self.noise_dbm.take() {
            self.noise_w = dbm_to_watts(dbm);
        }
        self
    }

    pub fn channel(&self) -> Channel {
        Channel {
            bandwidth_hz: self.bandwidth_hz,
            power_gain: self.power_gain,
            noise_w: self.noise_w,
            tx_power_w: self.tx_power_w,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |msg: String| Err(ScenarioError::Config(msg));
        if self.n_edge_candidates < 2 {
            return bad(format!("n_edge_candidates must be >= 2 (got {})", self.n_edge_candidates));
        }
        if self.n_users == 0 {
            return bad("n_users must be >= 1".into());
        }
        let positive = [
            ("area_side_m", self.area_side_m),
            ("edge_server_hz (alpha)", self.edge_server_hz),
            ("fog_server_hz (omega)", self.fog_server_hz),
            ("W", self.bandwidth_hz),
            ("power_gain (h_bar)", self.power_gain),
            ("noise_w (sigma2)", self.noise_w),
            ("tx_power_w (P)", self.tx_power_w),
            ("c_fixed", self.c_fixed),
            ("c_dynamic", self.c_dynamic),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be > 0 (got {v})"));
            }
        }
        let spans = [
            ("edge_edge_bitrate_bps", self.edge_edge_bitrate_bps),
            ("edge_fog_bitrate_bps", self.edge_fog_bitrate_bps),
            ("task_freq_hz", self.task_freq_hz),
            ("task_cycles", self.task_cycles),
            ("task_data_bits", self.task_data_bits),
        ];
        for (name, s) in spans {
            if !(s.min > 0.0 && s.min <= s.max && s.max.is_finite()) {
                return bad(format!("{name} must satisfy 0 < min <= max (got [{}, {}])", s.min, s.max));
            }
        }
        let b = &self.bounds;
        if b.edge_sc.min > b.edge_sc.max {
            return bad("bounds.edge_sc must have min <= max".into());
        }
        if b.fog_sc.min > b.fog_sc.max {
            return bad("bounds.fog_sc must have min <= max".into());
        }
        if b.ac_max < 1 {
            return bad("bounds.ac_max must be >= 1".into());
        }
        if !(self.extra_link_fraction >= 0.0 && self.extra_link_fraction.is_finite()) {
            return bad(format!("extra_link_fraction must be >= 0 (got {})", self.extra_link_fraction));
        }
        if self.noise_dbm.is_some_and(|d| !d.is_finite()) {
            return bad("noise_dbm must be finite".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub graph: NetworkGraph,
    pub tasks: Vec<TaskSpec>,
}

/// Draws a scenario. Pure function of `config`, including its seed.
pub fn generate(config: &ScenarioConfig) -> Result<Scenario, ScenarioError> {
    let config = config.clone().resolve();
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let side = config.area_side_m;
    let point = |rng: &mut ChaCha8Rng| Point::new(rng.gen_range(0.0..=side), rng.gen_range(0.0..=side));

    let n_edge = config.n_edge_candidates;
    let n_fog = config.n_fog_candidates;
    let mut sites = Vec::with_capacity(n_edge + n_fog);
    for id in 0..n_edge {
        sites.push(SiteCandidate { site_id: id, kind: SiteKind::Edge, pos: point(&mut rng) });
    }
    for id in n_edge..n_edge + n_fog {
        sites.push(SiteCandidate { site_id: id, kind: SiteKind::Fog, pos: point(&mut rng) });
    }

    // Random recursive spanning tree over a shuffled edge order.
    let mut order: Vec<usize> = (0..n_edge).collect();
    order.shuffle(&mut rng);
    let mut linked = std::collections::BTreeSet::new();
    let mut links = Vec::new();
    for i in 1..n_edge {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        let (a, b) = (parent.min(child), parent.max(child));
        linked.insert((a, b));
        links.push(WiredLink { a, b, bitrate_bps: config.edge_edge_bitrate_bps.sample(&mut rng) });
    }

    let max_pairs = n_edge * (n_edge - 1) / 2;
    let n_extra = ((config.extra_link_fraction * n_edge as f64).floor() as usize)
        .min(max_pairs - linked.len());
    let mut added = 0;
    while added < n_extra {
        let a = rng.gen_range(0..n_edge);
        let b = rng.gen_range(0..n_edge);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if linked.insert(key) {
            links.push(WiredLink {
                a: key.0,
                b: key.1,
                bitrate_bps: config.edge_edge_bitrate_bps.sample(&mut rng),
            });
            added += 1;
        }
    }

    for fog in n_edge..n_edge + n_fog {
        let fpos = sites[fog].pos;
        let mut nearest: Vec<(f64, usize)> =
            (0..n_edge).map(|e| (fpos.distance(&sites[e].pos), e)).collect();
        nearest.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        for &(_, e) in nearest.iter().take(2) {
            links.push(WiredLink { a: e, b: fog, bitrate_bps: config.edge_fog_bitrate_bps.sample(&mut rng) });
        }
    }

    let tasks = (0..config.n_users)
        .map(|user_id| TaskSpec {
            user_id,
            d_bits: config.task_data_bits.sample_whole(&mut rng),
            freq_hz: config.task_freq_hz.sample_whole(&mut rng),
            cycles: config.task_cycles.sample_whole(&mut rng),
            pos: point(&mut rng),
        })
        .collect();

    let graph = NetworkGraph::new(sites, links)?;
    Ok(Scenario { config, graph, tasks })
}

impl Scenario {
    /// Full consistency check of a loaded or hand-built scenario.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.config.validate()?;
        let c = &self.config;
        if self.graph.n_edge() != c.n_edge_candidates || self.graph.n_fog() != c.n_fog_candidates {
            return Err(ScenarioError::Invalid(format!(
                "graph has {} edge / {} fog sites, config says {} / {}",
                self.graph.n_edge(),
                self.graph.n_fog(),
                c.n_edge_candidates,
                c.n_fog_candidates
            )));
        }
        if self.tasks.len() != c.n_users {
            return Err(ScenarioError::Invalid(format!(
                "{} tasks but n_users = {}",
                self.tasks.len(),
                c.n_users
            )));
        }
        for (i, t) in self.tasks.iter().enumerate() {
            if t.user_id != i {
                return Err(ScenarioError::Invalid(format!("task at index {i} has id {}", t.user_id)));
            }
            if !t.is_valid() {
                return Err(ScenarioError::Invalid(format!(
                    "task {i}: d_bits, freq_hz and cycles must be > 0"
                )));
            }
        }
        Ok(())
    }

    pub fn total_demand_hz(&self) -> f64 {
        self.tasks.iter().map(|t| t.freq_hz).sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SiteRecord {
    id: usize,
    kind: SiteKind,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkRecord {
    a: usize,
    b: usize,
    bitrate_bps: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskRecord {
    id: usize,
    d_bits: f64,
    freq_hz: f64,
    cycles: f64,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    config: ScenarioConfig,
    sites: Vec<SiteRecord>,
    links: Vec<LinkRecord>,
    tasks: Vec<TaskRecord>,
}

pub fn to_toml(scn: &Scenario) -> Result<String, ScenarioError> {
    let file = ScenarioFile {
        config: scn.config.clone(),
        sites: scn
            .graph
            .sites()
            .iter()
            .map(|s| SiteRecord { id: s.site_id, kind: s.kind, x: s.pos.x, y: s.pos.y })
            .collect(),
        links: scn
            .graph
            .links()
            .iter()
            .map(|l| LinkRecord { a: l.a, b: l.b, bitrate_bps: l.bitrate_bps })
            .collect(),
        tasks: scn
            .tasks
            .iter()
            .map(|t| TaskRecord {
                id: t.user_id,
                d_bits: t.d_bits,
                freq_hz: t.freq_hz,
                cycles: t.cycles,
                x: t.pos.x,
                y: t.pos.y,
            })
            .collect(),
    };
    Ok(toml::to_string(&file)?)
}

pub fn from_toml(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = toml::from_str(text)?;
    let config = file.config.resolve();
    let sites = file
        .sites
        .into_iter()
        .map(|s| SiteCandidate { site_id: s.id, kind: s.kind, pos: Point::new(s.x, s.y) })
        .collect();
    let links = file
        .links
        .into_iter()
        .map(|l| WiredLink { a: l.a, b: l.b, bitrate_bps: l.bitrate_bps })
        .collect();
    let tasks = file
        .tasks
        .into_iter()
        .map(|t| TaskSpec {
            user_id: t.id,
            d_bits: t.d_bits,
            freq_hz: t.freq_hz,
            cycles: t.cycles,
            pos: Point::new(t.x, t.y),
        })
        .collect();
    config.validate()?;
    let scn = Scenario { config, graph: NetworkGraph::new(sites, links)?, tasks };
    scn.validate()?;
    Ok(scn)
}

pub fn save(scn: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    fs::write(path, to_toml(scn)?)
        .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })
}

pub fn load(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
    from_toml(&text)
}

/// Reads a (possibly partial) config file; missing fields take defaults.
pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
    let config: ScenarioConfig = toml::from_str(&text)?;
    let config = config.resolve();
    config.validate()?;
    Ok(config)
}
