//! Diversity-adaptive genetic algorithm for edge/fog placement.
//!
//! Each generation keeps a few elites and fills the rest of the population
//! with offspring of tournament-selected parents. The diversity factor (the
//! population's finite-fitness spread relative to the largest spread seen so
//! far) steers both operators:
//!
//! * tournament size grows as diversity falls, so low diversity means greedier
//!   parent selection;
//! * the per-gene mutation probability also grows as diversity falls, moving
//!   linearly from `mut_min` (diversity 1) to `mut_max` (diversity 0).
//!
//! All random draws for a generation happen serially on one seeded stream
//! before the offspring are evaluated, so the trajectory does not depend on
//! how many worker threads evaluate them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{repair_in_place, Deployment, EdgeGene, Fitness, FogGene, GeneBounds, IntSpan};
use crate::objectives::{capacity_feasible, EvalReport, Evaluator};
use crate::par;
use crate::scenario::Scenario;

/// Redraws allowed per initial individual to reach capacity feasibility.
pub const INIT_REDRAWS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    /// Population size K.
    pub population: usize,
    /// Generation count T.
    pub generations: usize,
    pub mut_min: f64,
    pub mut_max: f64,
    /// Individuals copied unchanged into the next generation.
    pub elite_count: usize,
    pub tournament_min: usize,
    pub tournament_max: usize,
    /// Latency weight in the fitness.
    pub v: f64,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self::with_population(1000, 100, 1e5, 0)
    }
}

impl GaParams {
    /// Default operator settings for a given population size, generation
    /// count, V and seed. Elites are 2% of the population, rounded up.
    pub fn with_population(population: usize, generations: usize, v: f64, seed: u64) -> Self {
        Self {
            population,
            generations,
            mut_min: 0.1,
            mut_max: 0.3,
            elite_count: default_elites(population),
            tournament_min: 2,
            tournament_max: 8,
            v,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        let bad = |m: String| Err(OptimizeError::InvalidParams(m));
        if self.population < 2 {
            return bad(format!("population must be >= 2 (got {})", self.population));
        }
        if !(0.0 <= self.mut_min && self.mut_min <= self.mut_max && self.mut_max <= 1.0) {
            return bad(format!(
                "mutation range must satisfy 0 <= min <= max <= 1 (got [{}, {}])",
                self.mut_min, self.mut_max
            ));
        }
        if self.elite_count < 1 || self.elite_count >= self.population {
            return bad(format!(
                "elite_count must be in [1, population) (got {})",
                self.elite_count
            ));
        }
        if self.tournament_min < 1 || self.tournament_min > self.tournament_max {
            return bad(format!(
                "tournament sizes must satisfy 1 <= min <= max (got {}..{})",
                self.tournament_min, self.tournament_max
            ));
        }
        if !(self.v >= 0.0 && self.v.is_finite()) {
            return bad(format!("V must be a finite non-negative number (got {})", self.v));
        }
        Ok(())
    }
}

pub fn default_elites(population: usize) -> usize {
    (population * 2).div_ceil(100).max(1)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OptimizeError {
    #[error("invalid GA parameters: {0}")]
    InvalidParams(String),
    #[error("no feasible deployment found")]
    NoFeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationStats {
    pub gen: usize,
    /// Finite-fitness statistics; `None` when every individual is infeasible.
    pub best: Option<f64>,
    pub mean: Option<f64>,
    pub worst: Option<f64>,
    pub n_infeasible: usize,
    pub df: f64,
}

impl GenerationStats {
    fn collect(gen: usize, fits: &[Fitness], df: f64) -> Self {
        let finite: Vec<f64> = fits.iter().filter_map(Fitness::value).collect();
        let (best, mean, worst) = if finite.is_empty() {
            (None, None, None)
        } else {
            let best = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let worst = finite.iter().copied().fold(f64::INFINITY, f64::min);
            let mean = finite.iter().sum::<f64>() / finite.len() as f64;
            (Some(best), Some(mean.clamp(worst, best)), Some(worst))
        };
        Self { gen, best, mean, worst, n_infeasible: fits.len() - finite.len(), df }
    }
}

fn uniform_in<R: Rng>(span: IntSpan, rng: &mut R) -> u32 {
    rng.gen_range(span.min..=span.max)
}

/// One random deployment: each candidate placed with probability 1/2,
/// counts uniform within bounds.
pub fn draw_deployment<R: Rng>(scn: &Scenario, rng: &mut R) -> Deployment {
    let b = &scn.config.bounds;
    let mut dep = Deployment {
        edge_genes: scn
            .graph
            .edge_ids()
            .map(|site_id| {
                let placed = rng.gen_bool(0.5);
                let sc = if placed { uniform_in(b.edge_sc, rng) } else { 0 };
                let ac = rng.gen_range(1..=b.ac_max);
                EdgeGene { site_id, sc, ac, placed }
            })
            .collect(),
        fog_genes: scn
            .graph
            .fog_ids()
            .map(|site_id| {
                let placed = rng.gen_bool(0.5);
                let sc = if placed { uniform_in(b.fog_sc, rng) } else { 0 };
                FogGene { site_id, sc, placed }
            })
            .collect(),
    };
    repair_in_place(&mut dep, b);
    dep
}

/// Draws up to `max_draws` deployments and returns the first that meets the
/// total-capacity constraint, or the last draw if none does.
pub fn draw_capacity_feasible<R: Rng>(scn: &Scenario, rng: &mut R, max_draws: usize) -> Deployment {
    let mut dep = draw_deployment(scn, rng);
    for _ in 1..max_draws.max(1) {
        if capacity_feasible(scn, &dep) {
            break;
        }
        dep = draw_deployment(scn, rng);
    }
    dep
}

fn init_with<R: Rng>(scn: &Scenario, population: usize, rng: &mut R) -> Vec<Deployment> {
    (0..population)
        .map(|_| draw_capacity_feasible(scn, rng, 1 + INIT_REDRAWS))
        .collect()
}

pub fn init_population(scn: &Scenario, params: &GaParams) -> Vec<Deployment> {
    init_with(scn, params.population, &mut ChaCha8Rng::seed_from_u64(params.seed))
}

/// Returns `(df, updated historical max spread)`.
pub fn diversity_factor(fitness: &[Fitness], historical_max_spread: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in fitness.iter().filter_map(Fitness::value) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        return (1.0, historical_max_spread);
    }
    let spread = hi - lo;
    let hist = historical_max_spread.max(spread);
    if hist <= 0.0 {
        (1.0, hist)
    } else {
        ((spread / hist).clamp(0.0, 1.0), hist)
    }
}

fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + (hi - lo) * t
}

pub fn tournament_size(df: f64, params: &GaParams) -> usize {
    lerp(params.tournament_min as f64, params.tournament_max as f64, 1.0 - df).round() as usize
}

/// Tournament over a population sorted best-first. Returns the winner's
/// index, which is the smallest index drawn.
pub fn select_index<R: Rng>(population_len: usize, df: f64, params: &GaParams, rng: &mut R) -> usize {
    let size = tournament_size(df, params).max(1);
    (0..size).map(|_| rng.gen_range(0..population_len)).min().unwrap()
}

pub fn select_parent<'a, R: Rng>(
    sorted: &'a [Deployment],
    df: f64,
    params: &GaParams,
    rng: &mut R,
) -> &'a Deployment {
    &sorted[select_index(sorted.len(), df, params, rng)]
}

/// Uniform crossover: each position's whole gene comes from `a` or `b` with
/// equal probability; the sibling gets the other one.
pub fn crossover<R: Rng>(
    a: &Deployment,
    b: &Deployment,
    bounds: &GeneBounds,
    rng: &mut R,
) -> (Deployment, Deployment) {
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    for i in 0..c1.edge_genes.len() {
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c1.edge_genes[i], &mut c2.edge_genes[i]);
        }
    }
    for i in 0..c1.fog_genes.len() {
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c1.fog_genes[i], &mut c2.fog_genes[i]);
        }
    }
    repair_in_place(&mut c1, bounds);
    repair_in_place(&mut c2, bounds);
    (c1, c2)
}

pub fn mutation_probability(df: f64, params: &GaParams) -> f64 {
    lerp(params.mut_min, params.mut_max, 1.0 - df.clamp(0.0, 1.0))
}

pub fn mutate<R: Rng>(
    dep: &Deployment,
    df: f64,
    params: &GaParams,
    bounds: &GeneBounds,
    rng: &mut R,
) -> Deployment {
    mutate_with_probability(dep, mutation_probability(df, params), bounds, rng)
}

/// Mutates each gene with probability `p`. A mutated gene changes one field
/// chosen uniformly: its placement (toggled), its server count, or (edge
/// only) its access-point count.
pub fn mutate_with_probability<R: Rng>(
    dep: &Deployment,
    p: f64,
    bounds: &GeneBounds,
    rng: &mut R,
) -> Deployment {
    let mut out = dep.clone();
    for g in &mut out.edge_genes {
        if !rng.gen_bool(p) {
            continue;
        }
        match rng.gen_range(0..3) {
            0 => g.sc = if g.sc >= 1 { 0 } else { uniform_in(bounds.edge_sc, rng) },
            1 => g.sc = uniform_in(bounds.edge_sc, rng),
            _ => g.ac = rng.gen_range(1..=bounds.ac_max),
        }
    }
    for g in &mut out.fog_genes {
        if !rng.gen_bool(p) {
            continue;
        }
        match rng.gen_range(0..2) {
            0 => g.sc = if g.sc >= 1 { 0 } else { uniform_in(bounds.fog_sc, rng) },
            _ => g.sc = uniform_in(bounds.fog_sc, rng),
        }
    }
    repair_in_place(&mut out, bounds);
    out
}

#[derive(Debug, Clone)]
struct Individual {
    dep: Deployment,
    report: EvalReport,
}

fn sort_best_first(pop: &mut [Individual]) {
    pop.sort_by_key(|i| std::cmp::Reverse(i.report.fitness));
}

#[derive(Debug, Clone)]
pub struct Evolution {
    /// Best deployment seen in any generation.
    pub best: Deployment,
    pub report: EvalReport,
    /// One entry per generation, `gen` running from 1 to T.
    pub history: Vec<GenerationStats>,
}

/// Runs the optimizer.
pub fn evolve(scn: &Scenario, params: &GaParams) -> Result<Evolution, OptimizeError> {
    evolve_with(&Evaluator::new(scn), params)
}

pub fn evolve_with(evaluator: &Evaluator<'_>, params: &GaParams) -> Result<Evolution, OptimizeError> {
    params.validate()?;
    let scn = evaluator.scenario();
    let bounds = scn.config.bounds;
    let v = params.v;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let evaluate_all = |deps: Vec<Deployment>| -> Vec<Individual> {
        let reports = par::map(&deps, |d| evaluator.evaluate(d, v));
        deps.into_iter()
            .zip(reports)
            .map(|(dep, report)| Individual { dep, report })
            .collect()
    };

    let mut pop = evaluate_all(init_with(scn, params.population, &mut rng));
    sort_best_first(&mut pop);
    let fits: Vec<Fitness> = pop.iter().map(|i| i.report.fitness).collect();
    let (mut df, mut hist) = diversity_factor(&fits, 0.0);
    let mut best = pop[0].clone();
    let mut history = Vec::with_capacity(params.generations);

    for gen in 1..=params.generations {
        let n_offspring = params.population - params.elite_count;
        let mut offspring = Vec::with_capacity(n_offspring);
        while offspring.len() < n_offspring {
            let a = select_index(pop.len(), df, params, &mut rng);
            let b = select_index(pop.len(), df, params, &mut rng);
            let (c1, c2) = crossover(&pop[a].dep, &pop[b].dep, &bounds, &mut rng);
            offspring.push(mutate(&c1, df, params, &bounds, &mut rng));
            if offspring.len() < n_offspring {
                offspring.push(mutate(&c2, df, params, &bounds, &mut rng));
            }
        }
        debug_assert!(offspring
            .iter()
            .all(|d| crate::model::validate_deployment(&scn.graph, &bounds, d).is_empty()));
        pop.truncate(params.elite_count);
        pop.extend(evaluate_all(offspring));
        debug_assert_eq!(pop.len(), params.population);
        sort_best_first(&mut pop);

        let fits: Vec<Fitness> = pop.iter().map(|i| i.report.fitness).collect();
        (df, hist) = diversity_factor(&fits, hist);
        if pop[0].report.fitness > best.report.fitness {
            best = pop[0].clone();
        }
        history.push(GenerationStats::collect(gen, &fits, df));
    }

    if !best.report.feasible {
        return Err(OptimizeError::NoFeasible);
    }
    Ok(Evolution { best: best.dep, report: best.report, history })
}
