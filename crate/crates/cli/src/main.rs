use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use craft_core::baselines::{exhaustive_oracle_with, random_placement};
use craft_core::genetic::{evolve_with, GaParams, INIT_REDRAWS};
use craft_core::harness::{run_csv, sweep, sweep_csv, Axis, Method, SweepSpec};
use craft_core::scenario::{self, load_config};
use craft_core::{generate, CompModel, EvalReport, Evaluator, Lattice, Scenario, ScenarioConfig};

/// Edge and fog node placement simulator.
#[derive(Parser, Debug)]
#[command(name = "craft", version, about)]
struct Cli {
    /// Seed for scenario generation and the optimizer.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with scenario parameters; unlisted keys keep their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads. CRAFT_THREADS takes precedence when set.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Computation-time model: literal or per-bit.
    #[arg(long, global = true)]
    comp_model: Option<CompModel>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a scenario and write it as TOML.
    Generate(ScenarioArgs),
    /// Optimize one scenario and write the per-generation CSV.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Sweep user count or V for each method and write one CSV row per run.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        ga: GaArgs,
        #[arg(long, default_value = "users")]
        axis: Axis,
        /// Comma-separated axis values (defaults depend on the axis).
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "craft,random")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        /// Write wall_ms as 0 so repeated sweeps are byte-identical.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Exhaustively search a small lattice of server and access-point counts.
    Oracle {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(short = 'V', long = "v", default_value_t = 1e5)]
        v: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,4,5")]
        edge_sc: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "0,6,7")]
        fog_sc: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        ac: Vec<u32>,
        /// Also run the optimizer this many times on the lattice and report the gap.
        #[arg(long, default_value_t = 0)]
        compare_ga: usize,
        #[arg(long, default_value_t = 100)]
        population: usize,
        #[arg(long, default_value_t = 50)]
        generations: usize,
    },
    /// Evaluate a random placement.
    Baseline {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(short = 'V', long = "v", default_value_t = 1e5)]
        v: f64,
        #[arg(long, default_value_t = 1 + INIT_REDRAWS)]
        tries: usize,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct ScenarioArgs {
    /// Load a saved scenario instead of generating one.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    users: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    fogs: Option<usize>,
    /// Side of the square area in metres.
    #[arg(long)]
    area: Option<f64>,
    /// Noise power in dBm.
    #[arg(long, allow_hyphen_values = true)]
    sigma2_dbm: Option<f64>,
    /// Extra edge-edge links as a fraction of the edge count.
    #[arg(long)]
    extra_links: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct GaArgs {
    #[arg(short = 'K', long, default_value_t = 1000)]
    population: usize,
    #[arg(short = 'T', long, default_value_t = 100)]
    generations: usize,
    #[arg(short = 'V', long = "v", default_value_t = 1e5)]
    v: f64,
    /// Elite count (default 2% of the population, at least 1).
    #[arg(long)]
    elites: Option<usize>,
    #[arg(long)]
    mut_min: Option<f64>,
    #[arg(long)]
    mut_max: Option<f64>,
}

impl GaArgs {
    fn params(&self, seed: u64) -> GaParams {
        let mut p = GaParams::with_population(self.population, self.generations, self.v, seed);
        if let Some(e) = self.elites {
            p.elite_count = e;
        }
        if let Some(m) = self.mut_min {
            p.mut_min = m;
        }
        if let Some(m) = self.mut_max {
            p.mut_max = m;
        }
        p
    }
}

impl Cli {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn base_config(&self, args: &ScenarioArgs) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => ScenarioConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(m) = self.comp_model {
            cfg.comp_model = m;
        }
        if let Some(n) = args.users {
            cfg.n_users = n;
        }
        if let Some(n) = args.edges {
            cfg.n_edge_candidates = n;
        }
        if let Some(n) = args.fogs {
            cfg.n_fog_candidates = n;
        }
        if let Some(a) = args.area {
            cfg.area_side_m = a;
        }
        if let Some(dbm) = args.sigma2_dbm {
            cfg.noise_dbm = Some(dbm);
        }
        if let Some(f) = args.extra_links {
            cfg.extra_link_fraction = f;
        }
        let cfg = cfg.resolve();
        cfg.validate()?;
        Ok(cfg)
    }

    fn scenario(&self, args: &ScenarioArgs) -> Result<Scenario> {
        let mut scn = match &args.scenario {
            Some(path) => scenario::load(path)?,
            None => generate(&self.base_config(args)?)?,
        };
        if let Some(m) = self.comp_model {
            scn.config.comp_model = m;
        }
        Ok(scn)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let threads = match std::env::var("CRAFT_THREADS") {
        Ok(s) => Some(s.trim().parse::<usize>().with_context(|| format!("CRAFT_THREADS={s:?} is not a count"))?),
        Err(_) => flag,
    };
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        bail!("thread count must be >= 1");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn summary(label: &str, dep: &craft_core::Deployment, r: &EvalReport) -> String {
    let latency = r.avg_latency_s.map_or_else(|| "n/a".to_owned(), |t| format!("{t:.6}"));
    let mut s = format!(
        "{label}: {}\n  avg_latency_s = {latency}\n  total_cost = {} (edge {}, fog {})\n  fitness = {}\n  feasible = {}\n",
        dep.describe(),
        r.total_cost,
        r.edge_cost,
        r.fog_cost,
        r.fitness,
        r.feasible
    );
    if let Some(why) = &r.infeasible_reason {
        s.push_str(&format!("  reason = {why}\n"));
    }
    s
}

fn run(cli: &Cli) -> Result<()> {
    configure_threads(cli.threads)?;
    match &cli.cmd {
        Command::Generate(args) => {
            let scn = cli.scenario(&ScenarioArgs { scenario: None, ..args.clone() })?;
            let c = &scn.config;
            eprintln!(
                "generated {} edge, {} fog, {} links, {} users (seed {}, noise {} W, {:?} computation)",
                c.n_edge_candidates,
                c.n_fog_candidates,
                scn.graph.links().len(),
                scn.tasks.len(),
                c.seed,
                c.noise_w,
                c.comp_model
            );
            cli.emit(&scenario::to_toml(&scn)?)
        }
        Command::Run { scenario, ga } => {
            let scn = cli.scenario(scenario)?;
            let evaluator = Evaluator::new(&scn);
            let evo = evolve_with(&evaluator, &ga.params(cli.seed()))?;
            cli.emit(&run_csv(&evo.history))?;
            eprint!("{}", summary("best", &evo.best, &evo.report));
            Ok(())
        }
        Command::Sweep { scenario, ga, axis, values, methods, repeats, omit_timing } => {
            if scenario.scenario.is_some() {
                bail!("sweep generates its own scenarios; --scenario is not accepted");
            }
            let mut spec = SweepSpec::new(*axis);
            if !values.is_empty() {
                spec.values = values.clone();
            }
            spec.methods = methods.clone();
            spec.repeats = *repeats;
            spec.base_seed = cli.seed();
            spec.base_config = cli.base_config(scenario)?;
            spec.ga = ga.params(cli.seed());
            spec.record_timing = !omit_timing;
            let rows = sweep(&spec)?;
            cli.emit(&sweep_csv(&rows))
        }
        Command::Oracle { scenario, v, edge_sc, fog_sc, ac, compare_ga, population, generations } => {
            let lattice = Lattice { edge_sc: edge_sc.clone(), fog_sc: fog_sc.clone(), ac: ac.clone() };
            let mut scn = cli.scenario(scenario)?;
            let size = lattice.size(scn.graph.n_edge(), scn.graph.n_fog());
            eprintln!("enumerating {size} deployments");
            let evaluator = Evaluator::new(&scn);
            let (best, report) = exhaustive_oracle_with(&evaluator, *v, &lattice)?;
            let mut out = summary("oracle", &best, &report);
            if *compare_ga > 0 {
                let Some(bounds) = lattice.as_bounds() else {
                    bail!("--compare-ga needs contiguous nonzero server counts, 0 in each list and ac starting at 1");
                };
                scn.config.bounds = bounds;
                let evaluator = Evaluator::new(&scn);
                let opt = report.fitness.value().expect("oracle result is feasible");
                let mut within = 0;
                for r in 0..*compare_ga {
                    let seed = cli.seed().wrapping_add(r as u64);
                    let params = GaParams::with_population(*population, *generations, *v, seed);
                    let line = match evolve_with(&evaluator, &params) {
                        Ok(evo) => {
                            let got = evo.report.fitness.value().expect("feasible");
                            let gap = (opt - got) / opt.abs() * 100.0;
                            if gap <= 1.0 {
                                within += 1;
                            }
                            format!("ga seed {seed}: fitness {got} gap {gap:.4}%\n")
                        }
                        Err(e) => format!("ga seed {seed}: {e}\n"),
                    };
                    out.push_str(&line);
                }
                out.push_str(&format!("within 1%: {within}/{compare_ga}\n"));
            }
            cli.emit(&out)
        }
        Command::Baseline { scenario, v, tries } => {
            let scn = cli.scenario(scenario)?;
            let dep = random_placement(&scn, cli.seed(), *tries);
            let report = Evaluator::new(&scn).evaluate(&dep, *v);
            cli.emit(&summary("random", &dep, &report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
