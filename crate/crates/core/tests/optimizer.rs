mod support;

use craft_core::baselines::exhaustive_oracle;
use craft_core::genetic::{draw_deployment, init_population};
use craft_core::model::{EdgeGene, FogGene};
use craft_core::objectives::capacity_feasible;
use craft_core::{
    evaluate, evolve, generate, random_placement, validate_deployment, Deployment, GaParams, Lattice,
    OracleError, Scenario, ScenarioConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tiny_lattice() -> Lattice {
    Lattice { edge_sc: vec![0, 4, 5], fog_sc: vec![0, 6, 7], ac: vec![1, 2, 3] }
}

fn tiny_scenario(seed: u64) -> Scenario {
    let lattice = tiny_lattice();
    generate(&ScenarioConfig {
        n_edge_candidates: 3,
        n_fog_candidates: 1,
        n_users: 20,
        area_side_m: 600.0,
        bounds: lattice.as_bounds().unwrap(),
        seed,
        ..Default::default()
    })
    .unwrap()
}

#[test]
fn initial_population_is_mostly_capacity_feasible() {
    let mut ok = 0;
    let mut total = 0;
    for seed in 0..50 {
        let scn = generate(&ScenarioConfig { n_users: 70, seed, ..Default::default() }).unwrap();
        let pop = init_population(&scn, &GaParams::with_population(40, 1, 1e5, seed));
        assert_eq!(pop.len(), 40);
        for d in &pop {
            assert!(validate_deployment(&scn.graph, &scn.config.bounds, d).is_empty());
        }
        ok += pop.iter().filter(|d| capacity_feasible(&scn, d)).count();
        total += pop.len();
    }
    assert!(ok as f64 >= 0.9 * total as f64, "{ok}/{total}");
}

#[test]
fn doubling_prices_and_v_keeps_the_argmax() {
    let base = tiny_scenario(4);
    let mut scaled = base.clone();
    scaled.config.c_fixed *= 2.0;
    scaled.config.c_dynamic *= 2.0;

    let (d1, r1) = exhaustive_oracle(&base, 1e4, &tiny_lattice()).unwrap();
    let (d2, r2) = exhaustive_oracle(&scaled, 2e4, &tiny_lattice()).unwrap();
    assert_eq!(d1, d2);
    assert_eq!(r2.fitness.value().unwrap(), 2.0 * r1.fitness.value().unwrap());

    let p1 = GaParams::with_population(30, 10, 1e4, 7);
    let p2 = GaParams { v: 2e4, ..p1.clone() };
    let e1 = evolve(&base, &p1).unwrap();
    let e2 = evolve(&scaled, &p2).unwrap();
    assert_eq!(e1.best, e2.best);
}

#[test]
fn oracle_dominates_lattice_samples_and_heuristics() {
    for seed in 0..4 {
        let scn = tiny_scenario(seed);
        let v = 1e4;
        let (best_dep, best) = exhaustive_oracle(&scn, v, &tiny_lattice()).unwrap();
        assert!(best.feasible);
        assert_eq!(evaluate(&scn, &best_dep, v).fitness, best.fitness);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let d = draw_deployment(&scn, &mut rng);
            assert!(evaluate(&scn, &d, v).fitness <= best.fitness);
        }
        let rnd = random_placement(&scn, seed, 50);
        assert!(evaluate(&scn, &rnd, v).fitness <= best.fitness);

        let ga = evolve(&scn, &GaParams::with_population(60, 30, v, seed)).unwrap();
        assert!(ga.report.fitness <= best.fitness);
        let gap = (best.fitness.value().unwrap() - ga.report.fitness.value().unwrap()).abs()
            / best.fitness.value().unwrap().abs();
        assert!(gap <= 0.05, "seed {seed}: gap {gap}");
    }
}

#[test]
fn zero_v_finds_the_cheapest_feasible_deployment() {
    let scn = tiny_scenario(11);
    let (_, best) = exhaustive_oracle(&scn, 0.0, &tiny_lattice()).unwrap();
    let ga = evolve(&scn, &GaParams::with_population(60, 40, 0.0, 3)).unwrap();
    assert_eq!(ga.report.total_cost, best.total_cost);
    assert_eq!(ga.report.fitness.value(), Some(-best.total_cost));
}

#[test]
fn single_edge_oracle_by_hand() {
    // one edge site, no fog: with 3 users of 0.5 GHz total demand one server
    // suffices; cost 500 + (sc + ac) * 100 is minimized by sc = 1, and the
    // ac term trades cost against interference
    let scn = generate(&ScenarioConfig {
        n_edge_candidates: 2,
        n_fog_candidates: 0,
        n_users: 3,
        seed: 1,
        ..Default::default()
    })
    .unwrap();
    let lattice = Lattice { edge_sc: vec![0, 1, 2], fog_sc: vec![0], ac: vec![1, 2, 3] };
    let demand: f64 = scn.tasks.iter().map(|t| t.freq_hz).sum();
    assert!(demand <= 0.5e9);

    let (dep, rep) = exhaustive_oracle(&scn, 0.0, &lattice).unwrap();
    assert_eq!(rep.total_cost, 700.0);
    // lexicographic tie-break: site 0 dormant, site 1 placed beats the reverse
    let expect = Deployment {
        edge_genes: vec![EdgeGene::dormant(0), EdgeGene::placed(1, 1, 1)],
        fog_genes: Vec::<FogGene>::new(),
    };
    assert_eq!(dep, expect);
}

#[test]
fn oracle_reports_empty_and_infeasible_lattices() {
    let scn = tiny_scenario(2);
    let none = Lattice { edge_sc: vec![0], fog_sc: vec![0], ac: vec![1] };
    assert_eq!(exhaustive_oracle(&scn, 1.0, &none).unwrap_err(), OracleError::NoFeasible);
    let empty = Lattice { edge_sc: vec![], ..tiny_lattice() };
    assert!(matches!(exhaustive_oracle(&scn, 1.0, &empty), Err(OracleError::Empty(_))));
    let huge = Lattice { edge_sc: (0..40).collect(), ..tiny_lattice() };
    let big = generate(&ScenarioConfig { n_users: 5, ..Default::default() }).unwrap();
    assert!(matches!(exhaustive_oracle(&big, 1.0, &huge), Err(OracleError::TooLarge { .. })));
}
