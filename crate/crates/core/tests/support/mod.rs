#![allow(dead_code)]

pub mod reference;

use craft_core::genetic::draw_deployment;
use craft_core::{generate, Deployment, Scenario, ScenarioConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Small scenario: a handful of edge and fog sites, tight enough capacity
/// that overflow routing happens.
pub fn small_scenario(seed: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    use rand::Rng;
    let cfg = ScenarioConfig {
        n_edge_candidates: rng.gen_range(2..=6),
        n_fog_candidates: rng.gen_range(0..=2),
        n_users: rng.gen_range(3..=30),
        area_side_m: 500.0,
        seed,
        ..Default::default()
    };
    generate(&cfg).unwrap()
}

pub fn random_deployment(scn: &Scenario, seed: u64) -> Deployment {
    draw_deployment(scn, &mut ChaCha8Rng::seed_from_u64(seed))
}
