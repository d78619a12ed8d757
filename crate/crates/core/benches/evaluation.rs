use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use craft_core::genetic::init_population;
use craft_core::{generate, par, Evaluator, Fitness, GaParams, ScenarioConfig};

fn population_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_population");
    group.sample_size(20);
    for users in [70usize, 170] {
        let scn = generate(&ScenarioConfig { n_users: users, seed: 1, ..Default::default() }).unwrap();
        let eval = Evaluator::new(&scn);
        let pop = init_population(&scn, &GaParams::with_population(1000, 1, 1e5, 1));
        group.bench_with_input(BenchmarkId::new("parallel", users), &pop, |b, pop| {
            b.iter(|| black_box(par::map(pop, |d| eval.evaluate(d, 1e5).fitness)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", users), &pop, |b, pop| {
            b.iter(|| black_box(par::map_seq(pop, |d| eval.evaluate(d, 1e5).fitness)))
        });
    }
    group.finish();
}

fn best_of_range(c: &mut Criterion) {
    // argmax over many candidates, shaped like the oracle's enumeration
    let scn = generate(&ScenarioConfig { n_users: 100, seed: 2, ..Default::default() }).unwrap();
    let eval = Evaluator::new(&scn);
    let pop = init_population(&scn, &GaParams::with_population(2000, 1, 1e5, 2));
    let score = |i: usize| (eval.evaluate(&pop[i], 1e5).fitness, i);
    let pick = |a: (Fitness, usize), b: (Fitness, usize)| if b.0 > a.0 { b } else { a };

    let mut group = c.benchmark_group("argmax_range");
    group.sample_size(20);
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map_reduce_range(pop.len(), score, pick))));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(par::map_reduce_range_seq(pop.len(), score, pick)))
    });
    group.finish();
}

criterion_group!(benches, population_evaluation, best_of_range);
criterion_main!(benches);
