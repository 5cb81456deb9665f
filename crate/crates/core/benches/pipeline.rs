//! Sequential vs parallel execution of the heavier pipeline stages.

use std::hint::black_box;
use std::time::Duration;

use comtree::clique::maximal_cliques_with;
use comtree::cpm::all_communities;
use comtree::harness::{random_graph, stability_trials, trial_rng, vertex_deletion_sweep, TrialSpec};
use comtree::{Config, Execution, Graph, DEFAULT_CLIQUE_CAP};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn karate() -> Graph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/karate.txt");
    comtree::io::load_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn inputs() -> Vec<(&'static str, Graph)> {
    vec![
        ("karate", karate()),
        ("gnp_120_0.2", random_graph(120, 0.2, &mut trial_rng(1, 0))),
        ("gnp_60_0.5", random_graph(60, 0.5, &mut trial_rng(1, 1))),
    ]
}

fn config(execution: Execution) -> Config {
    Config {
        execution,
        ..Config::default()
    }
}

fn bench_cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_cliques");
    for (name, g) in inputs() {
        for (mode, execution) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| maximal_cliques_with(black_box(g), DEFAULT_CLIQUE_CAP, execution).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_communities(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_communities");
    for (name, g) in inputs() {
        for (mode, execution) in MODES {
            let config = config(execution);
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| all_communities(black_box(g), &config).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_harness(c: &mut Criterion) {
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    let spec = TrialSpec {
        n: 12,
        p: 0.5,
        max_hubs: 3,
        flip: 0.5,
    };
    let g = karate();
    for (mode, execution) in MODES {
        let config = config(execution);
        group.bench_function(BenchmarkId::new("stability_trials_64", mode), |b| {
            b.iter(|| stability_trials(spec, 64, 7, &config).unwrap())
        });
        group.bench_function(BenchmarkId::new("karate_deletion_sweep", mode), |b| {
            b.iter(|| vertex_deletion_sweep(black_box(&g), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().warm_up_time(Duration::from_millis(500)).measurement_time(Duration::from_secs(2));
    targets = bench_cliques, bench_communities, bench_harness
}
criterion_main!(benches);
