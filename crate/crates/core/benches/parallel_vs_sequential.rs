// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geonet::profile::distance_profile_with;
use geonet::reliability::{monte_carlo_reliability_with, pair_polynomials_with, FailureParams};
use geonet::synthesis::{synthesize_with, SynthesisQuery};
use geonet::{generate, Exec, FamilySpec, Graph};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn graph(spec: FamilySpec) -> Graph {
    generate(&spec).unwrap().as_graph().unwrap().clone()
}

fn profiles(c: &mut Criterion) {
    let g = graph(FamilySpec::ChordalRing { n: 512, c: 63 });
    let mut group = c.benchmark_group("distance_profile");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "chordal_ring:512,63"), |b| {
            b.iter(|| distance_profile_with(black_box(&g), exec))
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let g = graph(FamilySpec::Petersen);
    let fp = FailureParams {
        q2: Some(0.1),
        trials: 50_000,
        ..FailureParams::default()
    };
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "petersen"), |b| {
            b.iter(|| monte_carlo_reliability_with(black_box(&g), &fp, exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let g = graph(FamilySpec::ChordalRing { n: 12, c: 3 });
    let mut group = c.benchmark_group("pair_polynomials");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "chordal_ring:12,3"), |b| {
            b.iter(|| pair_polynomials_with(black_box(&g), exec).unwrap())
        });
    }
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let mut q = SynthesisQuery::new((10, 40), 6);
    q.k_max = Some(4);
    let mut group = c.benchmark_group("synthesis");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "n10-40"), |b| {
            b.iter(|| synthesize_with(black_box(&q), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, profiles, monte_carlo, enumeration, synthesis);
criterion_main!(benches);
