// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use geonet::{build_graph, generate, FamilySpec, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_GRAPH_SEED: u64 = 0x6e65_7477_6f72_6b73;

pub fn graph(spec: FamilySpec) -> Graph {
    generate(&spec).unwrap().as_graph().unwrap().clone()
}

pub fn parse(s: &str) -> Graph {
    graph(s.parse().unwrap())
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((parent.min(order[i]), parent.max(order[i])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges, 1).unwrap()
}

/// `count` random connected graphs on 4..=max_n vertices from a fixed seed.
pub fn random_graphs(count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_GRAPH_SEED);
    (0..count)
        .map(|_| {
            let n = rng.random_range(4..=max_n);
            let p = rng.random_range(0.1..0.6);
            random_connected(&mut rng, n, p)
        })
        .collect()
}

/// Every catalog instance with at most `max_n` vertices.
pub fn small_catalog(max_n: usize) -> Vec<Graph> {
    let mut specs = vec![
        FamilySpec::Petersen,
        FamilySpec::PetersenHomeomorph { t: 0 },
        FamilySpec::WagnerRing,
    ];
    for n in 3..=max_n {
        specs.push(FamilySpec::Ring { n });
        specs.push(FamilySpec::DoubleRing { n });
        specs.push(FamilySpec::Complete { n });
        if n % 2 == 0 {
            specs.extend(
                (3..n.saturating_sub(2))
                    .step_by(2)
                    .map(|c| FamilySpec::ChordalRing { n, c }),
            );
        }
    }
    specs
        .into_iter()
        .map(graph)
        .filter(|g| g.n() <= max_n)
        .collect()
}
