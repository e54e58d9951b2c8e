// SPDX-License-Identifier: Apache-2.0

//! All-pairs hop distances and geodesic counts.

use std::collections::VecDeque;

use serde::Serialize;

use crate::exec::Exec;
use crate::graph::{Graph, Topology};

/// Distances, geodesic multiplicities and the derived eccentricity data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceProfile {
    pub n: usize,
    pub dist: Vec<Vec<u32>>,
    /// Number of distinct shortest paths per pair; `sigma[i][i] = 1`.
    pub sigma: Vec<Vec<u64>>,
    pub eccentricity: Vec<u32>,
    pub diameter: u32,
    pub radius: u32,
    pub centers: Vec<usize>,
    /// `pair_counts[l]`: ordered pairs at distance exactly `l`; index 0 is unused.
    pub pair_counts: Vec<u64>,
    /// Set for the shared-bus pseudo topology.
    pub shared_medium: bool,
    /// A geodesic count exceeded `u64::MAX` and was clamped.
    pub saturated: bool,
}

impl DistanceProfile {
    /// Average per-source reach `R(l)`: ordered pairs at distance `l` over `n`.
    pub fn reach(&self, l: u32) -> f64 {
        self.pair_counts.get(l as usize).copied().unwrap_or(0) as f64 / self.n as f64
    }

    /// `R(1), ..., R(d)`.
    pub fn reach_histogram(&self) -> Vec<f64> {
        (1..=self.diameter).map(|l| self.reach(l)).collect()
    }

    /// Sum of `dist(i, j)` over ordered pairs.
    pub fn distance_sum(&self) -> u64 {
        self.pair_counts
            .iter()
            .enumerate()
            .map(|(l, &c)| l as u64 * c)
            .sum()
    }

    /// Largest geodesic multiplicity over distinct pairs (1 when `n = 1`).
    pub fn max_sigma(&self) -> u64 {
        let mut best = 1;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.max(self.sigma[i][j]);
            }
        }
        best
    }

    /// Breadth-first layers around the first center.
    pub fn hierarchy_layers(&self) -> Vec<Vec<usize>> {
        let root = self.centers.first().copied().unwrap_or(0);
        let mut layers = vec![Vec::new(); self.eccentricity[root] as usize + 1];
        for (v, &d) in self.dist[root].iter().enumerate() {
            layers[d as usize].push(v);
        }
        layers
    }
}

struct SourceRow {
    dist: Vec<u32>,
    sigma: Vec<u64>,
    saturated: bool,
}

fn bfs_counts(g: &Graph, source: usize) -> SourceRow {
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0u64; n];
    let mut saturated = false;
    let mut queue = VecDeque::with_capacity(n);
    dist[source] = 0;
    sigma[source] = 1;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = next;
                queue.push_back(v);
            }
            if dist[v] == next {
                // every predecessor on the previous layer contributes its paths
                sigma[v] = match sigma[v].checked_add(sigma[u]) {
                    Some(s) => s,
                    None => {
                        saturated = true;
                        u64::MAX
                    }
                };
            }
        }
    }
    SourceRow {
        dist,
        sigma,
        saturated,
    }
}

/// Geodesic traffic through each structural edge when every ordered pair
/// exchanges one message split evenly over its geodesics. Entry `e` matches
/// `g.edges()[e]`; the loads sum to the total ordered-pair distance.
pub fn edge_loads(g: &Graph) -> Vec<f64> {
    edge_loads_with(g, Exec::default())
}

pub fn edge_loads_with(g: &Graph, exec: Exec) -> Vec<f64> {
    let edges = g.edges();
    let per_source = exec.map(0..g.n(), |s| {
        let row = bfs_counts(g, s);
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(row.dist[v]));
        // dependency of s on each vertex, accumulated farthest layer first
        let mut dependency = vec![0.0f64; g.n()];
        let mut load = vec![0.0f64; edges.len()];
        for &w in &order {
            for &v in g.neighbors(w) {
                if row.dist[v] + 1 == row.dist[w] {
                    let share = row.sigma[v] as f64 / row.sigma[w] as f64 * (1.0 + dependency[w]);
                    dependency[v] += share;
                    let e = edges
                        .binary_search(&(v.min(w), v.max(w)))
                        .expect("neighbour pair is an edge");
                    load[e] += share;
                }
            }
        }
        load
    });
    let mut total = vec![0.0f64; edges.len()];
    for load in per_source {
        for (t, x) in total.iter_mut().zip(load) {
            *t += x;
        }
    }
    total
}

pub fn distance_profile(g: &Graph) -> DistanceProfile {
    distance_profile_with(g, Exec::default())
}

/// Runs one breadth-first search per source under `exec`.
pub fn distance_profile_with(g: &Graph, exec: Exec) -> DistanceProfile {
    let rows = exec.map(0..g.n(), |s| bfs_counts(g, s));
    let saturated = rows.iter().any(|r| r.saturated);
    let (dist, sigma): (Vec<_>, Vec<_>) = rows.into_iter().map(|r| (r.dist, r.sigma)).unzip();
    assemble(dist, sigma, false, saturated)
}

/// The bus profile: every pair one hop apart over the single shared channel.
pub fn bus_profile(n: usize) -> DistanceProfile {
    let dist = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i != j)).collect())
        .collect();
    let sigma = vec![vec![1; n]; n];
    assemble(dist, sigma, true, false)
}

/// Profile of either topology kind.
pub fn topology_profile(t: &Topology) -> DistanceProfile {
    match t {
        Topology::Network(g) => distance_profile(g),
        Topology::Bus { n } => bus_profile(*n),
    }
}

fn assemble(
    dist: Vec<Vec<u32>>,
    sigma: Vec<Vec<u64>>,
    shared_medium: bool,
    saturated: bool,
) -> DistanceProfile {
    let n = dist.len();
    let eccentricity: Vec<u32> = dist
        .iter()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect();
    let diameter = eccentricity.iter().copied().max().unwrap_or(0);
    let radius = eccentricity.iter().copied().min().unwrap_or(0);
    let centers = (0..n).filter(|&v| eccentricity[v] == radius).collect();
    let mut pair_counts = vec![0u64; diameter as usize + 1];
    for row in &dist {
        for &d in row.iter().filter(|&&d| d > 0) {
            pair_counts[d as usize] += 1;
        }
    }
    DistanceProfile {
        n,
        dist,
        sigma,
        eccentricity,
        diameter,
        radius,
        centers,
        pair_counts,
        shared_medium,
        saturated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, FamilySpec};

    fn graph(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap().as_graph().unwrap().clone()
    }

    #[test]
    fn petersen_is_diameter_two_and_unique() {
        let p = distance_profile(&graph(FamilySpec::Petersen));
        assert_eq!((p.diameter, p.radius), (2, 2));
        assert_eq!(p.centers.len(), 10);
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(p.sigma[i][j], 1);
            }
        }
        assert_eq!(p.reach_histogram(), vec![3.0, 6.0]);
    }

    #[test]
    fn complete_graph_is_one_hop() {
        let p = distance_profile(&graph(FamilySpec::Complete { n: 6 }));
        assert_eq!(p.diameter, 1);
        assert_eq!(p.max_sigma(), 1);
        assert_eq!(p.distance_sum(), 30);
    }

    #[test]
    fn even_cycle_antipodes() {
        let p = distance_profile(&graph(FamilySpec::Ring { n: 6 }));
        assert_eq!(p.dist[0][3], 3);
        assert_eq!(p.sigma[0][3], 2);
        assert_eq!(p.sigma[0][2], 1);
    }

    #[test]
    fn multiplicity_does_not_change_distances() {
        let a = distance_profile(&graph(FamilySpec::Ring { n: 7 }));
        let b = distance_profile(&graph(FamilySpec::DoubleRing { n: 7 }));
        assert_eq!(a.dist, b.dist);
        assert_eq!(a.sigma, b.sigma);
    }

    #[test]
    fn strategies_agree() {
        let g = graph(FamilySpec::ChordalRing { n: 24, c: 5 });
        assert_eq!(
            distance_profile_with(&g, Exec::Sequential),
            distance_profile_with(&g, Exec::Parallel)
        );
    }

    #[test]
    fn ring_edge_loads_are_uniform() {
        let g = graph(FamilySpec::Ring { n: 8 });
        let loads = edge_loads(&g);
        // each edge carries a 1/8 share of the 8 * 16 ordered-pair hops
        for l in &loads {
            assert!((l - 16.0).abs() < 1e-9);
        }
        let p = distance_profile(&g);
        assert!((loads.iter().sum::<f64>() - p.distance_sum() as f64).abs() < 1e-9);
    }

    #[test]
    fn path_edge_loads() {
        let g = crate::graph::build_graph(3, &[(0, 1), (1, 2)], 1).unwrap();
        // pairs through edge 0-1: (0,1), (0,2), both directions
        assert_eq!(edge_loads(&g), vec![4.0, 4.0]);
    }

    #[test]
    fn bus_is_flat() {
        let p = bus_profile(5);
        assert!(p.shared_medium);
        assert_eq!(p.diameter, 1);
        assert_eq!(p.pair_counts, vec![0, 20]);
    }

    #[test]
    fn hierarchy_from_center() {
        let g = graph(FamilySpec::PetersenHomeomorph { t: 2 });
        let p = distance_profile(&g);
        let layers = p.hierarchy_layers();
        assert_eq!(layers.len() as u32, p.radius + 1);
        assert_eq!(layers.iter().map(Vec::len).sum::<usize>(), g.n());
    }
}
