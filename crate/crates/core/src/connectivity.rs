// SPDX-License-Identifier: Apache-2.0

//! Exact vertex connectivity via unit-capacity max flow on the
//! vertex-split digraph (Menger).

use std::collections::VecDeque;

use crate::exec::Exec;
use crate::graph::Graph;

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent_arc = vec![usize::MAX; self.head.len()];
        while flow < limit {
            parent_arc.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && v != s && parent_arc[v] == usize::MAX {
                        parent_arc[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = parent_arc[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for a
/// non-adjacent pair, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    let big = n as u32;
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let through = if v == s || v == t { big } else { 1 };
        net.arc(2 * v, 2 * v + 1, through);
    }
    for &(u, v) in g.edges() {
        net.arc(2 * u + 1, 2 * v, big);
        net.arc(2 * v + 1, 2 * u, big);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

pub fn vertex_connectivity(g: &Graph) -> usize {
    vertex_connectivity_with(g, Exec::default())
}

/// Size of a minimum vertex cut; `n - 1` for complete graphs.
pub fn vertex_connectivity_with(g: &Graph, exec: Exec) -> usize {
    let n = g.n();
    let min_degree = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.has_edge(s, t))
        .collect();
    if pairs.is_empty() {
        return n.saturating_sub(1);
    }
    exec.map_slice(&pairs, |&(s, t)| local_connectivity(g, s, t, min_degree))
        .into_iter()
        .min()
        .unwrap_or(min_degree)
        .min(min_degree)
}
