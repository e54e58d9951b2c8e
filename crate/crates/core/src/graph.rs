// SPDX-License-Identifier: Apache-2.0

//! Simple undirected connected graphs, the shared-bus pseudo topology, and
//! degree bookkeeping.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::generators::FamilySpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    LoopRejected { vertex: usize },
    #[error("duplicate edge ({u},{v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    BadVertex { vertex: usize, n: usize },
    #[error("channel multiplicity must be positive")]
    BadMultiplicity,
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("degree split needs n >= 2 and m >= n-1 (got n={n}, m={m})")]
    InvalidSplit { n: usize, m: usize },
}

/// A connected simple graph on vertices `0..n`.
///
/// `multiplicity` is a uniform number of parallel channels carried by every
/// edge. It feeds channel counts and channel degrees for the cost model and
/// never affects distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    multiplicity: u32,
    family: Option<FamilySpec>,
}

/// Validates an edge list and builds a [`Graph`].
///
/// Pairs are normalised to `(min, max)`; the stored edge list is sorted.
pub fn build_graph(
    n: usize,
    edge_list: &[(usize, usize)],
    multiplicity: u32,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if multiplicity == 0 {
        return Err(GraphError::BadMultiplicity);
    }
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(u, v) in edge_list {
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::BadVertex { vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::LoopRejected { vertex: u });
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        let (u, v) = w[0];
        return Err(GraphError::DuplicateEdge { u, v });
    }

    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let components = count_components(&adj);
    if components > 1 {
        return Err(GraphError::Disconnected { components });
    }
    Ok(Graph {
        n,
        edges,
        adj,
        multiplicity,
        family: None,
    })
}

fn count_components(adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    components
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Structural edge count `m`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Channel count `m_n = multiplicity * m`.
    pub fn channel_count(&self) -> usize {
        self.multiplicity as usize * self.edges.len()
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    pub fn with_family(mut self, family: FamilySpec) -> Self {
        self.family = Some(family);
        self
    }

    /// Channels in excess of a ring on the same nodes, `l = m_n - n`.
    pub fn excess_channels(&self) -> i64 {
        self.channel_count() as i64 - self.n as i64
    }

    /// Human-readable name: the family label when known.
    pub fn label(&self) -> String {
        match &self.family {
            Some(f) => f.to_string(),
            None => format!("graph(n={},m={})", self.n, self.m()),
        }
    }
}

/// Either a genuine graph, or the shared-medium bus.
///
/// The bus is `n` stations hanging off one channel. It has no simple-graph
/// form: every pair of stations is one hop apart, each station attaches to
/// exactly one channel, and the whole network owns one channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Topology {
    Network(Graph),
    Bus { n: usize },
}

impl Topology {
    pub fn n(&self) -> usize {
        match self {
            Topology::Network(g) => g.n(),
            Topology::Bus { n } => *n,
        }
    }

    pub fn channel_count(&self) -> usize {
        match self {
            Topology::Network(g) => g.channel_count(),
            Topology::Bus { .. } => 1,
        }
    }

    /// Per-node channel degree used by the structure cost. For irregular
    /// graphs this is the mean channel degree `2 m_n / n`.
    pub fn cost_degree(&self) -> f64 {
        match self {
            Topology::Network(g) => 2.0 * g.channel_count() as f64 / g.n() as f64,
            Topology::Bus { .. } => 1.0,
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Topology::Network(g) => Some(g),
            Topology::Bus { .. } => None,
        }
    }

    pub fn is_bus(&self) -> bool {
        matches!(self, Topology::Bus { .. })
    }

    pub fn family(&self) -> Option<FamilySpec> {
        match self {
            Topology::Network(g) => g.family().cloned(),
            Topology::Bus { n } => Some(FamilySpec::Bus { n: *n }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Topology::Network(g) => g.label(),
            Topology::Bus { n } => FamilySpec::Bus { n: *n }.to_string(),
        }
    }
}

impl From<Graph> for Topology {
    fn from(g: Graph) -> Self {
        Topology::Network(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeClass {
    Regular {
        k: u32,
    },
    /// `n0` vertices of degree `k` and `n1` of degree `k + 1`.
    Biregular {
        k: u32,
        n0: usize,
        n1: usize,
    },
    Irregular,
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeClass::Regular { k } => write!(f, "regular({k})"),
            DegreeClass::Biregular { k, n0, n1 } => {
                write!(f, "biregular({k}x{n0},{}x{n1})", k + 1)
            }
            DegreeClass::Irregular => f.write_str("irregular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    /// Channel degree per vertex (structural degree times multiplicity).
    pub degrees: Vec<u32>,
    pub min_deg: u32,
    pub max_deg: u32,
    pub multiplicity: u32,
    pub classification: DegreeClass,
}

pub fn degree_summary(g: &Graph) -> DegreeSummary {
    let degrees: Vec<u32> = (0..g.n())
        .map(|v| g.degree(v) as u32 * g.multiplicity())
        .collect();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &d in &degrees {
        *counts.entry(d).or_default() += 1;
    }
    let min_deg = *counts.keys().next().expect("graph has a vertex");
    let max_deg = *counts.keys().next_back().expect("graph has a vertex");
    let classification = match (counts.len(), max_deg - min_deg) {
        (1, _) => DegreeClass::Regular { k: min_deg },
        (2, 1) => DegreeClass::Biregular {
            k: min_deg,
            n0: counts[&min_deg],
            n1: counts[&max_deg],
        },
        _ => DegreeClass::Irregular,
    };
    DegreeSummary {
        degrees,
        min_deg,
        max_deg,
        multiplicity: g.multiplicity(),
        classification,
    }
}

/// Degree split of a biregular network with `n` nodes and `m` channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BiregularSplit {
    /// `floor(2m/n)`.
    pub k: usize,
    /// Vertices of degree `k`.
    pub n0: usize,
    /// Vertices of degree `k + 1`.
    pub n1: usize,
    /// `ceil(2m/n)`, the upper bound on the minimum degree.
    pub min_degree_bound: usize,
}

/// Solves `n0*k + n1*(k+1) = 2m`, `n0 + n1 = n` with `k = floor(2m/n)`.
///
/// The ceiling would leave `n1` negative whenever `n` does not divide `2m`,
/// so the ceiling is only reported as the minimum-degree bound.
pub fn biregular_split(n: usize, m: usize) -> Result<BiregularSplit, GraphError> {
    if n < 2 || m + 1 < n {
        return Err(GraphError::InvalidSplit { n, m });
    }
    let k = 2 * m / n;
    let n1 = 2 * m - n * k;
    Ok(BiregularSplit {
        k,
        n0: n - n1,
        n1,
        min_degree_bound: (2 * m).div_ceil(n),
    })
}
