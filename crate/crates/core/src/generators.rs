// SPDX-License-Identifier: Apache-2.0

//! Topology families: the classic structures compared by the cost model,
//! the Petersen graph and its spoke-subdivided homeomorphs, two
//! reconstruction candidates for small bigeodetic instances, and edge-list
//! files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::Exec;
use crate::geodetics::is_geodetic;
use crate::graph::{build_graph, Graph, GraphError, Topology};
use crate::io::{read_edge_list_file, FormatError};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("bad parameter for {family}: {reason}")]
    BadFamilyParam {
        family: &'static str,
        reason: String,
    },
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("base graph is not geodetic")]
    NotGeodetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    Bus {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Ring {
        n: usize,
    },
    DoubleRing {
        n: usize,
    },
    ChordalRing {
        n: usize,
        c: usize,
    },
    Petersen,
    PetersenHomeomorph {
        t: usize,
    },
    WagnerRing,
    /// GP(8,3). Cubic with diameter 4 but 6-geodetic.
    MoebiusKantorCandidate,
    /// 16-ring plus a fixed chord matching: cubic, diameter 4, bigeodetic,
    /// triangle-free and 3-connected.
    BigeodeticRing16,
    FromFile(PathBuf),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Bus { .. } => "bus",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Ring { .. } => "ring",
            FamilySpec::DoubleRing { .. } => "double_ring",
            FamilySpec::ChordalRing { .. } => "chordal_ring",
            FamilySpec::Petersen => "petersen",
            FamilySpec::PetersenHomeomorph { .. } => "petersen_homeomorph",
            FamilySpec::WagnerRing => "wagner_ring",
            FamilySpec::MoebiusKantorCandidate => "moebius_kantor_candidate",
            FamilySpec::BigeodeticRing16 => "bigeodetic_ring16",
            FamilySpec::FromFile(_) => "from_file",
        }
    }

    /// Builds a spec from a family name and its integer parameters.
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Self, GenError> {
        let want = |count: usize, family: &'static str| -> Result<(), GenError> {
            if params.len() == count {
                Ok(())
            } else {
                Err(GenError::BadFamilyParam {
                    family,
                    reason: format!("expected {count} parameter(s), got {}", params.len()),
                })
            }
        };
        let spec = match name {
            "bus" => {
                want(1, "bus")?;
                FamilySpec::Bus { n: params[0] }
            }
            "complete" => {
                want(1, "complete")?;
                FamilySpec::Complete { n: params[0] }
            }
            "ring" => {
                want(1, "ring")?;
                FamilySpec::Ring { n: params[0] }
            }
            "double_ring" => {
                want(1, "double_ring")?;
                FamilySpec::DoubleRing { n: params[0] }
            }
            "chordal_ring" => {
                want(2, "chordal_ring")?;
                FamilySpec::ChordalRing {
                    n: params[0],
                    c: params[1],
                }
            }
            "petersen" => {
                want(0, "petersen")?;
                FamilySpec::Petersen
            }
            "petersen_homeomorph" => {
                want(1, "petersen_homeomorph")?;
                FamilySpec::PetersenHomeomorph { t: params[0] }
            }
            "wagner_ring" => {
                want(0, "wagner_ring")?;
                FamilySpec::WagnerRing
            }
            "moebius_kantor_candidate" => {
                want(0, "moebius_kantor_candidate")?;
                FamilySpec::MoebiusKantorCandidate
            }
            "bigeodetic_ring16" => {
                want(0, "bigeodetic_ring16")?;
                FamilySpec::BigeodeticRing16
            }
            other => return Err(GenError::UnknownFamily(other.to_string())),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            FamilySpec::Bus { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Ring { n }
            | FamilySpec::DoubleRing { n } => write!(f, "{name}:{n}"),
            FamilySpec::ChordalRing { n, c } => write!(f, "{name}:{n},{c}"),
            FamilySpec::PetersenHomeomorph { t } => write!(f, "{name}:{t}"),
            FamilySpec::FromFile(p) => write!(f, "file:{}", p.display()),
            _ => f.write_str(name),
        }
    }
}

/// Parses `name`, `name:p1,p2` or `file:path`.
impl FromStr for FamilySpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        if name == "file" || name == "from_file" {
            return Ok(FamilySpec::FromFile(PathBuf::from(rest)));
        }
        let params = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| GenError::BadFamilyParam {
                        family: "family spec",
                        reason: format!("'{p}' is not a non-negative integer"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        FamilySpec::from_parts(name, &params)
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn bad(family: &'static str, reason: impl Into<String>) -> GenError {
    GenError::BadFamilyParam {
        family,
        reason: reason.into(),
    }
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

/// Generalised Petersen graph GP(n, k): outer n-cycle, spokes, inner star polygon.
fn generalized_petersen(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = cycle_edges(n);
    edges.extend((0..n).map(|i| (i, i + n)));
    edges.extend((0..n).map(|i| (i + n, (i + k) % n + n)));
    edges
}

pub fn generate(spec: &FamilySpec) -> Result<Topology, GenError> {
    let graph = match *spec {
        FamilySpec::Bus { n } => {
            if n < 2 {
                return Err(bad("bus", "n must be at least 2"));
            }
            return Ok(Topology::Bus { n });
        }
        FamilySpec::Complete { n } => {
            if n < 2 {
                return Err(bad("complete", "n must be at least 2"));
            }
            let edges: Vec<_> = (0..n).tuple_combinations().collect();
            build_graph(n, &edges, 1)?
        }
        FamilySpec::Ring { n } => {
            if n < 3 {
                return Err(bad("ring", "n must be at least 3"));
            }
            build_graph(n, &cycle_edges(n), 1)?
        }
        FamilySpec::DoubleRing { n } => {
            if n < 3 {
                return Err(bad("double_ring", "n must be at least 3"));
            }
            build_graph(n, &cycle_edges(n), 2)?
        }
        FamilySpec::ChordalRing { n, c } => {
            if n < 4 || n % 2 == 1 {
                return Err(bad("chordal_ring", "n must be even and at least 4"));
            }
            if c % 2 == 0 || c >= n {
                return Err(bad("chordal_ring", "c must be odd with 1 <= c < n"));
            }
            if c == 1 || c == n - 1 {
                return Err(bad(
                    "chordal_ring",
                    "chords of length 1 or n-1 coincide with ring edges",
                ));
            }
            let mut edges = cycle_edges(n);
            edges.extend((1..n).step_by(2).map(|i| (i, (i + c) % n)));
            build_graph(n, &edges, 1)?
        }
        FamilySpec::Petersen => build_graph(10, &generalized_petersen(5, 2), 1)?,
        FamilySpec::PetersenHomeomorph { t } => {
            if t > 3 {
                return Err(bad("petersen_homeomorph", "t must be in 0..=3"));
            }
            let base = build_graph(10, &generalized_petersen(5, 2), 1)?;
            let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
            subdivide(&base, &spokes, t)?
        }
        FamilySpec::WagnerRing => {
            let mut edges = cycle_edges(8);
            edges.extend((0..4).map(|i| (i, i + 4)));
            build_graph(8, &edges, 1)?
        }
        FamilySpec::MoebiusKantorCandidate => build_graph(16, &generalized_petersen(8, 3), 1)?,
        FamilySpec::BigeodeticRing16 => {
            let mut edges = cycle_edges(16);
            edges.extend(RING16_CHORDS);
            build_graph(16, &edges, 1)?
        }
        FamilySpec::FromFile(ref path) => read_edge_list_file(path)?,
    };
    Ok(Topology::Network(graph.with_family(spec.clone())))
}

// First triangle-free matching, in lexicographic order, that leaves the
// 16-ring with diameter 4 and at most two geodesics per pair.
const RING16_CHORDS: [(usize, usize); 8] = [
    (0, 3),
    (1, 5),
    (2, 14),
    (4, 7),
    (6, 10),
    (8, 11),
    (9, 13),
    (12, 15),
];

/// Replaces each listed edge by a path through `t` new vertices.
///
/// New vertices are numbered from `n` upward, edge by edge in the order given.
pub fn subdivide(g: &Graph, chosen: &[(usize, usize)], t: usize) -> Result<Graph, GraphError> {
    let chosen: Vec<(usize, usize)> = chosen.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| t == 0 || !chosen.contains(e))
        .collect();
    let mut next = g.n();
    if t > 0 {
        for &(u, v) in &chosen {
            let mut prev = u;
            for _ in 0..t {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
    }
    build_graph(next, &edges, g.multiplicity())
}

#[derive(Debug, Clone)]
pub enum SubdivisionOutcome {
    Found {
        graph: Graph,
        subdivided: Vec<(usize, usize)>,
        examined: usize,
    },
    NotFound {
        examined: usize,
    },
}

pub const DEFAULT_SUBDIVISION_BUDGET: usize = 100_000;

fn perfect_matchings(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    fn extend(
        g: &Graph,
        index: &dyn Fn(usize, usize) -> usize,
        matched: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        let Some(u) = matched.iter().position(|&m| !m) else {
            let mut found = current.clone();
            found.sort_unstable();
            out.push(found);
            return;
        };
        matched[u] = true;
        for &v in g.neighbors(u) {
            if !matched[v] {
                matched[v] = true;
                current.push(index(u, v));
                extend(g, index, matched, current, out, cap);
                current.pop();
                matched[v] = false;
            }
        }
        matched[u] = false;
    }

    if g.n() % 2 == 1 {
        return Vec::new();
    }
    let edges = g.edges();
    let index = |u: usize, v: usize| {
        edges
            .binary_search(&(u.min(v), u.max(v)))
            .expect("neighbour pair is an edge")
    };
    let mut out = Vec::new();
    extend(
        g,
        &index,
        &mut vec![false; g.n()],
        &mut Vec::new(),
        &mut out,
        cap,
    );
    out.sort();
    out
}

/// Candidate edge subsets, in search order: perfect matchings first, then
/// every other non-empty subset by size and lexicographically.
fn subdivision_candidates(g: &Graph, budget: usize) -> Vec<Vec<usize>> {
    let mut out = perfect_matchings(g, budget);
    let matchings = out.clone();
    'sizes: for k in 1..=g.m() {
        for combo in (0..g.m()).combinations(k) {
            if out.len() >= budget {
                break 'sizes;
            }
            if k * 2 == g.n() && matchings.binary_search(&combo).is_ok() {
                continue;
            }
            out.push(combo);
        }
    }
    out.truncate(budget);
    out
}

pub fn find_geodetic_subdivision(
    base: &Graph,
    t: usize,
    budget: usize,
) -> Result<SubdivisionOutcome, GenError> {
    find_geodetic_subdivision_with(base, t, budget, Exec::default())
}

/// Searches for edge subsets whose `t`-fold subdivision stays geodetic.
///
/// Returns the first success in candidate order regardless of `exec`.
pub fn find_geodetic_subdivision_with(
    base: &Graph,
    t: usize,
    budget: usize,
    exec: Exec,
) -> Result<SubdivisionOutcome, GenError> {
    if !is_geodetic(base) {
        return Err(GenError::NotGeodetic);
    }
    if t == 0 {
        return Ok(SubdivisionOutcome::Found {
            graph: base.clone(),
            subdivided: Vec::new(),
            examined: 0,
        });
    }
    let candidates = subdivision_candidates(base, budget);
    let edges = base.edges();
    let hit = exec.find_first(0..candidates.len(), |i| {
        let chosen: Vec<_> = candidates[i].iter().map(|&e| edges[e]).collect();
        let g = subdivide(base, &chosen, t).ok()?;
        is_geodetic(&g).then_some((i, g, chosen))
    });
    Ok(match hit {
        Some((i, graph, subdivided)) => SubdivisionOutcome::Found {
            graph,
            subdivided,
            examined: i + 1,
        },
        None => SubdivisionOutcome::NotFound {
            examined: candidates.len(),
        },
    })
}
