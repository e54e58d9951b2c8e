// SPDX-License-Identifier: Apache-2.0

//! Failure probability of a network.
//!
//! Three estimators of the worst-pair disconnection probability
//! `Q = max_{i != j} Q_ij` are provided:
//!
//! * the asymptotic channel-failure model `Q2(l)`, a piecewise function of
//!   the excess channel count `l = m - n`;
//! * Monte Carlo over independent channel and node failures;
//! * exact enumeration of failure states for small graphs.
//!
//! Node failures never hit the pair under test: `Q_ij` is conditioned on
//! both endpoints being up.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{chunk_bounds, Exec};
use crate::generators::{
    find_geodetic_subdivision, generate, FamilySpec, SubdivisionOutcome, DEFAULT_SUBDIVISION_BUDGET,
};
use crate::geodetics::is_geodetic;
use crate::graph::Graph;
use crate::profile::distance_profile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReliabilityError {
    #[error("probability {name} must lie in [0, 1] (got {value})")]
    BadProbability { name: &'static str, value: f64 },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("exact enumeration limited to {limit} (graph has n={n}, m={m})")]
    InstanceTooLarge {
        n: usize,
        m: usize,
        limit: &'static str,
    },
    #[error("l_max={l_max} exceeds (n-3)*n/2 = {bound}")]
    CurveTooLong { l_max: usize, bound: usize },
    #[error("subdivision depth {0} outside 0..=3")]
    BadDepth(usize),
    #[error("no geodetic subdivision of depth {0} found")]
    GateFailed(usize),
    #[error("pairwise reliability needs at least two nodes")]
    TooFewNodes,
}

pub const DEFAULT_TRIALS: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FailureParams {
    /// Node failure probability.
    pub q1: f64,
    /// Channel failure probability; `None` means `1 / m`.
    pub q2: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for FailureParams {
    fn default() -> Self {
        FailureParams {
            q1: 0.0,
            q2: None,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

impl FailureParams {
    pub fn validate(&self) -> Result<(), ReliabilityError> {
        check_probability("q1", self.q1)?;
        if let Some(q2) = self.q2 {
            check_probability("q2", q2)?;
        }
        if self.trials == 0 {
            return Err(ReliabilityError::NoTrials);
        }
        Ok(())
    }

    /// Channel failure probability for a network with `channels` channels.
    pub fn q2_for(&self, channels: usize) -> f64 {
        self.q2.unwrap_or(1.0 / channels as f64)
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<(), ReliabilityError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ReliabilityError::BadProbability { name, value })
    }
}

/// Segment of the asymptotic model that applies at a given `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "segment", rename_all = "snake_case")]
pub enum AsymptoticSegment {
    /// `l = 0`: `(n q2 / 2)^2`.
    Ring,
    /// `0 < l < n/5`: `2 (n q2 / 6l)^2`, held at or above the plateau.
    Sparse,
    /// `n/5 <= l < n/2`: `2 q2^2`.
    Plateau,
    /// `l >= n/2`: `2 q2^(i+1)`, `i = floor(2l/n)` capped at `n - 3`.
    Jump { i: u32 },
}

pub fn asymptotic_segment(n: usize, l: usize) -> AsymptoticSegment {
    if l == 0 {
        AsymptoticSegment::Ring
    } else if 2 * l >= n {
        let cap = n.saturating_sub(3).max(1);
        AsymptoticSegment::Jump {
            i: (2 * l / n).min(cap) as u32,
        }
    } else if 5 * l >= n {
        AsymptoticSegment::Plateau
    } else {
        AsymptoticSegment::Sparse
    }
}

/// Asymptotic failure probability `Q2(l)` of an `[n, n + l]` network with
/// channel failure probability `q2`, all order constants set to 1.
pub fn asymptotic_q2(n: usize, l: usize, q2: f64) -> f64 {
    let nf = n as f64;
    let plateau = 2.0 * q2 * q2;
    match asymptotic_segment(n, l) {
        AsymptoticSegment::Ring => (nf * q2 / 2.0).powi(2),
        AsymptoticSegment::Sparse => {
            let sparse = 2.0 * (nf * q2 / (6.0 * l as f64)).powi(2);
            // for n/6 < l < n/5 the raw formula dips below the plateau it precedes
            sparse.max(plateau)
        }
        AsymptoticSegment::Plateau => plateau,
        AsymptoticSegment::Jump { i } => 2.0 * q2.powi(i as i32 + 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub l: usize,
    pub q: f64,
}

/// `Q2(l)` for every integer `l` in `0..=l_max`.
pub fn reliability_curve(
    n: usize,
    q2: f64,
    l_max: usize,
) -> Result<Vec<CurvePoint>, ReliabilityError> {
    check_probability("q2", q2)?;
    let bound = n.saturating_sub(3) * n / 2;
    if l_max > bound {
        return Err(ReliabilityError::CurveTooLong { l_max, bound });
    }
    Ok((0..=l_max)
        .map(|l| CurvePoint {
            l,
            q: asymptotic_q2(n, l, q2),
        })
        .collect())
}

/// Reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Reliability and additional relative cost of one Petersen homeomorph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomeomorphRow {
    pub t: usize,
    pub diameter: u32,
    pub n: usize,
    pub m: usize,
    pub q2: f64,
    pub q: f64,
    pub p: f64,
    /// `p` cut (not rounded) to four decimals.
    pub p_4dp: f64,
    /// `A(n, l) / delta = l / n`.
    pub a_over_delta: Ratio,
    /// The spoke subdivision failed the geodetic gate and the search
    /// supplied the graph instead.
    pub fallback_used: bool,
}

/// Truncates to four decimals, tolerating representation error just below
/// a four-decimal boundary.
pub fn truncate_4dp(x: f64) -> f64 {
    (x * 1e4 + 1e-7).floor() / 1e4
}

pub fn homeomorph_row(t: usize) -> Result<HomeomorphRow, ReliabilityError> {
    if t > 3 {
        return Err(ReliabilityError::BadDepth(t));
    }
    let spec = FamilySpec::PetersenHomeomorph { t };
    let candidate = generate(&spec)
        .ok()
        .and_then(|topo| topo.as_graph().cloned())
        .ok_or(ReliabilityError::GateFailed(t))?;
    let (g, fallback_used) = if is_geodetic(&candidate) {
        (candidate, false)
    } else {
        let petersen = generate(&FamilySpec::Petersen)
            .ok()
            .and_then(|topo| topo.as_graph().cloned())
            .ok_or(ReliabilityError::GateFailed(t))?;
        match find_geodetic_subdivision(&petersen, t, DEFAULT_SUBDIVISION_BUDGET) {
            Ok(SubdivisionOutcome::Found { graph, .. }) => (graph, true),
            _ => return Err(ReliabilityError::GateFailed(t)),
        }
    };
    let n = g.n();
    let m = g.channel_count();
    let l = m - n;
    let q2 = 1.0 / m as f64;
    let q = asymptotic_q2(n, l, q2);
    let p = 1.0 - q;
    Ok(HomeomorphRow {
        t,
        diameter: distance_profile(&g).diameter,
        n,
        m,
        q2,
        q,
        p,
        p_4dp: truncate_4dp(p),
        a_over_delta: Ratio::new(l as u64, n as u64),
        fallback_used,
    })
}

/// The four homeomorph rows for `t = 0..=3`.
pub fn homeomorph_table() -> Result<Vec<HomeomorphRow>, ReliabilityError> {
    (0..=3).map(homeomorph_row).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Asymptotic,
    MonteCarlo,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityReport {
    pub topology: String,
    pub method: Method,
    pub n: usize,
    pub channels: usize,
    pub q1: f64,
    pub q2: f64,
    pub segment: AsymptoticSegment,
    pub q_asymptotic: f64,
    /// Worst-pair estimate from Monte Carlo or enumeration.
    pub q_pairwise: Option<f64>,
    pub witness: Option<(usize, usize)>,
    /// Headline failure probability (pairwise when available).
    pub q: f64,
    pub p: f64,
    pub stderr: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl ReliabilityReport {
    fn base(g: &Graph, method: Method, q1: f64, q2: f64) -> Self {
        let n = g.n();
        let l = g.excess_channels().max(0) as usize;
        let segment = asymptotic_segment(n, l);
        let q_asymptotic = asymptotic_q2(n, l, q2);
        let mut notes = Vec::new();
        if segment == (AsymptoticSegment::Jump { i: 1 }) {
            notes.push("first jump at l = n/2 has the plateau value 2*q2^2".to_string());
        }
        ReliabilityReport {
            topology: g.label(),
            method,
            n,
            channels: g.channel_count(),
            q1,
            q2,
            segment,
            q_asymptotic,
            q_pairwise: None,
            witness: None,
            q: q_asymptotic,
            p: 1.0 - q_asymptotic,
            stderr: None,
            trials: None,
            seed: None,
            notes,
        }
    }

    fn with_pairwise(mut self, q: f64, witness: (usize, usize)) -> Self {
        self.q_pairwise = Some(q);
        self.witness = Some(witness);
        self.q = q;
        self.p = 1.0 - q;
        self
    }
}

/// Asymptotic-only report; `q2` defaults to `1/m`.
pub fn asymptotic_report(
    g: &Graph,
    fp: &FailureParams,
) -> Result<ReliabilityReport, ReliabilityError> {
    fp.validate()?;
    Ok(ReliabilityReport::base(
        g,
        Method::Asymptotic,
        fp.q1,
        fp.q2_for(g.channel_count()),
    ))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Worst pair by probability; ties go to the lexicographically first pair.
fn worst_pair(pairs: &[(usize, usize)], q: &[f64]) -> (f64, (usize, usize)) {
    let mut best = 0;
    for k in 1..q.len() {
        if q[k] > q[best] {
            best = k;
        }
    }
    (q[best], pairs[best])
}

const TRIAL_CHUNK: usize = 2048;

/// Disconnection counts per pair for one block of trials.
fn simulate_block(
    g: &Graph,
    pairs: &[(usize, usize)],
    trials: std::ops::Range<usize>,
    q1: f64,
    q2: f64,
    seed: u64,
) -> Vec<u64> {
    let n = g.n();
    let edges = g.edges();
    let mut counts = vec![0u64; pairs.len()];
    let mut dsu = Dsu::new(n);
    let mut alive = vec![true; n];
    let mut up = vec![true; edges.len()];
    let mut reach: Vec<Vec<usize>> = vec![Vec::new(); n];
    for trial in trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        if q1 > 0.0 {
            for a in alive.iter_mut() {
                *a = rng.random::<f64>() >= q1;
            }
        }
        for u in up.iter_mut() {
            *u = rng.random::<f64>() >= q2;
        }

        dsu.reset();
        for (e, &(u, v)) in edges.iter().enumerate() {
            if up[e] && alive[u] && alive[v] {
                dsu.union(u, v);
            }
        }
        if q1 == 0.0 {
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if dsu.find(i) != dsu.find(j) {
                    counts[k] += 1;
                }
            }
            continue;
        }

        // components a node can enter when it is forced up
        for (x, r) in reach.iter_mut().enumerate() {
            r.clear();
            if alive[x] {
                r.push(dsu.find(x));
            }
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if !up[e] {
                continue;
            }
            if !alive[u] && alive[v] {
                let c = dsu.find(v);
                reach[u].push(c);
            }
            if !alive[v] && alive[u] {
                let c = dsu.find(u);
                reach[v].push(c);
            }
        }
        for r in reach.iter_mut() {
            r.sort_unstable();
            r.dedup();
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let direct = !alive[i]
                && !alive[j]
                && edges.binary_search(&(i, j)).map(|e| up[e]).unwrap_or(false);
            let shared = reach[i].iter().any(|c| reach[j].binary_search(c).is_ok());
            if !(direct || shared) {
                counts[k] += 1;
            }
        }
    }
    counts
}

pub fn monte_carlo_reliability(
    g: &Graph,
    fp: &FailureParams,
) -> Result<ReliabilityReport, ReliabilityError> {
    monte_carlo_reliability_with(g, fp, Exec::default())
}

/// Estimates `max Q_ij` by simulation.
///
/// Trial `k` draws from its own ChaCha stream keyed by `(seed, k)`, so the
/// estimate does not depend on how trials are scheduled.
pub fn monte_carlo_reliability_with(
    g: &Graph,
    fp: &FailureParams,
    exec: Exec,
) -> Result<ReliabilityReport, ReliabilityError> {
    fp.validate()?;
    if g.n() < 2 {
        return Err(ReliabilityError::TooFewNodes);
    }
    let q2 = fp.q2_for(g.channel_count());
    let pairs = pair_list(g.n());
    let blocks = chunk_bounds(fp.trials, TRIAL_CHUNK);
    let q_link = link_failure(g, q2);
    let partials = exec.map_slice(&blocks, |block| {
        simulate_block(g, &pairs, block.clone(), fp.q1, q_link, fp.seed)
    });
    let mut totals = vec![0u64; pairs.len()];
    for part in partials {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    let trials = fp.trials as f64;
    let q: Vec<f64> = totals.iter().map(|&c| c as f64 / trials).collect();
    let (worst, witness) = worst_pair(&pairs, &q);

    let mut report =
        ReliabilityReport::base(g, Method::MonteCarlo, fp.q1, q2).with_pairwise(worst, witness);
    report.stderr = Some((worst * (1.0 - worst) / trials).sqrt());
    report.trials = Some(fp.trials);
    report.seed = Some(fp.seed);
    Ok(report)
}

/// A link of `k` parallel channels is cut only when all `k` fail.
fn link_failure(g: &Graph, q2: f64) -> f64 {
    q2.powi(g.multiplicity() as i32)
}

pub const EXACT_MAX_EDGES: usize = 20;
pub const EXACT_MAX_NODES: usize = 20;
pub const EXACT_MAX_NODES_WITH_NODE_FAILURES: usize = 12;

/// Two-terminal unreliability polynomials for every pair under channel
/// failures only.
///
/// `counts[k][f]` is the number of channel-failure states with exactly `f`
/// failed channels that disconnect pair `pairs[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPolynomials {
    pub m: usize,
    pub pairs: Vec<(usize, usize)>,
    pub counts: Vec<Vec<u64>>,
}

impl PairPolynomials {
    /// `Q_ij` at channel failure probability `q2`.
    pub fn evaluate(&self, q2: f64) -> Vec<f64> {
        let weights: Vec<f64> = (0..=self.m)
            .map(|f| q2.powi(f as i32) * (1.0 - q2).powi((self.m - f) as i32))
            .collect();
        self.counts
            .iter()
            .map(|row| row.iter().zip(&weights).map(|(&c, w)| c as f64 * w).sum())
            .collect()
    }

    /// `max Q_ij` and the pair attaining it.
    pub fn worst(&self, q2: f64) -> (f64, (usize, usize)) {
        worst_pair(&self.pairs, &self.evaluate(q2))
    }
}

fn check_exact_size(g: &Graph, node_failures: bool) -> Result<(), ReliabilityError> {
    let (n, m) = (g.n(), g.m());
    if m > EXACT_MAX_EDGES || n > EXACT_MAX_NODES {
        return Err(ReliabilityError::InstanceTooLarge {
            n,
            m,
            limit: "n <= 20 and m <= 20",
        });
    }
    if node_failures && n > EXACT_MAX_NODES_WITH_NODE_FAILURES {
        return Err(ReliabilityError::InstanceTooLarge {
            n,
            m,
            limit: "n <= 12 when nodes can fail",
        });
    }
    if n < 2 {
        return Err(ReliabilityError::TooFewNodes);
    }
    Ok(())
}

const MASK_CHUNK: usize = 1 << 12;

pub fn pair_polynomials(g: &Graph) -> Result<PairPolynomials, ReliabilityError> {
    pair_polynomials_with(g, Exec::default())
}

/// Enumerates all `2^m` channel-failure states.
pub fn pair_polynomials_with(g: &Graph, exec: Exec) -> Result<PairPolynomials, ReliabilityError> {
    check_exact_size(g, false)?;
    let (n, m) = (g.n(), g.m());
    let edges = g.edges();
    let pairs = pair_list(n);
    let blocks = chunk_bounds(1 << m, MASK_CHUNK);
    let partials = exec.map_slice(&blocks, |block| {
        let mut counts = vec![0u64; pairs.len() * (m + 1)];
        let mut dsu = Dsu::new(n);
        for failed in block.clone() {
            dsu.reset();
            for (e, &(u, v)) in edges.iter().enumerate() {
                if failed & (1 << e) == 0 {
                    dsu.union(u, v);
                }
            }
            let f = (failed as u32).count_ones() as usize;
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if dsu.find(i) != dsu.find(j) {
                    counts[k * (m + 1) + f] += 1;
                }
            }
        }
        counts
    });
    let mut flat = vec![0u64; pairs.len() * (m + 1)];
    for part in partials {
        for (t, c) in flat.iter_mut().zip(part) {
            *t += c;
        }
    }
    let counts = flat.chunks(m + 1).map(<[u64]>::to_vec).collect();
    Ok(PairPolynomials { m, pairs, counts })
}

fn exact_with_node_failures(g: &Graph, q1: f64, q2: f64, exec: Exec) -> Vec<f64> {
    let n = g.n();
    let edges = g.edges();
    let pairs = pair_list(n);
    let blocks = chunk_bounds(1 << n, 64);
    let partials = exec.map_slice(&blocks, |block| {
        let mut q = vec![0.0f64; pairs.len()];
        let mut dsu = Dsu::new(n);
        for down in block.clone() {
            let alive = |v: usize| down & (1 << v) == 0;
            let live_edges: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|&(u, v)| alive(u) && alive(v))
                .collect();
            let live_pairs: Vec<usize> = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| alive(i) && alive(j))
                .map(|(k, _)| k)
                .collect();
            if live_pairs.is_empty() {
                continue;
            }
            let others_down = (down as u32).count_ones() as i32;
            let others_up = n as i32 - 2 - others_down;
            let node_weight = q1.powi(others_down) * (1.0 - q1).powi(others_up);
            if node_weight == 0.0 {
                continue;
            }
            let me = live_edges.len();
            for failed in 0usize..(1 << me) {
                dsu.reset();
                for (e, &(u, v)) in live_edges.iter().enumerate() {
                    if failed & (1 << e) == 0 {
                        dsu.union(u, v);
                    }
                }
                let f = failed.count_ones() as i32;
                let w = node_weight * q2.powi(f) * (1.0 - q2).powi(me as i32 - f);
                for &k in &live_pairs {
                    let (i, j) = pairs[k];
                    if dsu.find(i) != dsu.find(j) {
                        q[k] += w;
                    }
                }
            }
        }
        q
    });
    let mut q = vec![0.0; pairs.len()];
    for part in partials {
        for (t, x) in q.iter_mut().zip(part) {
            *t += x;
        }
    }
    q
}

pub fn exact_pairwise_q(
    g: &Graph,
    q1: f64,
    q2: f64,
) -> Result<ReliabilityReport, ReliabilityError> {
    exact_pairwise_q_with(g, q1, q2, Exec::default())
}

/// Exact `max Q_ij` by enumerating channel (and, when `q1 > 0`, node)
/// failure states.
pub fn exact_pairwise_q_with(
    g: &Graph,
    q1: f64,
    q2: f64,
    exec: Exec,
) -> Result<ReliabilityReport, ReliabilityError> {
    check_probability("q1", q1)?;
    check_probability("q2", q2)?;
    check_exact_size(g, q1 > 0.0)?;
    let q_link = link_failure(g, q2);
    let (worst, witness) = if q1 > 0.0 {
        let q = exact_with_node_failures(g, q1, q_link, exec);
        worst_pair(&pair_list(g.n()), &q)
    } else {
        pair_polynomials_with(g, exec)?.worst(q_link)
    };
    Ok(ReliabilityReport::base(g, Method::Exact, q1, q2).with_pairwise(worst, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use approx::assert_relative_eq;

    fn graph(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap().as_graph().unwrap().clone()
    }

    #[test]
    fn asymptotic_examples() {
        let q2 = 0.013;
        assert_relative_eq!(asymptotic_q2(10, 0, q2), 25.0 * q2 * q2);
        // l = n/5 is already on the plateau
        assert_relative_eq!(
            asymptotic_q2(10, 2, 1.0 / 15.0),
            2.0 / 225.0,
            max_relative = 1e-12
        );
        assert_eq!(asymptotic_segment(30, 2), AsymptoticSegment::Sparse);
        assert_relative_eq!(asymptotic_q2(30, 2, q2), 2.0 * (30.0 * q2 / 12.0).powi(2));
        let q = asymptotic_q2(10, 5, 1.0 / 15.0);
        assert_relative_eq!(q, 2.0 / 225.0, max_relative = 1e-12);
        assert_eq!(truncate_4dp(1.0 - q), 0.9911);
    }

    #[test]
    fn parallel_channels_fail_together() {
        let single = graph(FamilySpec::Ring { n: 5 });
        let double = graph(FamilySpec::DoubleRing { n: 5 });
        let q = 0.2;
        let a = exact_pairwise_q(&double, 0.0, q).unwrap().q;
        let b = exact_pairwise_q(&single, 0.0, q * q).unwrap().q;
        assert_relative_eq!(a, b, max_relative = 1e-12);
        let fp = FailureParams {
            q2: Some(q),
            trials: 20_000,
            ..FailureParams::default()
        };
        let mc = monte_carlo_reliability(&double, &fp).unwrap();
        assert!((mc.q - a).abs() <= 4.0 * mc.stderr.unwrap() + 1e-4);
    }

    #[test]
    fn sparse_segment_never_undercuts_plateau() {
        // n = 60: l = 11 would give 2 (60/66)^2 q2^2 < 2 q2^2 without the hold
        let q2 = 0.01;
        assert_eq!(asymptotic_segment(60, 11), AsymptoticSegment::Sparse);
        assert_relative_eq!(asymptotic_q2(60, 11, q2), 2.0 * q2 * q2);
        assert!(asymptotic_q2(60, 9, q2) > 2.0 * q2 * q2);
    }

    #[test]
    fn jump_exponent_caps() {
        assert_eq!(asymptotic_segment(10, 5), AsymptoticSegment::Jump { i: 1 });
        assert_eq!(asymptotic_segment(10, 10), AsymptoticSegment::Jump { i: 2 });
        assert_eq!(asymptotic_segment(10, 35), AsymptoticSegment::Jump { i: 7 });
        assert_eq!(asymptotic_segment(10, 40), AsymptoticSegment::Jump { i: 7 });
    }

    #[test]
    fn curve_rejects_overlong_range() {
        assert!(reliability_curve(10, 0.1, 35).is_ok());
        assert!(matches!(
            reliability_curve(10, 0.1, 36),
            Err(ReliabilityError::CurveTooLong { bound: 35, .. })
        ));
    }

    #[test]
    fn ratio_reduces() {
        assert_eq!(Ratio::new(5, 15), Ratio { num: 1, den: 3 });
        assert_eq!(Ratio::new(5, 25).to_string(), "1/5");
    }

    #[test]
    fn truncation_handles_exact_boundaries() {
        assert_eq!(truncate_4dp(1.0 - 0.005), 0.995);
        assert_eq!(truncate_4dp(1.0 - 2.0 / 900.0), 0.9977);
    }

    #[test]
    fn nothing_fails() {
        let g = graph(FamilySpec::Petersen);
        let fp = FailureParams {
            q1: 0.0,
            q2: Some(0.0),
            trials: 500,
            ..Default::default()
        };
        let r = monte_carlo_reliability(&g, &fp).unwrap();
        assert_eq!((r.q, r.p), (0.0, 1.0));
        let e = exact_pairwise_q(&g, 0.0, 0.0).unwrap();
        assert_eq!(e.q, 0.0);
    }

    #[test]
    fn single_edge() {
        let k2 = build_graph(2, &[(0, 1)], 1).unwrap();
        let fp = FailureParams {
            q2: Some(0.5),
            trials: 20_000,
            ..Default::default()
        };
        let r = monte_carlo_reliability(&k2, &fp).unwrap();
        assert!((r.q - 0.5).abs() <= 3.0 * r.stderr.unwrap());
        assert_eq!(exact_pairwise_q(&k2, 0.0, 0.5).unwrap().q, 0.5);
    }

    #[test]
    fn triangle_exact() {
        // a pair is cut iff its edge fails and the two-edge detour fails too
        let c3 = graph(FamilySpec::Ring { n: 3 });
        let q = 0.1f64;
        let expect = q * (1.0 - (1.0 - q) * (1.0 - q));
        let r = exact_pairwise_q(&c3, 0.0, q).unwrap();
        assert_relative_eq!(r.q, expect, max_relative = 1e-12);
        assert_relative_eq!(r.q, 0.019, max_relative = 1e-12);
    }

    #[test]
    fn node_failures_exact_and_simulated_agree() {
        let g = graph(FamilySpec::Ring { n: 6 });
        let exact = exact_pairwise_q(&g, 0.1, 0.05).unwrap();
        // path 0-1-2-3 or 0-5-4-3 for the antipodal pair
        let arc = 0.95f64.powi(3) * 0.9f64.powi(2);
        assert_relative_eq!(exact.q, (1.0 - arc).powi(2), max_relative = 1e-12);
        assert_eq!(exact.witness, Some((0, 3)));
        let fp = FailureParams {
            q1: 0.1,
            q2: Some(0.05),
            trials: 40_000,
            seed: 7,
        };
        let mc = monte_carlo_reliability(&g, &fp).unwrap();
        let gap = (mc.q - exact.q).abs();
        assert!(
            gap <= 3.0 * mc.stderr.unwrap() + 1e-3,
            "{} vs {}",
            mc.q,
            exact.q
        );
    }

    #[test]
    fn failed_endpoint_neighbours_bridge() {
        // path 0-1-2 plus 0-2: with node 1 able to fail, pair (0,2) still has the direct edge
        let g = build_graph(3, &[(0, 1), (1, 2), (0, 2)], 1).unwrap();
        let exact = exact_pairwise_q(&g, 0.5, 0.5).unwrap();
        // pair (0,1): direct edge, or 0-2-1 with node 2 up
        let detour = 0.5 * 0.25;
        assert_relative_eq!(exact.q, 0.5 * (1.0 - detour), max_relative = 1e-12);
    }

    #[test]
    fn schedules_agree() {
        let g = graph(FamilySpec::ChordalRing { n: 12, c: 3 });
        let fp = FailureParams {
            q1: 0.02,
            q2: Some(0.1),
            trials: 9_000,
            seed: 3,
        };
        assert_eq!(
            monte_carlo_reliability_with(&g, &fp, Exec::Sequential).unwrap(),
            monte_carlo_reliability_with(&g, &fp, Exec::Parallel).unwrap()
        );
        let k5 = graph(FamilySpec::Complete { n: 5 });
        assert_eq!(
            pair_polynomials_with(&k5, Exec::Sequential).unwrap(),
            pair_polynomials_with(&k5, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn exact_limits() {
        let big = graph(FamilySpec::ChordalRing { n: 16, c: 5 });
        assert!(matches!(
            exact_pairwise_q(&big, 0.0, 0.1),
            Err(ReliabilityError::InstanceTooLarge { .. })
        ));
        let p = graph(FamilySpec::PetersenHomeomorph { t: 1 });
        assert!(exact_pairwise_q(&p, 0.0, 0.1).is_ok());
        assert!(matches!(
            exact_pairwise_q(&p, 0.1, 0.1),
            Err(ReliabilityError::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn polynomial_counts_sum_to_state_space() {
        let g = graph(FamilySpec::Ring { n: 5 });
        let poly = pair_polynomials(&g).unwrap();
        for row in &poly.counts {
            // a ring pair survives only if at most one edge fails, or both
            // failures land on the same arc
            assert_eq!(row[0], 0);
            assert_eq!(row[1], 0);
            assert_eq!(row[5], 1);
        }
    }

    #[test]
    fn table_rows() {
        let rows = homeomorph_table().unwrap();
        let expect = [
            (2, 10, 0.9911, (1, 2)),
            (3, 15, 0.9950, (1, 3)),
            (4, 20, 0.9968, (1, 4)),
            (5, 25, 0.9977, (1, 5)),
        ];
        for (row, (d, n, p, (a, b))) in rows.iter().zip(expect) {
            assert_eq!(row.diameter, d);
            assert_eq!(row.n, n);
            assert_eq!(row.p_4dp, p);
            assert_eq!(row.a_over_delta, Ratio { num: a, den: b });
            assert!(!row.fallback_used);
        }
        assert!(matches!(
            homeomorph_row(4),
            Err(ReliabilityError::BadDepth(4))
        ));
    }

    #[test]
    fn bad_params_rejected() {
        let g = graph(FamilySpec::Petersen);
        let fp = FailureParams {
            q1: 1.5,
            ..Default::default()
        };
        assert!(monte_carlo_reliability(&g, &fp).is_err());
        let fp = FailureParams {
            trials: 0,
            ..Default::default()
        };
        assert_eq!(
            monte_carlo_reliability(&g, &fp),
            Err(ReliabilityError::NoTrials)
        );
    }
}
