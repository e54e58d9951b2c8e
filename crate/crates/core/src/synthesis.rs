// SPDX-License-Identifier: Apache-2.0

//! Selection of topologies from the generator catalog.
//!
//! Every catalog family is instantiated across the requested node range,
//! measured, filtered against the query's constraints, scored on
//! reliability `P`, cost-effectiveness `chi` and additional relative cost
//! `A`, and ranked.

use std::cmp::Ordering;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::vertex_connectivity;
use crate::economics::{
    additional_relative_cost, effectiveness_from_profile, CostParams, EconError,
};
use crate::exec::Exec;
use crate::generators::{generate, FamilySpec};
use crate::geodetics::{classify, GeodeticLabel};
use crate::graph::{degree_summary, DegreeClass, Topology};
use crate::profile::distance_profile;
use crate::reliability::{asymptotic_q2, FailureParams, ReliabilityError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error("empty node range [{0}, {1}]")]
    EmptyRange(usize, usize),
    #[error("d_max must be at least 1")]
    BadDiameter,
    #[error("delta must be strictly positive")]
    BadDelta,
    #[error(transparent)]
    Cost(#[from] EconError),
    #[error(transparent)]
    Failure(#[from] ReliabilityError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankingPolicy {
    #[default]
    /// `P` descending, then `chi` descending, then `A` ascending.
    Lexicographic,
    /// `w_p * P + w_chi * chi/chi_max - w_a * A/A_max`, descending.
    Weighted {
        reliability: f64,
        effectiveness: f64,
        cost: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisQuery {
    /// Inclusive node-count bounds.
    pub n_range: (usize, usize),
    pub d_max: u32,
    /// Bound on the channel degree of every node.
    #[serde(default)]
    pub k_max: Option<u32>,
    /// Largest admissible geodesic multiplicity; 0 leaves it free.
    #[serde(default)]
    pub geodeticity_max: u64,
    /// Cost ratio for `A`; defaults to `c2 / c1` of the cost parameters.
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub cost_params: CostParams,
    #[serde(default)]
    pub failure_params: FailureParams,
    #[serde(default)]
    pub policy: RankingPolicy,
    /// Extra candidates read from edge-list files.
    #[serde(default)]
    pub files: Vec<PathBuf>,
}

impl SynthesisQuery {
    pub fn new(n_range: (usize, usize), d_max: u32) -> Self {
        SynthesisQuery {
            n_range,
            d_max,
            k_max: None,
            geodeticity_max: 0,
            delta: None,
            cost_params: CostParams::default(),
            failure_params: FailureParams::default(),
            policy: RankingPolicy::default(),
            files: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), SynthesisError> {
        let (lo, hi) = self.n_range;
        if lo > hi || hi == 0 {
            return Err(SynthesisError::EmptyRange(lo, hi));
        }
        if self.d_max == 0 {
            return Err(SynthesisError::BadDiameter);
        }
        if self.delta.is_some_and(|d| !(d > 0.0 && d.is_finite())) {
            return Err(SynthesisError::BadDelta);
        }
        self.cost_params.validate()?;
        self.failure_params.validate()?;
        Ok(())
    }

    pub fn effective_delta(&self) -> f64 {
        self.delta.unwrap_or_else(|| self.cost_params.delta())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedCandidate {
    pub id: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub channels: usize,
    pub diameter: u32,
    pub degree_class: DegreeClass,
    pub max_channel_degree: u32,
    pub connectivity: usize,
    pub geodetic_k: u64,
    pub geodetic_label: GeodeticLabel,
    /// Breadth-first layers around a center vertex.
    pub hierarchy_levels: u32,
    /// Other catalog instances with the same `(n, d)`.
    pub flexibility: usize,
    pub a: f64,
    pub chi: f64,
    pub k0: f64,
    pub c_r: f64,
    pub q: f64,
    pub p: f64,
    pub score: Option<f64>,
    pub rank: usize,
    pub pareto: bool,
    pub dominated_by: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkipEntry {
    pub candidate: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisReport {
    pub query: SynthesisQuery,
    pub delta: f64,
    pub policy: RankingPolicy,
    pub candidates: Vec<RankedCandidate>,
    pub pareto_front: Vec<String>,
    pub skipped: Vec<SkipEntry>,
}

/// Catalog members with `n` in range, plus every query file.
fn catalog(q: &SynthesisQuery) -> Vec<FamilySpec> {
    let (lo, hi) = q.n_range;
    let mut specs = vec![FamilySpec::Bus { n: lo.max(2) }];
    for n in lo..=hi {
        specs.push(FamilySpec::Complete { n });
        specs.push(FamilySpec::Ring { n });
        specs.push(FamilySpec::DoubleRing { n });
        if n % 2 == 0 {
            specs.extend(
                (3..n.saturating_sub(2))
                    .step_by(2)
                    .map(|c| FamilySpec::ChordalRing { n, c }),
            );
        } else {
            specs.push(FamilySpec::ChordalRing { n, c: 3 });
        }
        if n >= 10 && (n - 10) % 5 == 0 && n <= 25 {
            specs.push(FamilySpec::PetersenHomeomorph { t: (n - 10) / 5 });
        }
        if n == 8 {
            specs.push(FamilySpec::WagnerRing);
        }
        if n == 16 {
            specs.push(FamilySpec::MoebiusKantorCandidate);
            specs.push(FamilySpec::BigeodeticRing16);
        }
    }
    specs.extend(q.files.iter().cloned().map(FamilySpec::FromFile));
    specs
}

struct Measured {
    spec: FamilySpec,
    topology: Topology,
    candidate: RankedCandidate,
}

fn measure(spec: FamilySpec, topology: Topology, q: &SynthesisQuery, delta: f64) -> Measured {
    let g = topology
        .as_graph()
        .expect("bus is filtered before measuring");
    let profile = distance_profile(g);
    let degrees = degree_summary(g);
    let class = classify(&profile).expect("graph profile is classifiable");
    let eff = effectiveness_from_profile(&topology, &profile, &q.cost_params);
    let channels = g.channel_count();
    let l = g.excess_channels();
    let q2 = q.failure_params.q2_for(channels);
    let fail = asymptotic_q2(g.n(), l.max(0) as usize, q2);
    let candidate = RankedCandidate {
        id: g.label(),
        family: spec.name().to_string(),
        n: g.n(),
        m: g.m(),
        channels,
        diameter: profile.diameter,
        degree_class: degrees.classification,
        max_channel_degree: degrees.max_deg,
        connectivity: vertex_connectivity(g),
        geodetic_k: class.k,
        geodetic_label: class.label,
        hierarchy_levels: profile.radius + 1,
        flexibility: 0,
        a: additional_relative_cost(g.n(), l, delta),
        chi: eff.chi,
        k0: eff.k0,
        c_r: eff.c_r,
        q: fail,
        p: 1.0 - fail,
        score: None,
        rank: 0,
        pareto: false,
        dominated_by: Vec::new(),
    };
    Measured {
        spec,
        topology,
        candidate,
    }
}

fn rejection(c: &RankedCandidate, q: &SynthesisQuery) -> Option<String> {
    if c.diameter > q.d_max {
        return Some(format!("diameter {} > d_max {}", c.diameter, q.d_max));
    }
    if let Some(k_max) = q.k_max {
        if c.max_channel_degree > k_max {
            return Some(format!(
                "channel degree {} > k_max {k_max}",
                c.max_channel_degree
            ));
        }
    }
    if q.geodeticity_max > 0 {
        if c.geodetic_k > q.geodeticity_max {
            return Some(format!(
                "geodesic multiplicity {} > {}",
                c.geodetic_k, q.geodeticity_max
            ));
        }
        if c.connectivity < 2 {
            return Some(format!(
                "vertex connectivity {} < 2 (not a block)",
                c.connectivity
            ));
        }
    }
    None
}

/// `a` dominates `b`: no worse in `chi`, `P` and `A`, and better in one.
pub fn dominates(a: &RankedCandidate, b: &RankedCandidate) -> bool {
    let no_worse = a.chi >= b.chi && a.p >= b.p && a.a <= b.a;
    let better = a.chi > b.chi || a.p > b.p || a.a < b.a;
    no_worse && better
}

/// Candidates not dominated by any other, in input order.
pub fn pareto_front(candidates: &[RankedCandidate]) -> Vec<RankedCandidate> {
    candidates
        .iter()
        .filter(|c| !candidates.iter().any(|o| dominates(o, c)))
        .cloned()
        .collect()
}

fn lexicographic(a: &RankedCandidate, b: &RankedCandidate) -> Ordering {
    b.p.total_cmp(&a.p)
        .then(b.chi.total_cmp(&a.chi))
        .then(a.a.total_cmp(&b.a))
}

fn tie_break(a: &RankedCandidate, b: &RankedCandidate) -> Ordering {
    a.family
        .cmp(&b.family)
        .then(a.n.cmp(&b.n))
        .then(a.id.cmp(&b.id))
}

fn rank(candidates: &mut [RankedCandidate], policy: RankingPolicy) {
    if let RankingPolicy::Weighted {
        reliability,
        effectiveness,
        cost,
    } = policy
    {
        let chi_max = candidates.iter().map(|c| c.chi).fold(0.0, f64::max);
        let a_max = candidates.iter().map(|c| c.a).fold(0.0, f64::max);
        for c in candidates.iter_mut() {
            let chi = if chi_max > 0.0 { c.chi / chi_max } else { 0.0 };
            let a = if a_max > 0.0 { c.a / a_max } else { 0.0 };
            c.score = Some(reliability * c.p + effectiveness * chi - cost * a);
        }
    }
    candidates.sort_by(|a, b| {
        let by_score = match (a.score, b.score) {
            (Some(x), Some(y)) => y.total_cmp(&x),
            _ => Ordering::Equal,
        };
        by_score.then(lexicographic(a, b)).then(tie_break(a, b))
    });
    for (i, c) in candidates.iter_mut().enumerate() {
        c.rank = i + 1;
    }
}

pub fn synthesize(q: &SynthesisQuery) -> Result<SynthesisReport, SynthesisError> {
    synthesize_with(q, Exec::default())
}

pub fn synthesize_with(q: &SynthesisQuery, exec: Exec) -> Result<SynthesisReport, SynthesisError> {
    q.validate()?;
    let delta = q.effective_delta();
    let (lo, hi) = q.n_range;
    let mut skipped = Vec::new();

    let mut instances = Vec::new();
    for spec in catalog(q) {
        match generate(&spec) {
            Ok(Topology::Bus { .. }) => skipped.push(SkipEntry {
                candidate: spec.name().to_string(),
                reason: "shared medium has no graph structure".to_string(),
            }),
            Ok(t) if !(lo..=hi).contains(&t.n()) => skipped.push(SkipEntry {
                candidate: spec.to_string(),
                reason: format!("n={} outside [{lo}, {hi}]", t.n()),
            }),
            Ok(t) => instances.push((spec, t)),
            Err(e) => skipped.push(SkipEntry {
                candidate: spec.to_string(),
                reason: e.to_string(),
            }),
        }
    }

    let measured: Vec<Measured> = exec.map_slice(&instances, |(spec, t)| {
        measure(spec.clone(), t.clone(), q, delta)
    });

    let mut survivors = Vec::new();
    for m in &measured {
        let mut c = m.candidate.clone();
        c.flexibility = measured
            .iter()
            .filter(|o| o.candidate.n == c.n && o.candidate.diameter == c.diameter)
            .count()
            - 1;
        debug_assert_eq!(m.topology.n(), c.n);
        match rejection(&c, q) {
            Some(reason) => skipped.push(SkipEntry {
                candidate: m.spec.to_string(),
                reason,
            }),
            None => survivors.push(c),
        }
    }

    let snapshot = survivors.clone();
    for c in survivors.iter_mut() {
        c.dominated_by = snapshot
            .iter()
            .filter(|o| dominates(o, c))
            .map(|o| o.id.clone())
            .collect();
        c.pareto = c.dominated_by.is_empty();
    }
    rank(&mut survivors, q.policy);
    let pareto_front = survivors
        .iter()
        .filter(|c| c.pareto)
        .map(|c| c.id.clone())
        .collect();

    Ok(SynthesisReport {
        query: q.clone(),
        delta,
        policy: q.policy,
        candidates: survivors,
        pareto_front,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy(id: &str, chi: f64, p: f64, a: f64) -> RankedCandidate {
        RankedCandidate {
            id: id.to_string(),
            family: id.to_string(),
            n: 10,
            m: 15,
            channels: 15,
            diameter: 2,
            degree_class: DegreeClass::Regular { k: 3 },
            max_channel_degree: 3,
            connectivity: 3,
            geodetic_k: 1,
            geodetic_label: GeodeticLabel::Geodetic,
            hierarchy_levels: 3,
            flexibility: 0,
            a,
            chi,
            k0: 1.0,
            c_r: 1.0,
            q: 1.0 - p,
            p,
            score: None,
            rank: 0,
            pareto: false,
            dominated_by: Vec::new(),
        }
    }

    #[test]
    fn front_examples() {
        let one = vec![dummy("a", 1.0, 0.9, 0.5)];
        assert_eq!(pareto_front(&one), one);

        let two = vec![dummy("a", 1.0, 0.9, 0.5), dummy("b", 2.0, 0.95, 0.4)];
        let front = pareto_front(&two);
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].id, "b");

        let trade = vec![dummy("a", 1.0, 0.99, 0.5), dummy("b", 2.0, 0.95, 0.4)];
        assert_eq!(pareto_front(&trade).len(), 2);
    }

    #[test]
    fn diameter_one_means_complete() {
        let q = SynthesisQuery::new((3, 9), 1);
        let r = synthesize(&q).unwrap();
        assert!(!r.candidates.is_empty());
        // ring:3 is K3 under another name
        assert!(r.candidates.iter().all(|c| c.m == c.n * (c.n - 1) / 2));
    }

    #[test]
    fn nothing_matches() {
        let mut q = SynthesisQuery::new((11, 11), 2);
        q.geodeticity_max = 1;
        q.k_max = Some(3);
        let r = synthesize(&q).unwrap();
        assert!(r.candidates.is_empty());
        assert!(!r.skipped.is_empty());
    }

    #[test]
    fn filters_are_sound() {
        let mut q = SynthesisQuery::new((6, 14), 3);
        q.k_max = Some(4);
        q.geodeticity_max = 2;
        let r = synthesize(&q).unwrap();
        for c in &r.candidates {
            let g = generate(&c.id.parse().unwrap()).unwrap();
            let g = g.as_graph().unwrap();
            let p = distance_profile(g);
            assert!(p.diameter <= 3);
            assert!(degree_summary(g).max_deg <= 4);
            assert!(p.max_sigma() <= 2);
            assert!(vertex_connectivity(g) >= 2);
        }
    }

    #[test]
    fn weighted_policy_respects_dominance() {
        let mut q = SynthesisQuery::new((8, 16), 4);
        q.policy = RankingPolicy::Weighted {
            reliability: 1.0,
            effectiveness: 0.5,
            cost: 0.25,
        };
        let r = synthesize(&q).unwrap();
        for c in &r.candidates {
            for d in &c.dominated_by {
                let dom = r.candidates.iter().find(|o| &o.id == d).unwrap();
                assert!(dom.rank < c.rank);
            }
            assert!(c.score.is_some());
        }
    }

    #[test]
    fn rejects_bad_query() {
        assert!(synthesize(&SynthesisQuery::new((9, 3), 2)).is_err());
        assert!(synthesize(&SynthesisQuery::new((3, 9), 0)).is_err());
    }

    #[test]
    fn query_json_defaults() {
        let q: SynthesisQuery =
            serde_json::from_str(r#"{"n_range":[10,25],"d_max":5,"k_max":3,"geodeticity_max":1}"#)
                .unwrap();
        assert_eq!(q.policy, RankingPolicy::Lexicographic);
        assert_eq!(q.failure_params.seed, 42);
        assert!(
            serde_json::from_str::<SynthesisQuery>(r#"{"n_range":[1,2],"d_max":1,"bogus":1}"#)
                .is_err()
        );
    }
}
