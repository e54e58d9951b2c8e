// SPDX-License-Identifier: Apache-2.0

//! Cost and cost-effectiveness of a topology.
//!
//! Two cost views are provided. The `[n, m]` network cost prices nodes at
//! `c1` and channels at `c2`; its excess over a ring, relative to node cost,
//! is the additional relative cost `A(n, l) = delta * l / n`. The structure
//! cost prices processors, per-channel attachments and inter-node channels
//! separately and is the denominator of the cost-effectiveness ratio
//! `chi = k0 / C_R`, where `k0` is the saturation bound on message-flow
//! density:
//!
//! ```text
//! V_PC = 1/n
//! V_CS = sum_l l * R(l) / (n - 1)
//! V_R  = V_CS / m_n
//! k0   = min(1 / (V_PC * S_PC), 1 / (V_R * S_P))
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::generators::{generate, FamilySpec};
use crate::graph::Topology;
use crate::profile::{edge_loads, topology_profile, DistanceProfile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EconError {
    #[error("cost parameter {name} must be strictly positive and finite (got {value})")]
    NonPositive { name: &'static str, value: f64 },
}

/// Unit costs and service times. Defaults are all 1, i.e. `S_PC = S_P` and
/// `C_CP = C_C = C_CT = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostParams {
    /// Node cost.
    pub c1: f64,
    /// Channel cost.
    pub c2: f64,
    /// Processor cost per node.
    pub c_cp: f64,
    /// Cost of attaching one channel at a node.
    pub c_c: f64,
    /// Inter-node channel cost.
    pub c_ct: f64,
    /// Processor service time per message.
    pub s_pc: f64,
    /// Channel occupancy time per message.
    pub s_p: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            c1: 1.0,
            c2: 1.0,
            c_cp: 1.0,
            c_c: 1.0,
            c_ct: 1.0,
            s_pc: 1.0,
            s_p: 1.0,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<(), EconError> {
        for (name, value) in [
            ("c1", self.c1),
            ("c2", self.c2),
            ("c_cp", self.c_cp),
            ("c_c", self.c_c),
            ("c_ct", self.c_ct),
            ("s_pc", self.s_pc),
            ("s_p", self.s_p),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(EconError::NonPositive { name, value });
            }
        }
        Ok(())
    }

    /// Cost ratio `delta = c2 / c1`.
    pub fn delta(&self) -> f64 {
        self.c2 / self.c1
    }

    /// Multiplies the three structure-cost coefficients by `factor`.
    pub fn scale_structure_costs(&self, factor: f64) -> Self {
        CostParams {
            c_cp: self.c_cp * factor,
            c_c: self.c_c * factor,
            c_ct: self.c_ct * factor,
            ..*self
        }
    }
}

/// `C[n, m] = n*c1 + m*c2`.
pub fn network_cost(n: usize, m: usize, p: &CostParams) -> f64 {
    n as f64 * p.c1 + m as f64 * p.c2
}

/// `A(n, l) = delta * l / n`, with `l = m - n`.
pub fn additional_relative_cost(n: usize, l: i64, delta: f64) -> f64 {
    delta * l as f64 / n as f64
}

/// Upper end of the additional relative cost for `n` nodes (complete graph).
pub fn max_additional_relative_cost(n: usize, delta: f64) -> f64 {
    delta * (n as f64 - 3.0) / 2.0
}

/// `C_R = n*C_CP + n*k*C_C + m_n*C_CT`, using the mean channel degree for `k`.
pub fn structure_cost(t: &Topology, p: &CostParams) -> f64 {
    let n = t.n() as f64;
    n * p.c_cp + n * t.cost_degree() * p.c_c + t.channel_count() as f64 * p.c_ct
}

/// Flow density `U / (V * S)` at a node with utilisation `U`, visit rate `V`
/// and service time `S`. At saturation (`U = 1`) this is the node's bound.
pub fn flow_density(utilisation: f64, visits: f64, service: f64) -> f64 {
    utilisation / (visits * service)
}

/// Which of the two saturation bounds is binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingBound {
    Processor,
    Channel,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivenessReport {
    pub topology: String,
    pub n: usize,
    pub channels: usize,
    pub v_pc: f64,
    pub v_cs: f64,
    pub v_r: f64,
    /// Busiest channel's crossing rate under uniform all-pairs traffic split
    /// evenly across geodesics.
    pub v_r_max: f64,
    /// `1 / (V_PC * S_PC)`.
    pub processor_bound: f64,
    /// `1 / (V_R * S_P)`.
    pub channel_bound: f64,
    pub k0: f64,
    pub binding: BindingBound,
    pub c_r: f64,
    pub chi: f64,
    /// Asymptotic `k0` for the four classic families.
    pub closed_form_k0: Option<f64>,
    /// Reference `V_R^max * S_P` for the classic families (lower bound for
    /// chordal rings).
    pub closed_form_vr_sp: Option<f64>,
}

pub fn effectiveness(t: &Topology, p: &CostParams) -> EffectivenessReport {
    effectiveness_from_profile(t, &topology_profile(t), p)
}

/// Effectiveness chain for `t`, reusing an already computed profile.
pub fn effectiveness_from_profile(
    t: &Topology,
    profile: &DistanceProfile,
    p: &CostParams,
) -> EffectivenessReport {
    let n = t.n();
    let channels = t.channel_count();
    let ordered_pairs = (n * (n - 1)) as f64;
    let distance_sum = profile.distance_sum() as f64;

    let v_pc = 1.0 / n as f64;
    let v_cs = distance_sum / ordered_pairs;
    let v_r = distance_sum / (ordered_pairs * channels as f64);
    let processor_bound = n as f64 / p.s_pc;
    let channel_bound = ordered_pairs * channels as f64 / (distance_sum * p.s_p);
    let (k0, binding) = if processor_bound < channel_bound {
        (processor_bound, BindingBound::Processor)
    } else if channel_bound < processor_bound {
        (channel_bound, BindingBound::Channel)
    } else {
        (processor_bound, BindingBound::Tie)
    };
    let v_r_max = match t {
        Topology::Bus { .. } => 1.0,
        Topology::Network(g) => {
            let busiest = edge_loads(g).into_iter().fold(0.0, f64::max);
            busiest / (ordered_pairs * g.multiplicity() as f64)
        }
    };
    let c_r = structure_cost(t, p);
    let family = t.family();
    EffectivenessReport {
        topology: t.label(),
        n,
        channels,
        v_pc,
        v_cs,
        v_r,
        v_r_max,
        processor_bound,
        channel_bound,
        k0,
        binding,
        c_r,
        chi: k0 / c_r,
        closed_form_k0: family.as_ref().and_then(|f| closed_form_k0(f, p)),
        closed_form_vr_sp: family.as_ref().and_then(|f| closed_form_vr_sp(f, p)),
    }
}

/// Asymptotic flow density for the bus, complete graph, double ring and
/// chordal ring.
pub fn closed_form_k0(family: &FamilySpec, p: &CostParams) -> Option<f64> {
    match *family {
        FamilySpec::Bus { .. } => Some(1.0 / p.s_p),
        FamilySpec::Complete { n } => Some(n as f64 / p.s_p),
        FamilySpec::DoubleRing { .. } => Some(8.0 / p.s_p),
        FamilySpec::ChordalRing { c, .. } => Some(2.0 * (c as f64 + 1.0) / p.s_p),
        _ => None,
    }
}

/// Reference channel crossing load `V_R^max * S_P` for the classic families.
pub fn closed_form_vr_sp(family: &FamilySpec, p: &CostParams) -> Option<f64> {
    match *family {
        FamilySpec::Bus { .. } => Some(p.s_p),
        FamilySpec::Complete { n } => {
            let n = n as f64;
            Some(2.0 * p.s_p / (n * (n - 1.0)))
        }
        FamilySpec::DoubleRing { n } => {
            let nf = n as f64;
            Some(if n % 2 == 0 {
                nf * p.s_p / (8.0 * (nf - 1.0))
            } else {
                p.s_p * (nf + 1.0) / (8.0 * nf)
            })
        }
        FamilySpec::ChordalRing { n, c } => Some(chordal_ring_vr_lower_bound(n, c) * p.s_p),
        _ => None,
    }
}

/// Lower bound on the per-channel crossing rate of a chordal ring,
/// `(2/n) * n^2 / (4 (c+1) (n-1)) = n / (2 (c+1) (n-1))`.
pub fn chordal_ring_vr_lower_bound(n: usize, c: usize) -> f64 {
    let n = n as f64;
    n / (2.0 * (c as f64 + 1.0) * (n - 1.0))
}

/// Family templates swept along the node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    Bus,
    Complete,
    Ring,
    DoubleRing,
    ChordalRing { c: usize },
}

impl CurveFamily {
    pub fn instantiate(self, n: usize) -> FamilySpec {
        match self {
            CurveFamily::Bus => FamilySpec::Bus { n },
            CurveFamily::Complete => FamilySpec::Complete { n },
            CurveFamily::Ring => FamilySpec::Ring { n },
            CurveFamily::DoubleRing => FamilySpec::DoubleRing { n },
            CurveFamily::ChordalRing { c } => FamilySpec::ChordalRing { n, c },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveFamily::Bus => "bus",
            CurveFamily::Complete => "complete",
            CurveFamily::Ring => "ring",
            CurveFamily::DoubleRing => "double_ring",
            CurveFamily::ChordalRing { .. } => "chordal_ring",
        }
    }

    /// The four structures of the cost-effectiveness comparison, chords of length 5.
    pub fn classic() -> Vec<CurveFamily> {
        vec![
            CurveFamily::Bus,
            CurveFamily::Complete,
            CurveFamily::DoubleRing,
            CurveFamily::ChordalRing { c: 5 },
        ]
    }
}

impl std::str::FromStr for CurveFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bus" => Ok(CurveFamily::Bus),
            "complete" => Ok(CurveFamily::Complete),
            "ring" => Ok(CurveFamily::Ring),
            "double_ring" => Ok(CurveFamily::DoubleRing),
            "chordal_ring" => Ok(CurveFamily::ChordalRing { c: 5 }),
            other => match other.strip_prefix("chordal_ring:") {
                Some(c) => c
                    .parse()
                    .map(|c| CurveFamily::ChordalRing { c })
                    .map_err(|_| format!("bad chord length '{c}'")),
                None => Err(format!("unknown curve family '{other}'")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub family: String,
    pub n: usize,
    pub chi: f64,
    pub k0: f64,
    pub c_r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCell {
    pub family: String,
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivenessCurve {
    pub params: CostParams,
    pub rows: Vec<CurvePoint>,
    pub skipped: Vec<SkippedCell>,
}

pub fn effectiveness_curve(
    families: &[CurveFamily],
    ns: &[usize],
    p: &CostParams,
) -> EffectivenessCurve {
    effectiveness_curve_with(families, ns, p, Exec::default())
}

/// `chi` over a (family, n) grid; rows ordered by family as given, then by
/// `ns` order.
pub fn effectiveness_curve_with(
    families: &[CurveFamily],
    ns: &[usize],
    p: &CostParams,
    exec: Exec,
) -> EffectivenessCurve {
    let cells: Vec<(CurveFamily, usize)> = families
        .iter()
        .flat_map(|&f| ns.iter().map(move |&n| (f, n)))
        .collect();
    let results = exec.map_slice(&cells, |&(family, n)| {
        generate(&family.instantiate(n))
            .map(|t| effectiveness(&t, p))
            .map_err(|e| e.to_string())
    });
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for ((family, n), result) in cells.into_iter().zip(results) {
        match result {
            Ok(r) => rows.push(CurvePoint {
                family: family.name().to_string(),
                n,
                chi: r.chi,
                k0: r.k0,
                c_r: r.c_r,
            }),
            Err(reason) => skipped.push(SkippedCell {
                family: family.name().to_string(),
                n,
                reason,
            }),
        }
    }
    EffectivenessCurve {
        params: *p,
        rows,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn topo(spec: FamilySpec) -> Topology {
        generate(&spec).unwrap()
    }

    #[test]
    fn network_cost_examples() {
        let p = CostParams {
            c1: 3.0,
            c2: 2.0,
            ..Default::default()
        };
        let n = 12;
        assert_relative_eq!(network_cost(n, n, &p), n as f64 * (p.c1 + p.c2));
        assert_relative_eq!(
            network_cost(n, n * (n - 1) / 2, &p),
            n as f64 * (p.c1 + (n as f64 - 1.0) / 2.0 * p.c2)
        );
        assert_relative_eq!(network_cost(10, 15, &CostParams::default()), 25.0);
    }

    #[test]
    fn relative_cost_examples() {
        let delta = 0.7;
        assert_eq!(additional_relative_cost(9, 0, delta), 0.0);
        let n = 11;
        assert_relative_eq!(
            additional_relative_cost(n, (n * (n - 3) / 2) as i64, delta),
            max_additional_relative_cost(n, delta)
        );
        assert_relative_eq!(additional_relative_cost(10, 5, delta), delta / 2.0);
    }

    #[test]
    fn structure_cost_examples() {
        let p = CostParams::default();
        assert_relative_eq!(structure_cost(&topo(FamilySpec::Bus { n: 10 }), &p), 21.0);
        assert_relative_eq!(
            structure_cost(&topo(FamilySpec::Complete { n: 4 }), &p),
            22.0
        );
        for n in [5, 8, 13] {
            assert_relative_eq!(
                structure_cost(&topo(FamilySpec::DoubleRing { n }), &p),
                7.0 * n as f64
            );
        }
    }

    #[test]
    fn bus_and_complete_k0() {
        let p = CostParams::default();
        for n in [4, 9, 30] {
            let bus = effectiveness(&topo(FamilySpec::Bus { n }), &p);
            assert_eq!(bus.k0, 1.0);
            assert_eq!(bus.binding, BindingBound::Channel);
            assert_relative_eq!(bus.chi, 1.0 / (2.0 * n as f64 + 1.0));

            assert_eq!(bus.v_r_max, 1.0);

            let k = effectiveness(&topo(FamilySpec::Complete { n }), &p);
            assert_relative_eq!(
                k.v_r_max,
                k.closed_form_vr_sp.unwrap(),
                max_relative = 1e-12
            );
            assert_eq!(k.v_cs, 1.0);
            assert_eq!(k.k0, n as f64);
            assert_eq!(Some(k.k0), k.closed_form_k0);
        }
        let k3 = effectiveness(&topo(FamilySpec::Complete { n: 3 }), &p);
        assert_eq!(k3.binding, BindingBound::Tie);
    }

    #[test]
    fn double_ring_load() {
        let p = CostParams {
            s_p: 2.5,
            s_pc: 2.5,
            ..Default::default()
        };
        for n in [4, 5, 10, 17, 32] {
            let r = effectiveness(&topo(FamilySpec::DoubleRing { n }), &p);
            assert_relative_eq!(
                r.v_r * p.s_p,
                r.closed_form_vr_sp.unwrap(),
                max_relative = 1e-12
            );
            // edge-transitive: the busiest channel carries the average load
            assert_relative_eq!(r.v_r_max, r.v_r, max_relative = 1e-12);
        }
    }

    #[test]
    fn ring_distance_identity() {
        let p = CostParams::default();
        for n in (4..40).step_by(2) {
            let r = effectiveness(&topo(FamilySpec::Ring { n }), &p);
            let nf = n as f64;
            assert_relative_eq!(r.v_cs, nf * nf / (4.0 * (nf - 1.0)), max_relative = 1e-12);
        }
    }

    #[test]
    fn chordal_lower_bound_value() {
        assert_relative_eq!(chordal_ring_vr_lower_bound(16, 5), 4.0 / 45.0);
        assert!(chordal_ring_vr_lower_bound(16, 7) < chordal_ring_vr_lower_bound(16, 5));
    }

    #[test]
    fn saturation_identity() {
        // k0 = X/V with U = X*S; at U = 1 this is the processor term of the bound.
        let p = CostParams {
            s_pc: 0.3,
            ..Default::default()
        };
        let r = effectiveness(&topo(FamilySpec::Ring { n: 12 }), &p);
        let x = 1.0 / p.s_pc;
        let u = x * p.s_pc;
        assert_relative_eq!(u, 1.0);
        assert_relative_eq!(flow_density(u, r.v_pc, p.s_pc), r.processor_bound);
        assert_relative_eq!(x / r.v_pc, r.processor_bound);
    }

    #[test]
    fn curve_skips_infeasible_cells() {
        let p = CostParams::default();
        let curve = effectiveness_curve(&CurveFamily::classic(), &[8, 9, 10], &p);
        assert_eq!(curve.rows.len(), 4 * 3 - 1);
        assert_eq!(curve.skipped.len(), 1);
        assert_eq!(curve.skipped[0].family, "chordal_ring");
        assert_eq!(curve.skipped[0].n, 9);
        let seq =
            effectiveness_curve_with(&CurveFamily::classic(), &[8, 9, 10], &p, Exec::Sequential);
        assert_eq!(curve, seq);
    }

    #[test]
    fn rejects_nonpositive_params() {
        let p = CostParams {
            c_c: 0.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
        assert!(CostParams::default().validate().is_ok());
    }
}
