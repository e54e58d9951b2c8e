// SPDX-License-Identifier: Apache-2.0

//! Geodetic classification by maximum geodesic multiplicity, and the
//! path-enumeration oracle that cross-checks the breadth-first counter.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::profile::{distance_profile, DistanceProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodeticError {
    #[error("the shared-bus topology has no geodesic structure to classify")]
    BusNotClassifiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodeticLabel {
    Geodetic,
    Bigeodetic,
    KGeodetic,
}

impl fmt::Display for GeodeticLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeodeticLabel::Geodetic => "geodetic",
            GeodeticLabel::Bigeodetic => "bigeodetic",
            GeodeticLabel::KGeodetic => "k_geodetic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodeticClass {
    /// Largest number of geodesics between any pair.
    pub k: u64,
    pub label: GeodeticLabel,
    /// Unordered pairs per geodesic multiplicity.
    pub histogram: BTreeMap<u64, usize>,
    /// Lexicographically first pair attaining `k`.
    pub witness: Option<(usize, usize)>,
}

pub fn classify(profile: &DistanceProfile) -> Result<GeodeticClass, GeodeticError> {
    if profile.shared_medium {
        return Err(GeodeticError::BusNotClassifiable);
    }
    let mut histogram = BTreeMap::new();
    let mut k = 1;
    let mut witness = None;
    for i in 0..profile.n {
        for j in i + 1..profile.n {
            let s = profile.sigma[i][j];
            *histogram.entry(s).or_insert(0) += 1;
            if witness.is_none() || s > k {
                k = s;
                witness = Some((i, j));
            }
        }
    }
    let label = match k {
        1 => GeodeticLabel::Geodetic,
        2 => GeodeticLabel::Bigeodetic,
        _ => GeodeticLabel::KGeodetic,
    };
    Ok(GeodeticClass {
        k,
        label,
        histogram,
        witness,
    })
}

/// A structural claim checked by [`verify_claim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// Every pair has a unique geodesic.
    Geodetic,
    /// No pair has more than two geodesics.
    Bigeodetic,
}

impl Claim {
    pub fn bound(self) -> u64 {
        match self {
            Claim::Geodetic => 1,
            Claim::Bigeodetic => 2,
        }
    }
}

impl std::str::FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "geodetic" => Ok(Claim::Geodetic),
            "bigeodetic" => Ok(Claim::Bigeodetic),
            other => Err(format!(
                "unknown claim `{other}` (expected geodetic or bigeodetic)"
            )),
        }
    }
}

/// Checks `claim` and, when given, the diameter. The error carries a
/// human-readable reason naming the first offending pair.
pub fn verify_claim(
    g: &Graph,
    claim: Claim,
    diameter: Option<u32>,
) -> Result<GeodeticClass, String> {
    let profile = distance_profile(g);
    let class = classify(&profile).map_err(|e| e.to_string())?;
    if class.k > claim.bound() {
        let (i, j) = class.witness.expect("k > 1 implies a witness pair");
        return Err(format!("pair ({i},{j}) has {} geodesics", class.k));
    }
    if let Some(d) = diameter {
        if profile.diameter != d {
            return Err(format!("diameter is {}, claimed {d}", profile.diameter));
        }
    }
    Ok(class)
}

pub fn is_geodetic(g: &Graph) -> bool {
    distance_profile(g).max_sigma() == 1
}

/// Counts shortest `s`-`t` paths by enumerating simple paths of increasing
/// length until some length admits at least one.
///
/// Exponential; meant for graphs of a dozen or so vertices.
pub fn brute_force_geodesic_count(g: &Graph, s: usize, t: usize) -> u64 {
    if s == t {
        return 1;
    }
    fn walk(g: &Graph, at: usize, t: usize, left: usize, on_path: &mut [bool]) -> u64 {
        if left == 0 {
            return u64::from(at == t);
        }
        let mut total = 0;
        for &v in g.neighbors(at) {
            if !on_path[v] {
                on_path[v] = true;
                total += walk(g, v, t, left - 1, on_path);
                on_path[v] = false;
            }
        }
        total
    }
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    (1..g.n())
        .map(|len| walk(g, s, t, len, &mut on_path))
        .find(|&count| count > 0)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, FamilySpec};
    use crate::profile::bus_profile;

    fn graph(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap().as_graph().unwrap().clone()
    }

    #[test]
    fn petersen_geodetic() {
        let c = classify(&distance_profile(&graph(FamilySpec::Petersen))).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.label, GeodeticLabel::Geodetic);
        assert_eq!(c.histogram.values().sum::<usize>(), 45);
    }

    #[test]
    fn square_bigeodetic() {
        let c = classify(&distance_profile(&graph(FamilySpec::Ring { n: 4 }))).unwrap();
        assert_eq!(c.k, 2);
        assert_eq!(c.label, GeodeticLabel::Bigeodetic);
        assert_eq!(c.witness, Some((0, 2)));
    }

    #[test]
    fn wagner_bigeodetic() {
        let p = distance_profile(&graph(FamilySpec::WagnerRing));
        let c = classify(&p).unwrap();
        assert_eq!(c.label, GeodeticLabel::Bigeodetic);
        assert_eq!(p.diameter, 2);
    }

    #[test]
    fn sixteen_node_cubic_candidates() {
        let p = distance_profile(&graph(FamilySpec::BigeodeticRing16));
        let c = classify(&p).unwrap();
        assert_eq!((c.label, p.diameter), (GeodeticLabel::Bigeodetic, 4));
        let c = classify(&distance_profile(&graph(
            FamilySpec::MoebiusKantorCandidate,
        )))
        .unwrap();
        assert_eq!(c.k, 6);
    }

    #[test]
    fn claims() {
        let c4 = graph(FamilySpec::Ring { n: 4 });
        assert_eq!(
            verify_claim(&c4, Claim::Geodetic, None).unwrap_err(),
            "pair (0,2) has 2 geodesics"
        );
        assert!(verify_claim(&c4, Claim::Bigeodetic, Some(2)).is_ok());
        assert_eq!(
            verify_claim(&c4, Claim::Bigeodetic, Some(3)).unwrap_err(),
            "diameter is 2, claimed 3"
        );
        let w = graph(FamilySpec::WagnerRing);
        assert!(verify_claim(&w, Claim::Bigeodetic, Some(2)).is_ok());
    }

    #[test]
    fn bus_rejected() {
        assert_eq!(
            classify(&bus_profile(4)),
            Err(GeodeticError::BusNotClassifiable)
        );
    }

    #[test]
    fn oracle_examples() {
        let c6 = graph(FamilySpec::Ring { n: 6 });
        assert_eq!(brute_force_geodesic_count(&c6, 0, 3), 2);
        let p = graph(FamilySpec::Petersen);
        for s in 0..10 {
            for t in 0..10 {
                assert_eq!(brute_force_geodesic_count(&p, s, t), 1);
            }
        }
        let k4 = graph(FamilySpec::Complete { n: 4 });
        assert_eq!(brute_force_geodesic_count(&k4, 0, 1), 1);
    }

    #[test]
    fn cycle_parity() {
        for n in 3..16 {
            let p = distance_profile(&graph(FamilySpec::Ring { n }));
            let c = classify(&p).unwrap();
            if n % 2 == 1 {
                assert_eq!(c.label, GeodeticLabel::Geodetic, "C{n}");
            } else {
                assert_eq!(c.label, GeodeticLabel::Bigeodetic, "C{n}");
                // exactly the antipodal pairs
                assert_eq!(c.histogram.get(&2), Some(&(n / 2)));
            }
        }
    }
}
