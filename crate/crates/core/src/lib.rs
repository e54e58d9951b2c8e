// SPDX-License-Identifier: Apache-2.0

//! Topological analysis and synthesis of k-geodetic computer networks.
//!
//! The crate generates candidate topologies ([`generators`]), measures
//! them ([`profile`], [`geodetics`], [`connectivity`]), prices them
//! ([`economics`]), estimates their failure probability ([`reliability`])
//! and ranks them against a query ([`synthesis`]).
//!
//! Heavy loops run on rayon when the default `parallel` feature is on.
//! Every `*_with` entry point takes an [`Exec`] so callers can force the
//! sequential path; results are identical either way.

pub mod connectivity;
pub mod economics;
pub mod exec;
pub mod generators;
pub mod geodetics;
pub mod graph;
pub mod io;
pub mod profile;
pub mod reliability;
pub mod synthesis;

pub use exec::Exec;
pub use generators::{generate, FamilySpec};
pub use graph::{build_graph, Graph, GraphError, Topology};
pub use profile::{distance_profile, DistanceProfile};
