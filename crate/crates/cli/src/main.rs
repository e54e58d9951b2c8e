// SPDX-License-Identifier: Apache-2.0

//! `geonet`: generate, analyse, price and rank network topologies.
//!
//! Exit status is 0 on success, 1 when input fails validation or a claim
//! does not hold, and 2 on a usage error. Failures are reported on stderr as
//! a JSON object `{"error": kind, "message": text}`.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use geonet::connectivity::vertex_connectivity;
use geonet::economics::{
    additional_relative_cost, effectiveness_curve, effectiveness_from_profile,
    max_additional_relative_cost, network_cost, CostParams, CurveFamily, EffectivenessReport,
};
use geonet::geodetics::{classify, verify_claim, Claim, GeodeticClass};
use geonet::graph::{degree_summary, DegreeSummary};
use geonet::io::{
    effectiveness_curve_csv, export_dot, reliability_curve_csv, render_homeomorph_table, sci6,
    write_edge_list, HOMEOMORPH_REFERENCE,
};
use geonet::profile::topology_profile;
use geonet::reliability::{
    exact_pairwise_q, homeomorph_table, monte_carlo_reliability, reliability_curve, FailureParams,
    ReliabilityReport, DEFAULT_SEED, DEFAULT_TRIALS,
};
use geonet::synthesis::{synthesize, SynthesisQuery, SynthesisReport};
use geonet::{generate, FamilySpec, Topology};

use crate::config::Config;

#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    message: String,
    code: u8,
}

impl CliError {
    pub fn invalid(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            code: 1,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            message: message.into(),
            code: 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "geonet",
    version,
    about = "Analyse, price and rank k-geodetic network topologies"
)]
struct Cli {
    /// Defaults file of `key=value` lines (c1, c2, c_cp, c_c, c_ct, s_pc,
    /// s_p, delta, q1, q2, trials, seed). Flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog topology, e.g. `chordal_ring 16 5` or `petersen`.
    Generate {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
    },
    /// Distances, degrees, geodetic class, connectivity and hierarchy.
    Analyze {
        /// Edge-list file or family spec.
        target: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Network cost, additional relative cost and cost-effectiveness.
    Economics {
        target: String,
        params: Vec<usize>,
        /// Cost ratio c2/c1 used for the additional relative cost.
        #[arg(long)]
        delta: Option<f64>,
        /// Comma-separated overrides, e.g. `c1=2,s_p=0.5`.
        #[arg(long)]
        costs: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Worst-pair failure probability (Monte Carlo unless `--exact`).
    Reliability {
        target: String,
        params: Vec<usize>,
        #[arg(long)]
        q1: Option<f64>,
        /// Channel failure probability; defaults to 1/m.
        #[arg(long)]
        q2: Option<f64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Enumerate failure states instead of sampling.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// CSV curves.
    Curves {
        #[command(subcommand)]
        which: CurveCommand,
    },
    /// Reliability and additional cost of the Petersen homeomorphs.
    Table2 {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Rank catalog topologies against a JSON query.
    Synthesize {
        #[arg(long)]
        query: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Check a geodetic or bigeodetic claim, optionally with a diameter.
    Verify {
        target: String,
        params: Vec<usize>,
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long = "d")]
        diameter: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Cost-effectiveness against n for several families.
    Fig7 {
        /// Comma-separated families; `chordal_ring:c` picks the chord.
        #[arg(long, default_value = "bus,complete,double_ring,chordal_ring:5")]
        families: String,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        n_step: usize,
        #[arg(long)]
        costs: Option<String>,
    },
    /// Asymptotic failure probability against excess channels l.
    Fig8 {
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Defaults to 1/n.
        #[arg(long)]
        q2: Option<f64>,
        /// Defaults to (n-3)n/2.
        #[arg(long)]
        l_max: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Dot,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Geodetic,
    Bigeodetic,
}

impl From<ClaimArg> for Claim {
    fn from(c: ClaimArg) -> Self {
        match c {
            ClaimArg::Geodetic => Claim::Geodetic,
            ClaimArg::Bigeodetic => Claim::Bigeodetic,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(CliError::usage(e.to_string().trim().to_string()));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", json!({ "error": e.kind, "message": e.message }));
    ExitCode::from(e.code)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Generate {
            family,
            params,
            format,
        } => {
            let topology = resolve(&family, &params)?;
            let g = topology
                .as_graph()
                .ok_or_else(|| CliError::invalid("bus", "the bus has no edge list"))?;
            let text = match format {
                GraphFormat::Edgelist => write_edge_list(g),
                GraphFormat::Dot => export_dot(g),
            };
            emit(out, &text)
        }
        Command::Analyze {
            target,
            params,
            format,
        } => {
            let topology = resolve(&target, &params)?;
            let analysis = analyze(&topology);
            match format {
                ReportFormat::Json => {
                    emit_json(out, "analyze", json!({ "target": target }), &analysis)
                }
                ReportFormat::Text => emit(out, &analysis.text()),
            }
        }
        Command::Economics {
            target,
            params,
            delta,
            costs,
            format,
        } => {
            cfg.overlay(costs.as_deref())?;
            let p = cfg.costs()?;
            let delta = delta.or(cfg.get("delta")?).unwrap_or_else(|| p.delta());
            if !(delta > 0.0 && delta.is_finite()) {
                return Err(CliError::invalid(
                    "costs",
                    "delta must be strictly positive",
                ));
            }
            let topology = resolve(&target, &params)?;
            let report = economics(&topology, &p, delta);
            match format {
                ReportFormat::Json => emit_json(
                    out,
                    "economics",
                    json!({ "target": target, "costs": p, "delta": delta }),
                    &report,
                ),
                ReportFormat::Text => emit(out, &report.text()),
            }
        }
        Command::Reliability {
            target,
            params,
            q1,
            q2,
            trials,
            seed,
            exact,
            format,
        } => {
            let fp = FailureParams {
                q1: q1.or(cfg.get("q1")?).unwrap_or(0.0),
                q2: q2.or(cfg.get("q2")?),
                trials: trials.or(cfg.get("trials")?).unwrap_or(DEFAULT_TRIALS),
                seed: seed.or(cfg.get("seed")?).unwrap_or(DEFAULT_SEED),
            };
            fp.validate()
                .map_err(|e| CliError::invalid("failure_params", e.to_string()))?;
            let topology = resolve(&target, &params)?;
            let g = topology.as_graph().ok_or_else(|| {
                CliError::invalid(
                    "bus",
                    "pairwise reliability is not defined for the shared bus",
                )
            })?;
            let report = if exact {
                exact_pairwise_q(g, fp.q1, fp.q2_for(g.channel_count()))
            } else {
                monte_carlo_reliability(g, &fp)
            }
            .map_err(|e| CliError::invalid("reliability", e.to_string()))?;
            let echo = json!({
                "target": target,
                "q1": fp.q1,
                "q2": report.q2,
                "trials": fp.trials,
                "seed": fp.seed,
                "method": if exact { "exact" } else { "monte_carlo" },
            });
            match format {
                ReportFormat::Json => emit_json(out, "reliability", echo, &report),
                ReportFormat::Text => emit(out, &reliability_text(&report)),
            }
        }
        Command::Curves { which } => match which {
            CurveCommand::Fig7 {
                families,
                n_min,
                n_max,
                n_step,
                costs,
            } => {
                cfg.overlay(costs.as_deref())?;
                let p = cfg.costs()?;
                let families = families
                    .split(',')
                    .map(|f| f.trim().parse::<CurveFamily>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::invalid("curve", e))?;
                if n_step == 0 || n_min > n_max {
                    return Err(CliError::invalid(
                        "curve",
                        "need n_min <= n_max and n_step > 0",
                    ));
                }
                let ns: Vec<usize> = (n_min..=n_max).step_by(n_step).collect();
                emit(
                    out,
                    &effectiveness_curve_csv(&effectiveness_curve(&families, &ns, &p)),
                )
            }
            CurveCommand::Fig8 { n, q2, l_max } => {
                if n < 3 {
                    return Err(CliError::invalid("curve", "n must be at least 3"));
                }
                let q2 = q2.or(cfg.get("q2")?).unwrap_or(1.0 / n as f64);
                if !(0.0..=1.0).contains(&q2) {
                    return Err(CliError::invalid(
                        "curve",
                        format!("q2 = {q2} is not a probability"),
                    ));
                }
                let l_max = l_max.unwrap_or((n - 3) * n / 2);
                let points = reliability_curve(n, q2, l_max)
                    .map_err(|e| CliError::invalid("curve", e.to_string()))?;
                emit(out, &reliability_curve_csv(n, q2, &points))
            }
        },
        Command::Table2 { format } => {
            let rows =
                homeomorph_table().map_err(|e| CliError::invalid("table2", e.to_string()))?;
            let (text, pass) = render_homeomorph_table(&rows, &HOMEOMORPH_REFERENCE);
            match format {
                ReportFormat::Json => emit_json(
                    out,
                    "table2",
                    json!({ "q2": "1/m" }),
                    &json!({ "rows": rows, "pass": pass }),
                )?,
                ReportFormat::Text => emit(
                    out,
                    &format!("{text}{}\n", if pass { "PASS" } else { "FAIL" }),
                )?,
            }
            if pass {
                Ok(())
            } else {
                Err(CliError::invalid(
                    "table2",
                    "homeomorph rows do not match the reference values",
                ))
            }
        }
        Command::Synthesize { query, format } => {
            let text = std::fs::read_to_string(&query)
                .map_err(|e| CliError::invalid("io", format!("{}: {e}", query.display())))?;
            let q: SynthesisQuery = serde_json::from_str(&text)
                .map_err(|e| CliError::invalid("query", e.to_string()))?;
            let report =
                synthesize(&q).map_err(|e| CliError::invalid("synthesis", e.to_string()))?;
            match format {
                ReportFormat::Json => {
                    emit_json(out, "synthesize", json!({ "query": query }), &report)
                }
                ReportFormat::Text => emit(out, &synthesis_text(&report)),
            }
        }
        Command::Verify {
            target,
            params,
            claim,
            diameter,
        } => {
            let topology = resolve(&target, &params)?;
            let g = topology.as_graph().ok_or_else(|| {
                CliError::invalid("claim_failed", "the shared bus has no geodesics")
            })?;
            let class = verify_claim(g, claim.into(), diameter)
                .map_err(|m| CliError::invalid("claim_failed", m))?;
            let claim_name = match claim {
                ClaimArg::Geodetic => "geodetic",
                ClaimArg::Bigeodetic => "bigeodetic",
            };
            emit_json(
                out,
                "verify",
                json!({ "target": target, "claim": claim_name, "d": diameter }),
                &json!({ "holds": true, "class": class }),
            )
        }
    }
}

/// A readable file wins over a family spec of the same name.
fn resolve(target: &str, params: &[usize]) -> Result<Topology, CliError> {
    let spec = if Path::new(target).is_file() {
        if !params.is_empty() {
            return Err(CliError::usage("a file target takes no parameters"));
        }
        FamilySpec::FromFile(PathBuf::from(target))
    } else if params.is_empty() {
        target
            .parse()
            .map_err(|e: geonet::generators::GenError| CliError::invalid("family", e.to_string()))?
    } else {
        FamilySpec::from_parts(target, params)
            .map_err(|e| CliError::invalid("family", e.to_string()))?
    };
    generate(&spec).map_err(|e| CliError::invalid("family", e.to_string()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::invalid("io", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(
    out: Option<&Path>,
    command: &str,
    params: serde_json::Value,
    result: &T,
) -> Result<(), CliError> {
    let doc = json!({ "command": command, "params": params, "result": result });
    let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
    text.push('\n');
    emit(out, &text)
}

#[derive(Serialize)]
struct Analysis {
    topology: String,
    n: usize,
    m: usize,
    channels: usize,
    shared_medium: bool,
    diameter: u32,
    radius: u32,
    centers: Vec<usize>,
    eccentricity: Vec<u32>,
    /// Average reach `R(l)` for `l = 1..=d`.
    reach: Vec<f64>,
    distance_sum: u64,
    degrees: Option<DegreeSummary>,
    geodetic: Option<GeodeticClass>,
    connectivity: Option<usize>,
    hierarchy: Vec<Vec<usize>>,
    saturated: bool,
}

fn analyze(t: &Topology) -> Analysis {
    let p = topology_profile(t);
    let g = t.as_graph();
    Analysis {
        topology: t.label(),
        n: t.n(),
        m: g.map_or(0, |g| g.m()),
        channels: t.channel_count(),
        shared_medium: p.shared_medium,
        diameter: p.diameter,
        radius: p.radius,
        centers: p.centers.clone(),
        eccentricity: p.eccentricity.clone(),
        reach: p.reach_histogram(),
        distance_sum: p.distance_sum(),
        degrees: g.map(degree_summary),
        geodetic: classify(&p).ok(),
        connectivity: g.map(vertex_connectivity),
        hierarchy: p.hierarchy_layers(),
        saturated: p.saturated,
    }
}

impl Analysis {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "topology      {}", self.topology);
        let _ = writeln!(
            s,
            "n, m, channels {}, {}, {}",
            self.n, self.m, self.channels
        );
        let _ = writeln!(s, "diameter      {}", self.diameter);
        let _ = writeln!(s, "radius        {}", self.radius);
        let reach: Vec<String> = self.reach.iter().map(|r| format!("{r:.4}")).collect();
        let _ = writeln!(s, "reach R(l)    {}", reach.join(" "));
        if let Some(d) = &self.degrees {
            let _ = writeln!(
                s,
                "degree        {}..{} {:?}",
                d.min_deg, d.max_deg, d.classification
            );
        }
        match &self.geodetic {
            Some(c) => {
                let _ = writeln!(s, "geodetic      {} (max {} geodesics)", c.label, c.k);
            }
            None => {
                let _ = writeln!(s, "geodetic      n/a (shared medium)");
            }
        }
        if let Some(k) = self.connectivity {
            let _ = writeln!(s, "connectivity  {k}");
        }
        let _ = writeln!(s, "hierarchy     {} levels", self.hierarchy.len());
        s
    }
}

#[derive(Serialize)]
struct Economics {
    network_cost: f64,
    /// Channels in excess of a ring, `m_n - n`.
    l: Option<i64>,
    additional_relative_cost: Option<f64>,
    max_additional_relative_cost: f64,
    effectiveness: EffectivenessReport,
}

fn economics(t: &Topology, p: &CostParams, delta: f64) -> Economics {
    let profile = topology_profile(t);
    let effectiveness = effectiveness_from_profile(t, &profile, p);
    let n = t.n();
    let l = t.as_graph().map(|g| g.excess_channels());
    Economics {
        network_cost: network_cost(n, t.channel_count(), p),
        l,
        additional_relative_cost: l.map(|l| additional_relative_cost(n, l, delta)),
        max_additional_relative_cost: max_additional_relative_cost(n, delta),
        effectiveness,
    }
}

impl Economics {
    fn text(&self) -> String {
        let e = &self.effectiveness;
        let mut s = String::new();
        let _ = writeln!(s, "topology  {}", e.topology);
        let _ = writeln!(s, "C[n,m]    {:.4}", self.network_cost);
        if let Some(a) = self.additional_relative_cost {
            let _ = writeln!(
                s,
                "A(n,l)    {a:.4} (max {:.4})",
                self.max_additional_relative_cost
            );
        }
        let _ = writeln!(
            s,
            "V_R       {:.6} (busiest channel {:.6})",
            e.v_r, e.v_r_max
        );
        let _ = writeln!(s, "k0        {} ({:?} bound)", sci6(e.k0), e.binding);
        let _ = writeln!(s, "C_R       {}", sci6(e.c_r));
        let _ = writeln!(s, "chi       {}", sci6(e.chi));
        s
    }
}

fn reliability_text(r: &ReliabilityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "topology     {}", r.topology);
    let _ = writeln!(s, "method       {:?}", r.method);
    let _ = writeln!(s, "q1, q2       {}, {:.6}", r.q1, r.q2);
    if let Some((i, j)) = r.witness {
        let _ = writeln!(s, "worst pair   ({i},{j})");
    }
    let _ = writeln!(s, "Q            {:.4}", r.q);
    let _ = writeln!(s, "P            {:.4}", r.p);
    if let Some(se) = r.stderr {
        let _ = writeln!(s, "stderr       {}", sci6(se));
    }
    let _ = writeln!(s, "Q asymptotic {:.4}", r.q_asymptotic);
    for note in &r.notes {
        let _ = writeln!(s, "note         {note}");
    }
    s
}

fn synthesis_text(r: &SynthesisReport) -> String {
    let mut s = format!("policy {:?}, delta {}\n", r.policy, r.delta);
    s.push_str("rank  id                         n   d  P       chi          A       pareto\n");
    for c in &r.candidates {
        let _ = writeln!(
            s,
            "{:<5} {:<26} {:<3} {:<2} {:.4}  {}  {:<7.4} {}",
            c.rank,
            c.id,
            c.n,
            c.diameter,
            c.p,
            sci6(c.chi),
            c.a,
            if c.pareto { "yes" } else { "" }
        );
    }
    let _ = writeln!(s, "{} skipped", r.skipped.len());
    s
}
