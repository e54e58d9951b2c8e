// SPDX-License-Identifier: Apache-2.0

//! Text formats: edge lists, DOT, and the CSV curve tables.
//!
//! Edge-list format: the first data line is `n m`, followed by `m` lines
//! `u v` with 0-based vertex indices. Anything after `#` on a line is a
//! comment; blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::economics::{CostParams, EffectivenessCurve};
use crate::graph::{build_graph, Graph, GraphError};
use crate::reliability::{CurvePoint, HomeomorphRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(syntax(
            line,
            format!("expected two integers, found '{text}'"),
        ));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| syntax(line, format!("'{s}' is not a non-negative integer")))
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

/// Parses the edge-list format. A comment of the form `# multiplicity k`
/// sets the channel multiplicity (default 1).
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut multiplicity = 1;
    for (i, raw) in text.lines().enumerate() {
        let Some((_, comment)) = raw.split_once('#') else {
            continue;
        };
        let mut words = comment.split_whitespace();
        if words.next() == Some("multiplicity") {
            let value = words.next().unwrap_or("");
            multiplicity = value
                .parse()
                .map_err(|_| syntax(i + 1, format!("bad multiplicity '{value}'")))?;
        }
    }
    let mut data = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });
    let (header_line, header) = data
        .next()
        .ok_or_else(|| syntax(1, "missing 'n m' header"))?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in data {
        if edges.len() == m {
            return Err(syntax(line, format!("more than the declared {m} edges")));
        }
        edges.push(parse_pair(line, content)?);
        last_line = line;
    }
    if edges.len() < m {
        return Err(syntax(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Ok(build_graph(n, &edges, multiplicity)?)
}

pub fn read_edge_list_file(path: &Path) -> Result<Graph, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_edge_list(&text)
}

/// Writes `g` in edge-list form, sorted. A multiplicity other than 1 is
/// noted in a trailing comment.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if g.multiplicity() != 1 {
        let _ = writeln!(out, "# multiplicity {}", g.multiplicity());
    }
    out
}

/// Undirected DOT text; parallel channels appear as a `multiplicity` attribute.
pub fn export_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    let _ = writeln!(out, "  label=\"{}\";", g.label());
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        if g.multiplicity() == 1 {
            let _ = writeln!(out, "  {u} -- {v};");
        } else {
            let _ = writeln!(out, "  {u} -- {v} [multiplicity={}];", g.multiplicity());
        }
    }
    out.push_str("}\n");
    out
}

/// Cost-effectiveness curve as CSV (`family,n,chi,k0,C_R`), preceded by
/// `#` lines recording the parameters and skipped cells.
pub fn effectiveness_curve_csv(curve: &EffectivenessCurve) -> String {
    let CostParams {
        c1,
        c2,
        c_cp,
        c_c,
        c_ct,
        s_pc,
        s_p,
    } = curve.params;
    let mut out =
        format!("# c1={c1} c2={c2} c_cp={c_cp} c_c={c_c} c_ct={c_ct} s_pc={s_pc} s_p={s_p}\n");
    for skip in &curve.skipped {
        let _ = writeln!(
            out,
            "# skipped {} n={}: {}",
            skip.family, skip.n, skip.reason
        );
    }
    out.push_str("family,n,chi,k0,C_R\n");
    for r in &curve.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.family,
            r.n,
            sci6(r.chi),
            sci6(r.k0),
            sci6(r.c_r)
        );
    }
    out
}

/// Failure-probability curve as CSV (`l,Q`) with a parameter comment line.
pub fn reliability_curve_csv(n: usize, q2: f64, points: &[CurvePoint]) -> String {
    let mut out = format!("# n={n} q2={q2}\nl,Q\n");
    for p in points {
        let _ = writeln!(out, "{},{}", p.l, sci6(p.q));
    }
    out
}

/// Scientific notation with six significant digits.
pub fn sci6(x: f64) -> String {
    format!("{x:.5e}")
}

/// The four-row homeomorph table compared against the reference reliability
/// figures. Returns the text and whether every row matched.
pub fn render_homeomorph_table(
    rows: &[HomeomorphRow],
    reference: &[(u32, usize, f64, u64)],
) -> (String, bool) {
    let mut out = String::from("d   n   reliability  A(n,l)     check\n");
    let mut all = true;
    for (i, row) in rows.iter().enumerate() {
        let ok = reference.get(i).is_some_and(|&(d, n, p, den)| {
            row.diameter == d
                && row.n == n
                && (row.p_4dp - p).abs() <= 5e-5
                && row.a_over_delta.num == 1
                && row.a_over_delta.den == den
        });
        all &= ok;
        let _ = writeln!(
            out,
            "{:<3} {:<3} {:.4}       delta*{:<4} {}",
            row.diameter,
            row.n,
            row.p_4dp,
            row.a_over_delta.to_string(),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    all &= rows.len() == reference.len();
    (out, all)
}

/// Reference `(d, n, reliability, 1/(A/delta))` rows for `t = 0..=3`.
pub const HOMEOMORPH_REFERENCE: [(u32, usize, f64, u64); 4] = [
    (2, 10, 0.9911, 2),
    (3, 15, 0.9950, 3),
    (4, 20, 0.9968, 4),
    (5, 25, 0.9977, 5),
];
