//! Plain-text graph files and JSON certificates.
//!
//! Graph file: a header line `oriented <n> <m>` or `digraph <n> <m>`, then
//! `m` lines `u v` with 0-based vertex ids. Emitted files list edges in
//! lexicographic order, so equal graphs have byte-identical files and equal
//! hashes. The parser also tolerates blank lines and `#` comments.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::antipath::{validate_anticycle, validate_antipath, Orientation, PathError};
use crate::graph::{build_graph, AnyGraph, Digraph, GraphError, GraphKind};
use crate::pathfinder::{SearchOutcome, Violation};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| parse_err(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<AnyGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines.next().ok_or_else(|| {
        parse_err(
            1,
            1,
            "missing header `oriented <n> <m>` or `digraph <n> <m>`",
        )
    })?;
    let htoks = tokens(header);
    if htoks.len() != 3 {
        return Err(parse_err(
            hline,
            1,
            "header must be `oriented <n> <m>` or `digraph <n> <m>`",
        ));
    }
    let kind = match htoks[0].1 {
        "oriented" => GraphKind::Oriented,
        "digraph" => GraphKind::Digraph,
        other => {
            return Err(parse_err(
                hline,
                htoks[0].0,
                format!("unknown graph kind `{other}`"),
            ))
        }
    };
    let n = number(hline, htoks[1], "vertex count")?;
    let m = number(hline, htoks[2], "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut origin: HashMap<(usize, usize), usize> = HashMap::with_capacity(m);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        let toks = tokens(line);
        if toks.len() != 2 {
            return Err(parse_err(ln, 1, "edge line must be `u v`"));
        }
        let u = number(ln, toks[0], "vertex id")?;
        let v = number(ln, toks[1], "vertex id")?;
        for (col, x) in [(toks[0].0, u), (toks[1].0, v)] {
            if x >= n {
                return Err(parse_err(ln, col, format!("vertex {x} is outside 0..{n}")));
            }
        }
        if edges.len() == m {
            return Err(parse_err(
                ln,
                1,
                format!("more than the declared {m} edges"),
            ));
        }
        origin.entry((u, v)).or_insert(ln);
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    build_graph(n, edges, kind).map_err(|e| {
        let line = match &e {
            GraphError::LoopEdge(v) => origin.get(&(*v, *v)).copied(),
            GraphError::DuplicateEdge(u, v) => {
                // The duplicate is the second occurrence; report the first.
                origin.get(&(*u, *v)).copied()
            }
            GraphError::TwoCycleInOriented(u, v) => {
                let a = origin.get(&(*u, *v)).copied().unwrap_or(0);
                let b = origin.get(&(*v, *u)).copied().unwrap_or(0);
                Some(a.max(b))
            }
            GraphError::VertexOutOfRange { .. } => None,
        };
        parse_err(line.unwrap_or(hline), 1, e.to_string())
    })
}

/// Canonical file text: header plus lexicographically sorted edges.
pub fn emit_graph(kind: GraphKind, g: &Digraph) -> String {
    let mut out = format!("{} {} {}\n", kind, g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn emit_any(g: &AnyGraph) -> String {
    emit_graph(g.kind(), g.digraph())
}

/// Hex SHA-256 of the canonical file bytes.
pub fn graph_hash(g: &AnyGraph) -> String {
    hex::encode(Sha256::digest(emit_any(g).as_bytes()))
}

/// Graphviz rendering of a graph.
pub fn to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -> {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Antipath,
    Anticycle,
    Violation,
    NotGuaranteed,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Antipath => "antipath",
            CertificateKind::Anticycle => "anticycle",
            CertificateKind::Violation => "violation",
            CertificateKind::NotGuaranteed => "not_guaranteed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub step: String,
    pub witness: usize,
    pub shortfall: String,
    pub observed: usize,
    pub required: usize,
    /// Asserted pseudo-semidegree bound as `num/den`.
    pub bound: String,
}

impl From<&Violation> for ViolationRecord {
    fn from(v: &Violation) -> Self {
        ViolationRecord {
            step: v.step.as_str().into(),
            witness: v.witness,
            shortfall: v.shortfall.as_str().into(),
            observed: v.observed,
            required: v.required,
            bound: v.bound.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph_hash: String,
    pub kind: CertificateKind,
    pub vertices: Vec<usize>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationRecord>,
}

impl Certificate {
    pub fn from_outcome(
        graph_hash: String,
        k: usize,
        orientation: Orientation,
        outcome: &SearchOutcome,
    ) -> Self {
        let mut cert = Certificate {
            graph_hash,
            kind: CertificateKind::Antipath,
            vertices: Vec::new(),
            k,
            orientation: Some(orientation),
            engine_version: ENGINE_VERSION.into(),
            reason: None,
            violation: None,
        };
        match outcome {
            SearchOutcome::Found(p) => cert.vertices = p.verts().to_vec(),
            SearchOutcome::NotGuaranteed {
                reason,
                best_path,
                violation,
            } => {
                cert.kind = CertificateKind::NotGuaranteed;
                cert.vertices = best_path.verts().to_vec();
                cert.reason = Some(reason.clone());
                cert.violation = violation.as_ref().map(ViolationRecord::from);
            }
            SearchOutcome::HypothesisViolation(v) => {
                cert.kind = CertificateKind::Violation;
                cert.vertices = vec![v.witness];
                cert.violation = Some(v.into());
            }
        }
        cert
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("graph hash mismatch: certificate has {expected}, graph is {actual}")]
    HashMismatch { expected: String, actual: String },
    #[error("certificate kind `{0}` carries no verifiable path")]
    NotPositive(CertificateKind),
    #[error("{0}")]
    Path(#[from] PathError),
    #[error("declared length {declared} but the vertices give {actual}")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("declared orientation {declared} but the path is {actual}")]
    OrientationMismatch {
        declared: Orientation,
        actual: Orientation,
    },
    #[error("antipath certificate lacks an orientation")]
    MissingOrientation,
}

/// Re-validates a certificate against the graph it claims to describe.
pub fn verify_certificate(g: &AnyGraph, cert: &Certificate) -> Result<(), VerifyError> {
    let actual = graph_hash(g);
    if actual != cert.graph_hash {
        return Err(VerifyError::HashMismatch {
            expected: cert.graph_hash.clone(),
            actual,
        });
    }
    match cert.kind {
        CertificateKind::Antipath => {
            let p = validate_antipath(g.digraph(), &cert.vertices)?;
            if p.len() != cert.k {
                return Err(VerifyError::LengthMismatch {
                    declared: cert.k,
                    actual: p.len(),
                });
            }
            let declared = cert.orientation.ok_or(VerifyError::MissingOrientation)?;
            match p.orientation() {
                Some(o) if o != declared => Err(VerifyError::OrientationMismatch {
                    declared,
                    actual: o,
                }),
                _ => Ok(()),
            }
        }
        CertificateKind::Anticycle => {
            let c = validate_anticycle(g.digraph(), &cert.vertices)?;
            if c.len() != cert.k {
                return Err(VerifyError::LengthMismatch {
                    declared: cert.k,
                    actual: c.len(),
                });
            }
            Ok(())
        }
        kind => Err(VerifyError::NotPositive(kind)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_tournament_union;
    use crate::graph::OrientedGraph;
    use crate::pathfinder::find_antipath;

    #[test]
    fn parse_and_emit() {
        let g = parse_graph("oriented 3 3\n1 2\n0 1\n2 0\n").unwrap();
        assert_eq!(g.kind(), GraphKind::Oriented);
        assert_eq!(emit_any(&g), "oriented 3 3\n0 1\n1 2\n2 0\n");
        let again = parse_graph(&emit_any(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# triangle\n\ndigraph 2 2\n0 1\n\n1 0\n").unwrap();
        assert_eq!(g.kind(), GraphKind::Digraph);
        assert_eq!(g.digraph().edge_count(), 2);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_graph("oriented 2 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("2-cycle"));

        let e = parse_graph("oriented 3 1\n0  x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));

        let e = parse_graph("oriented 3 1\n0 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));

        let e = parse_graph("directed 3 1\n0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));

        let e = parse_graph("oriented 3 2\n0 1\n").unwrap_err();
        assert!(e.message.contains("declares 2"));

        let e = parse_graph("oriented 3 1\n0 1\n1 2\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse_graph("oriented 3 2\n0 1\n0 1\n").unwrap_err();
        assert!(e.message.contains("duplicate"));

        let e = parse_graph("oriented 3 1\n1 1\n").unwrap_err();
        assert_eq!(e.line, 2);

        assert!(parse_graph("").is_err());
    }

    #[test]
    fn hash_is_order_independent() {
        let a = parse_graph("oriented 3 2\n0 1\n2 1\n").unwrap();
        let b = parse_graph("oriented 3 2\n2 1\n0 1\n").unwrap();
        assert_eq!(graph_hash(&a), graph_hash(&b));
        assert_eq!(graph_hash(&a).len(), 64);
    }

    #[test]
    fn certificate_round_trip_and_mutation() {
        let g = gen_tournament_union(7, 1).unwrap();
        let any = AnyGraph::Oriented(g.clone());
        let out = find_antipath(&g, 4, Orientation::ForwardFirst).unwrap();
        let cert = Certificate::from_outcome(graph_hash(&any), 4, Orientation::ForwardFirst, &out);
        let parsed = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(parsed, cert);
        assert_eq!(verify_certificate(&any, &parsed), Ok(()));

        let mut swapped = cert.clone();
        swapped.vertices.swap(1, 2);
        assert!(matches!(
            verify_certificate(&any, &swapped),
            Err(VerifyError::Path(
                PathError::NotAlternating(_) | PathError::MissingEdge(_)
            ))
        ));

        let mut wrong = cert.clone();
        wrong.orientation = Some(Orientation::BackwardFirst);
        assert!(matches!(
            verify_certificate(&any, &wrong),
            Err(VerifyError::OrientationMismatch { .. })
        ));

        let other = AnyGraph::Oriented(gen_tournament_union(7, 2).unwrap());
        assert!(matches!(
            verify_certificate(&other, &cert),
            Err(VerifyError::HashMismatch { .. })
        ));
    }

    #[test]
    fn negative_certificates_do_not_verify() {
        let g = gen_tournament_union(3, 1).unwrap();
        let any = AnyGraph::Oriented(g.clone());
        let out = find_antipath(&g, 3, Orientation::ForwardFirst).unwrap();
        let cert = Certificate::from_outcome(graph_hash(&any), 3, Orientation::ForwardFirst, &out);
        assert_eq!(cert.kind, CertificateKind::NotGuaranteed);
        assert!(cert.violation.is_some());
        assert_eq!(
            verify_certificate(&any, &cert),
            Err(VerifyError::NotPositive(CertificateKind::NotGuaranteed))
        );
    }

    #[test]
    fn anticycle_certificate() {
        let g = OrientedGraph::from_edges(4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        let any = AnyGraph::Oriented(g);
        let cert = Certificate {
            graph_hash: graph_hash(&any),
            kind: CertificateKind::Anticycle,
            vertices: vec![0, 1, 2, 3],
            k: 4,
            orientation: None,
            engine_version: ENGINE_VERSION.into(),
            reason: None,
            violation: None,
        };
        assert_eq!(verify_certificate(&any, &cert), Ok(()));
    }

    #[test]
    fn dot_output() {
        let g = gen_tournament_union(3, 1).unwrap();
        let dot = to_dot(&g);
        assert!(dot.contains("0 -> 1;") && dot.contains("2 -> 0;"));
    }
}
