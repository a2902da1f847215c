//! Antidirected paths and cycles, and their certificate-grade validators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Digraph;

/// Whether an antipath's first edge leaves (`ForwardFirst`) or enters
/// (`BackwardFirst`) its first vertex.
///
/// For odd length the two types are reverses of one path. For even length
/// they are distinct: a forward-first path has two source endpoints, a
/// backward-first one two sink endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    ForwardFirst,
    BackwardFirst,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::ForwardFirst, Orientation::BackwardFirst];

    pub fn flip(self) -> Self {
        match self {
            Orientation::ForwardFirst => Orientation::BackwardFirst,
            Orientation::BackwardFirst => Orientation::ForwardFirst,
        }
    }

    pub fn from_first_out(first_out: bool) -> Self {
        if first_out {
            Orientation::ForwardFirst
        } else {
            Orientation::BackwardFirst
        }
    }

    pub fn first_out(self) -> bool {
        self == Orientation::ForwardFirst
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::ForwardFirst => "forward-first",
            Orientation::BackwardFirst => "backward-first",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "forward-first" => Ok(Orientation::ForwardFirst),
            "backward-first" => Ok(Orientation::BackwardFirst),
            other => Err(format!(
                "unknown orientation `{other}` (expected forward-first or backward-first)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty vertex sequence")]
    Empty,
    #[error("vertex {0} is outside the graph")]
    VertexOutOfRange(usize),
    #[error("vertex {0} appears more than once")]
    NotDistinct(usize),
    #[error("no edge between positions {0} and the next vertex")]
    MissingEdge(usize),
    #[error("position {0} and the next vertex are joined in both directions")]
    AmbiguousEdge(usize),
    #[error("edge directions do not alternate at position {0}")]
    NotAlternating(usize),
    #[error("cycle has odd length {0}")]
    OddCycleLength(usize),
    #[error("cycle length {0} is below 4")]
    CycleTooShort(usize),
}

/// Validated antidirected path `v_0 … v_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AntiPath {
    verts: Vec<usize>,
    first_out: bool,
}

impl AntiPath {
    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn into_verts(self) -> Vec<usize> {
        self.verts
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        self.verts[self.verts.len() - 1]
    }

    /// `None` for a single vertex.
    pub fn orientation(&self) -> Option<Orientation> {
        (!self.is_empty()).then(|| Orientation::from_first_out(self.first_out))
    }

    /// Whether edge `j` (between `v_j` and `v_{j+1}`) points from `v_j` to `v_{j+1}`.
    pub fn edge_forward(&self, j: usize) -> bool {
        self.first_out ^ (j % 2 == 1)
    }

    /// Whether `verts[0]` is a source (all its path edges leave it).
    pub(crate) fn first_is_source(&self) -> bool {
        self.first_out
    }

    /// Whether the last vertex is a source.
    pub(crate) fn last_is_source(&self) -> bool {
        !self.edge_forward(self.len() - 1)
    }

    pub fn reversed(&self) -> AntiPath {
        let mut verts = self.verts.clone();
        verts.reverse();
        let first_out = if self.is_empty() {
            self.first_out
        } else {
            self.last_is_source()
        };
        AntiPath { verts, first_out }
    }

    /// Consecutive sub-path `v_start … v_{start+len}`.
    pub fn window(&self, start: usize, len: usize) -> AntiPath {
        AntiPath {
            verts: self.verts[start..=start + len].to_vec(),
            first_out: self.edge_forward(start),
        }
    }
}

/// Validated antidirected cycle `v_0 … v_m v_0` of even length `m + 1 ≥ 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AntiCycle {
    verts: Vec<usize>,
    first_out: bool,
}

impl AntiCycle {
    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    /// Number of edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Whether `verts[0]` is a source on the cycle.
    pub fn starts_at_source(&self) -> bool {
        self.first_out
    }

    /// Rotation starting at position `shift`.
    pub fn rotated(&self, shift: usize) -> AntiCycle {
        let mut verts = self.verts.clone();
        verts.rotate_left(shift % self.verts.len());
        AntiCycle {
            verts,
            first_out: self.first_out ^ (shift % 2 == 1),
        }
    }
}

fn check_vertices(g: &Digraph, verts: &[usize]) -> Result<(), PathError> {
    if verts.is_empty() {
        return Err(PathError::Empty);
    }
    let mut seen = HashSet::with_capacity(verts.len());
    for &v in verts {
        if v >= g.n() {
            return Err(PathError::VertexOutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(PathError::NotDistinct(v));
        }
    }
    Ok(())
}

fn direction(g: &Digraph, u: usize, v: usize, pos: usize) -> Result<bool, PathError> {
    match (g.has_edge(u, v), g.has_edge(v, u)) {
        (true, false) => Ok(true),
        (false, true) => Ok(false),
        (false, false) => Err(PathError::MissingEdge(pos)),
        (true, true) => Err(PathError::AmbiguousEdge(pos)),
    }
}

/// Checks that `verts` is an antipath of `g` in O(|verts|).
pub fn validate_antipath(g: &Digraph, verts: &[usize]) -> Result<AntiPath, PathError> {
    check_vertices(g, verts)?;
    let mut first_out = true;
    let mut prev = None;
    for (i, pair) in verts.windows(2).enumerate() {
        let fwd = direction(g, pair[0], pair[1], i)?;
        match prev {
            None => first_out = fwd,
            Some(p) if p == fwd => return Err(PathError::NotAlternating(i)),
            _ => {}
        }
        prev = Some(fwd);
    }
    Ok(AntiPath {
        verts: verts.to_vec(),
        first_out,
    })
}

/// Checks that `verts`, read cyclically, is an anticycle of `g`.
pub fn validate_anticycle(g: &Digraph, verts: &[usize]) -> Result<AntiCycle, PathError> {
    let len = verts.len();
    if len % 2 == 1 {
        return Err(PathError::OddCycleLength(len));
    }
    if len < 4 {
        return Err(PathError::CycleTooShort(len));
    }
    let path = validate_antipath(g, verts)?;
    // Closing edge v_m – v_0 must continue the alternation at both ends.
    let closing = direction(g, verts[len - 1], verts[0], len - 1)?;
    if closing == path.edge_forward(len - 2) {
        return Err(PathError::NotAlternating(len - 1));
    }
    Ok(AntiCycle {
        verts: path.verts,
        first_out: path.first_out,
    })
}
