//! Brute-force ground truth: exact longest-antipath search, antipath
//! existence, and exhaustive enumeration of labelled oriented graphs.

use thiserror::Error;

use crate::antipath::{validate_antipath, AntiPath, Orientation};
use crate::graph::OrientedGraph;

/// Default node-expansion budget for the searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {0} node expansions exhausted")]
    BudgetExhausted(u64),
    #[error("enumeration of oriented graphs on {0} vertices is too large")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub max_length: usize,
    /// A longest antipath found; `None` only for the graph on zero vertices.
    pub witness: Option<AntiPath>,
    /// `realized[o][len]` for `o` indexed as in [`Orientation::BOTH`] and `len ≤ max_length`.
    pub realized: [Vec<bool>; 2],
    /// False when the budget ran out; `max_length` is then only a lower bound.
    pub exact: bool,
    pub expansions: u64,
}

impl OracleResult {
    pub fn realizes(&self, len: usize, orient: Orientation) -> bool {
        let idx = orient_index(orient);
        self.realized[idx].get(len).copied().unwrap_or(false)
    }
}

fn orient_index(o: Orientation) -> usize {
    match o {
        Orientation::ForwardFirst => 0,
        Orientation::BackwardFirst => 1,
    }
}

struct Search<'a> {
    g: &'a OrientedGraph,
    on: Vec<bool>,
    path: Vec<usize>,
    budget: u64,
    expansions: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a OrientedGraph, budget: u64) -> Self {
        Search {
            g,
            on: vec![false; g.n()],
            path: Vec::with_capacity(g.n()),
            budget,
            expansions: 0,
            exhausted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.expansions += 1;
        if self.expansions > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn push(&mut self, v: usize) {
        self.on[v] = true;
        self.path.push(v);
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("non-empty path");
        self.on[v] = false;
    }
}

struct Longest {
    best: usize,
    witness: Vec<usize>,
    // Orientations realized by some path of length `best`.
    types: [bool; 2],
}

fn longest_dfs(s: &mut Search, out: bool, first_out: bool, acc: &mut Longest) {
    if !s.tick() {
        return;
    }
    let len = s.path.len() - 1;
    if len > acc.best {
        acc.best = len;
        acc.witness = s.path.clone();
        acc.types = [false; 2];
    }
    if len == acc.best && len > 0 {
        if len % 2 == 1 {
            // The reverse of an odd antipath has the other orientation.
            acc.types = [true; 2];
        } else {
            acc.types[if first_out { 0 } else { 1 }] = true;
        }
    }
    let remaining = s.g.n() - s.path.len();
    if len + remaining < acc.best || (len + remaining == acc.best && acc.types == [true; 2]) {
        return;
    }
    let end = *s.path.last().expect("non-empty path");
    for &w in s.g.neighbors(end, out) {
        if s.on[w] {
            continue;
        }
        s.push(w);
        longest_dfs(s, !out, first_out, acc);
        s.pop();
        if s.exhausted {
            return;
        }
    }
}

/// Exact longest antipath by depth-first search from every start vertex and
/// both initial directions (ascending, forward first).
pub fn longest_antipath(g: &OrientedGraph, budget: u64) -> OracleResult {
    let mut s = Search::new(g, budget);
    let mut acc = Longest {
        best: 0,
        witness: Vec::new(),
        types: [false; 2],
    };
    'outer: for start in 0..g.n() {
        for first_out in [true, false] {
            s.push(start);
            longest_dfs(&mut s, first_out, first_out, &mut acc);
            s.pop();
            if s.exhausted || (acc.best + 1 == g.n() && acc.types == [true; 2]) {
                break 'outer;
            }
        }
    }
    if acc.witness.is_empty() && g.n() > 0 {
        acc.witness = vec![0];
    }
    let max = acc.best;
    let realized = [0, 1].map(|o| {
        (0..=max)
            .map(|len| {
                if g.n() == 0 {
                    false
                } else if len == 0 || len < max || len % 2 == 1 {
                    true
                } else {
                    acc.types[o]
                }
            })
            .collect()
    });
    OracleResult {
        max_length: max,
        witness: (!acc.witness.is_empty())
            .then(|| validate_antipath(g, &acc.witness).expect("search follows alternation")),
        realized,
        exact: !s.exhausted,
        expansions: s.expansions,
    }
}

fn exists_dfs(s: &mut Search, out: bool, k: usize) -> bool {
    if !s.tick() {
        return false;
    }
    if s.path.len() - 1 == k {
        return true;
    }
    let end = *s.path.last().expect("non-empty path");
    for &w in s.g.neighbors(end, out) {
        if s.on[w] {
            continue;
        }
        s.push(w);
        if exists_dfs(s, !out, k) {
            return true;
        }
        s.pop();
        if s.exhausted {
            return false;
        }
    }
    false
}

/// An antipath of length `k` with the given orientation, if one exists.
pub fn search_antipath(
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
    budget: u64,
) -> Result<Option<AntiPath>, OracleError> {
    if k + 1 > g.n() {
        return Ok(None);
    }
    let mut s = Search::new(g, budget);
    for start in 0..g.n() {
        s.push(start);
        if exists_dfs(&mut s, orient.first_out(), k) {
            let p = validate_antipath(g, &s.path).expect("search follows alternation");
            return Ok(Some(p));
        }
        s.pop();
        if s.exhausted {
            return Err(OracleError::BudgetExhausted(budget));
        }
    }
    Ok(None)
}

pub fn has_antipath(g: &OrientedGraph, k: usize, orient: Orientation) -> Result<bool, OracleError> {
    has_antipath_with_budget(g, k, orient, DEFAULT_BUDGET)
}

pub fn has_antipath_with_budget(
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
    budget: u64,
) -> Result<bool, OracleError> {
    search_antipath(g, k, orient, budget).map(|p| p.is_some())
}

/// All labelled oriented graphs on `n` vertices: each of the `n(n−1)/2` pairs
/// is absent, forward or backward. Graph number `i` reads the base-3 digits
/// of `i` over the pairs `(u, v)`, `u < v`, in lexicographic order, least
/// significant digit first.
#[derive(Debug, Clone)]
pub struct OrientedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl OrientedGraphs {
    pub fn total(&self) -> u64 {
        3u64.pow(self.pairs.len() as u32)
    }

    /// Restricts the stream to indices `start..end` (for sharding).
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.total());
        self.next = start.min(self.end);
        self
    }

    pub fn graph_at(&self, mut index: u64) -> OrientedGraph {
        let mut edges = Vec::with_capacity(self.pairs.len());
        for &(u, v) in &self.pairs {
            match index % 3 {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            index /= 3;
        }
        OrientedGraph::from_edges(self.n, edges).expect("one orientation per pair")
    }
}

impl Iterator for OrientedGraphs {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        (self.next < self.end).then(|| {
            let g = self.graph_at(self.next);
            self.next += 1;
            g
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for OrientedGraphs {}

/// Enumerates labelled oriented graphs for `n ≤ 5`, or `n = 6` when
/// `allow_six` is set (about 14 million graphs).
pub fn enumerate_oriented_graphs(n: usize, allow_six: bool) -> Result<OrientedGraphs, OracleError> {
    if n > 6 || (n == 6 && !allow_six) {
        return Err(OracleError::TooLarge(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let end = 3u64.pow(pairs.len() as u32);
    Ok(OrientedGraphs {
        n,
        pairs,
        next: 0,
        end,
    })
}
