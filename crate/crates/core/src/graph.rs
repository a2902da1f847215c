//! Digraph and oriented-graph representation with degree summaries.
//!
//! Vertices are dense integers `0..n`. Adjacency lists are kept sorted so
//! every downstream search iterates neighbours in ascending order, and an
//! `n × n` bit matrix answers edge queries in constant time.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop edge ({0}, {0})")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edges ({0}, {1}) and ({1}, {0}) form a 2-cycle in an oriented graph")]
    TwoCycleInOriented(usize, usize),
}

/// Which family a graph belongs to: general digraphs may contain 2-cycles,
/// oriented graphs may not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Digraph,
    Oriented,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Digraph => "digraph",
            GraphKind::Oriented => "oriented",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Loop-free directed graph. At most one edge per direction between a pair.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    words: usize,
    matrix: Vec<u64>,
    edge_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Digraph {
            n,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            words,
            matrix: vec![0; n * words],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.set_bit(u, v);
            g.out_adj[u].push(v);
            g.in_adj[v].push(u);
            g.edge_count += 1;
        }
        for list in g.out_adj.iter_mut().chain(g.in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.matrix[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// True if `u` and `v` are joined in either direction.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Out-neighbours when `outgoing`, in-neighbours otherwise.
    #[inline]
    pub fn neighbors(&self, v: usize, outgoing: bool) -> &[usize] {
        if outgoing {
            &self.out_adj[v]
        } else {
            &self.in_adj[v]
        }
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn reverse(&self) -> Digraph {
        Digraph::from_edges(self.n, self.edges().map(|(u, v)| (v, u)))
            .expect("reversal preserves validity")
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }

    /// `δ̄⁰`: the smallest positive in- or out-degree, or 0 without edges.
    pub fn pseudo_semidegree(&self) -> usize {
        (0..self.n)
            .flat_map(|v| [self.out_degree(v), self.in_degree(v)])
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(0)
    }

    /// Scans every pair for a 2-cycle.
    pub fn first_two_cycle(&self) -> Option<(usize, usize)> {
        self.edges().find(|&(u, v)| u < v && self.has_edge(v, u))
    }

    /// Subgraph on the same vertex set keeping only edges accepted by `keep`.
    pub fn filter_edges<F>(&self, mut keep: F) -> Digraph
    where
        F: FnMut(usize, usize) -> bool,
    {
        let kept: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        Digraph::from_edges(self.n, kept).expect("subgraph of a valid digraph")
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A digraph with no 2-cycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedGraph(Digraph);

impl OrientedGraph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::try_from(Digraph::from_edges(n, edges)?)
    }

    pub fn empty(n: usize) -> Self {
        OrientedGraph(Digraph::empty(n))
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_digraph(self) -> Digraph {
        self.0
    }

    pub fn reverse(&self) -> OrientedGraph {
        OrientedGraph(self.0.reverse())
    }

    pub fn filter_edges<F>(&self, keep: F) -> OrientedGraph
    where
        F: FnMut(usize, usize) -> bool,
    {
        OrientedGraph(self.0.filter_edges(keep))
    }
}

impl TryFrom<Digraph> for OrientedGraph {
    type Error = GraphError;

    fn try_from(g: Digraph) -> Result<Self, GraphError> {
        match g.first_two_cycle() {
            Some((u, v)) => Err(GraphError::TwoCycleInOriented(u, v)),
            None => Ok(OrientedGraph(g)),
        }
    }
}

impl Deref for OrientedGraph {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}

impl AsRef<Digraph> for OrientedGraph {
    fn as_ref(&self) -> &Digraph {
        &self.0
    }
}

impl AsRef<Digraph> for Digraph {
    fn as_ref(&self) -> &Digraph {
        self
    }
}

/// Either kind of graph, as produced by parsers that read the kind from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Digraph(Digraph),
    Oriented(OrientedGraph),
}

impl AnyGraph {
    pub fn kind(&self) -> GraphKind {
        match self {
            AnyGraph::Digraph(_) => GraphKind::Digraph,
            AnyGraph::Oriented(_) => GraphKind::Oriented,
        }
    }

    pub fn digraph(&self) -> &Digraph {
        match self {
            AnyGraph::Digraph(g) => g,
            AnyGraph::Oriented(g) => g,
        }
    }
}

/// Validated construction for either graph kind.
pub fn build_graph<I>(n: usize, edges: I, kind: GraphKind) -> Result<AnyGraph, GraphError>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let g = Digraph::from_edges(n, edges)?;
    Ok(match kind {
        GraphKind::Digraph => AnyGraph::Digraph(g),
        GraphKind::Oriented => AnyGraph::Oriented(OrientedGraph::try_from(g)?),
    })
}

/// Per-vertex degrees with the semidegree `δ⁰` and pseudo-semidegree `δ̄⁰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d_out: Vec<usize>,
    pub d_in: Vec<usize>,
    pub delta0: usize,
    pub pseudo_delta0: usize,
}

impl DegreeProfile {
    pub fn of(g: &Digraph) -> Self {
        let d_out: Vec<usize> = (0..g.n()).map(|v| g.out_degree(v)).collect();
        let d_in: Vec<usize> = (0..g.n()).map(|v| g.in_degree(v)).collect();
        let delta0 = d_out.iter().chain(&d_in).copied().min().unwrap_or(0);
        let pseudo_delta0 = d_out
            .iter()
            .chain(&d_in)
            .copied()
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(0);
        DegreeProfile {
            d_out,
            d_in,
            delta0,
            pseudo_delta0,
        }
    }
}
