//! Peeling the bipartite double of a digraph.
//!
//! Every vertex `v` splits into an out-stub (carrying the edges leaving `v`)
//! and an in-stub (carrying the edges entering `v`). Stubs of degree at most
//! `s` are deleted until none remain; the surviving edges form a subdigraph
//! whose positive in- and out-degrees all exceed `s`.

use std::collections::VecDeque;

use super::Bound;
use crate::graph::Digraph;

/// Subdigraph on the edges surviving the peel at threshold `s`. The result is
/// the unique maximal subgraph with every positive semidegree above `s`, so it
/// does not depend on deletion order.
pub fn peel(g: &Digraph, s: Bound) -> Digraph {
    let n = g.n();
    if s < Bound::from_integer(0) {
        return g.clone();
    }
    // deg ≤ s  ⇔  deg ≤ ⌊s⌋ for integer degrees.
    let limit = s.floor().to_integer() as usize;
    // Stub `v` is the out-stub of v, stub `n + v` its in-stub.
    let mut deg: Vec<usize> = (0..n)
        .map(|v| g.out_degree(v))
        .chain((0..n).map(|v| g.in_degree(v)))
        .collect();
    let mut removed = vec![false; 2 * n];
    let mut queue = VecDeque::new();
    for (x, &d) in deg.iter().enumerate() {
        if d <= limit {
            removed[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let (v, outgoing) = if x < n { (x, true) } else { (x - n, false) };
        for &w in g.neighbors(v, outgoing) {
            let y = if outgoing { n + w } else { w };
            if removed[y] {
                continue;
            }
            deg[y] -= 1;
            if deg[y] <= limit {
                removed[y] = true;
                queue.push_back(y);
            }
        }
    }
    g.filter_edges(|u, v| !removed[u] && !removed[n + v])
}
