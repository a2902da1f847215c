//! Instance generators: the extremal constructions and seeded random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Digraph, OrientedGraph};
use crate::pathfinder::{pair, Fact1Instance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("regular tournaments need an odd order, got k = {0}")]
    EvenK(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Seeded RNG used by every generator and stress runner.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `copies` disjoint rotational regular tournaments on `k` vertices: within a
/// copy, vertex `i` beats `i+1, …, i+(k−1)/2` modulo `k`.
pub fn gen_tournament_union(k: usize, copies: usize) -> Result<OrientedGraph, GenError> {
    if k % 2 == 0 {
        return Err(GenError::EvenK(k));
    }
    let half = (k - 1) / 2;
    let edges = (0..copies).flat_map(|c| {
        (0..k).flat_map(move |i| (1..=half).map(move |d| (c * k + i, c * k + (i + d) % k)))
    });
    Ok(OrientedGraph::from_edges(k * copies, edges).expect("rotational tournament is oriented"))
}

/// Blow-up of the directed cycle of length `ell`: each cycle vertex becomes
/// an independent class of size `s`, and every vertex of class `i` points to
/// every vertex of class `i + 1 mod ell`.
pub fn gen_cycle_blowup(ell: usize, s: usize) -> Result<OrientedGraph, GenError> {
    if ell < 3 {
        return Err(GenError::InvalidParameter(format!(
            "cycle length must be at least 3, got {ell}"
        )));
    }
    if s == 0 {
        return Err(GenError::InvalidParameter(
            "class size must be positive".into(),
        ));
    }
    let edges = (0..ell).flat_map(|c| {
        let next = (c + 1) % ell;
        (0..s).flat_map(move |a| (0..s).map(move |b| (c * s + a, next * s + b)))
    });
    Ok(OrientedGraph::from_edges(ell * s, edges).expect("blow-up of a cycle is oriented"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RandomKind {
    /// Every pair oriented uniformly at random.
    Tournament,
    /// Each pair present with probability `p`, then oriented uniformly.
    Oriented(f64),
}

pub fn gen_random(n: usize, kind: RandomKind, seed: u64) -> Result<OrientedGraph, GenError> {
    let p = match kind {
        RandomKind::Tournament => 1.0,
        RandomKind::Oriented(p) if (0.0..=1.0).contains(&p) => p,
        RandomKind::Oriented(p) => {
            return Err(GenError::InvalidParameter(format!(
                "edge probability {p} is outside [0, 1]"
            )))
        }
    };
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if p < 1.0 && !rng.random_bool(p) {
                continue;
            }
            edges.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Ok(OrientedGraph::from_edges(n, edges).expect("one orientation per pair"))
}

/// Uniform digraph with exactly `m` edges (2-cycles allowed).
pub fn gen_random_digraph(n: usize, m: usize, seed: u64) -> Result<Digraph, GenError> {
    let max = n * n.saturating_sub(1);
    if m > max {
        return Err(GenError::InvalidParameter(format!(
            "{m} edges do not fit in a digraph on {n} vertices"
        )));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut rng = rng(seed);
    let (chosen, _) = pairs.partial_shuffle(&mut rng, m);
    Ok(Digraph::from_edges(n, chosen.iter().copied()).expect("distinct non-loop pairs"))
}

/// Relabels `g` by `perm` (vertex `v` becomes `perm[v]`).
pub fn relabel(g: &OrientedGraph, perm: &[usize]) -> OrientedGraph {
    OrientedGraph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v])))
        .expect("relabelling preserves orientation")
}

/// Uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random chord-search instance with `1 ≤ m ≤ max_m`.
///
/// One third of the instances use the path layout `x_j = v_j`, `y_j = v_j`
/// over a single vertex sequence; the rest draw `X` and `Y` disjoint. Edge
/// densities vary per instance so both sides of the counting threshold occur.
pub fn gen_fact1_instance(max_m: usize, rng: &mut impl Rng) -> Fact1Instance {
    let m = rng.random_range(1..=max_m.max(1));
    let ell = rng.random_range(1..=m);
    let (x_seq, y_seq) = if rng.random_range(0..3) == 0 {
        let v = random_permutation(m + 1, rng);
        (v[..m].to_vec(), v[1..].to_vec())
    } else {
        let v = random_permutation(2 * m, rng);
        (v[..m].to_vec(), v[m..].to_vec())
    };
    let (p0, pm): (f64, f64) = (rng.random(), rng.random());
    let (x0, ym) = (x_seq[0], y_seq[m - 1]);
    let f0: Vec<_> = y_seq
        .iter()
        .filter(|&&y| y != x0 && rng.random_bool(p0))
        .map(|&y| pair(x0, y))
        .collect();
    let mut fm: Vec<_> = x_seq
        .iter()
        .filter(|&&x| x != ym && rng.random_bool(pm))
        .map(|&x| pair(x, ym))
        .collect();
    // Pairs away from x_0 and y_m must not matter.
    if m >= 3 {
        fm.push(pair(x_seq[1], y_seq[1]));
    }
    Fact1Instance::new(x_seq, y_seq, f0, fm, ell).expect("well-formed instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_tournament_union() {
        let g = gen_tournament_union(3, 1).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(g.degree_profile().delta0, 1);
    }

    #[test]
    fn tournament_union_is_regular() {
        for (k, copies) in [(3, 2), (5, 2), (7, 1), (9, 3)] {
            let g = gen_tournament_union(k, copies).unwrap();
            assert_eq!(g.n(), k * copies);
            assert_eq!(g.edge_count(), copies * k * (k - 1) / 2);
            for v in 0..g.n() {
                assert_eq!(g.out_degree(v), (k - 1) / 2);
                assert_eq!(g.in_degree(v), (k - 1) / 2);
            }
        }
        assert_eq!(gen_tournament_union(4, 1), Err(GenError::EvenK(4)));
    }

    #[test]
    fn blowup_arithmetic() {
        let g = gen_cycle_blowup(3, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 12));
        for v in 0..6 {
            assert_eq!((g.out_degree(v), g.in_degree(v)), (2, 2));
        }
        let c4 = gen_cycle_blowup(4, 1).unwrap();
        assert_eq!(
            c4.edges().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)]
        );
        assert!(gen_cycle_blowup(2, 3).is_err());
        assert!(gen_cycle_blowup(3, 0).is_err());
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = gen_random(20, RandomKind::Tournament, 7).unwrap();
        let b = gen_random(20, RandomKind::Tournament, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 190);
        let single = gen_random(1, RandomKind::Oriented(0.5), 3).unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));
        assert!(gen_random(4, RandomKind::Oriented(1.5), 0).is_err());
        let d = gen_random_digraph(6, 20, 1).unwrap();
        assert_eq!(d.edge_count(), 20);
        assert_eq!(d, gen_random_digraph(6, 20, 1).unwrap());
        assert!(gen_random_digraph(3, 7, 0).is_err());
    }

    #[test]
    fn random_tournaments_usually_have_semidegree_five() {
        // Empirical sanity check at n = 20; no hard threshold on the count.
        let good = (0..100)
            .filter(|&s| {
                gen_random(20, RandomKind::Tournament, s)
                    .unwrap()
                    .degree_profile()
                    .delta0
                    >= 5
            })
            .count();
        assert!(good > 50, "only {good} of 100 tournaments had δ⁰ ≥ 5");
    }
}
