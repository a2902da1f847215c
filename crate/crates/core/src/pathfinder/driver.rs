//! The search drivers: pseudo-semidegree route and edge-density route.

use super::peel::peel;
use super::steps::{close_anticycle, extend_anticycle, extend_endpoints, rotate_even_step};
use super::{
    dense_peel_threshold, meets, theorem_bound, Bound, SearchError, SearchOutcome, Shortfall, Step,
    StepError, Violation,
};
use crate::antipath::{validate_antipath, AntiPath, Orientation};
use crate::graph::OrientedGraph;

/// Record of the steps taken by the last seed the driver ran.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    /// Path length after each extension or step, in order.
    pub lengths: Vec<usize>,
    /// Number of seed edges tried.
    pub seeds: usize,
}

/// Leftmost window of `k` consecutive edges realizing `orient`, looking at `p`
/// before its reverse.
pub fn extract_window(
    p: &AntiPath,
    k: usize,
    orient: Orientation,
) -> Result<AntiPath, SearchError> {
    if k == 0 || k > p.len() {
        return Err(SearchError::NoMatchingWindow);
    }
    let want = orient.first_out();
    for q in [p.clone(), p.reversed()] {
        if let Some(s) = (0..=q.len() - k).find(|&s| q.edge_forward(s) == want) {
            return Ok(q.window(s, k));
        }
    }
    Err(SearchError::NoMatchingWindow)
}

fn single_edge(g: &OrientedGraph, orient: Orientation) -> Result<SearchOutcome, SearchError> {
    let (u, v) = g.edges().next().ok_or(SearchError::EmptyGraph)?;
    let verts = match orient {
        Orientation::ForwardFirst => [u, v],
        Orientation::BackwardFirst => [v, u],
    };
    Ok(SearchOutcome::Found(
        validate_antipath(g, &verts).expect("edge of the graph"),
    ))
}

/// Seeds `[u, w]` for every adjacent pair `u < w`, ascending. The order does
/// not depend on edge directions, so a run on the reversed graph mirrors a
/// run on the original.
fn seeds(g: &OrientedGraph) -> impl Iterator<Item = [usize; 2]> + '_ {
    (0..g.n()).flat_map(move |u| {
        let mut ws: Vec<usize> = g
            .out_neighbors(u)
            .iter()
            .chain(g.in_neighbors(u))
            .copied()
            .filter(|&w| w > u)
            .collect();
        ws.sort_unstable();
        ws.into_iter().map(move |w| [u, w])
    })
}

enum SeedRun {
    Found(AntiPath),
    Stuck(AntiPath, Violation),
}

fn run_seed(
    g: &OrientedGraph,
    seed: [usize; 2],
    k: usize,
    orient: Orientation,
    bound: Bound,
    trace: &mut Trace,
) -> Result<SeedRun, SearchError> {
    let mut p = validate_antipath(g, &seed).expect("seed is an edge");
    trace.lengths.clear();
    trace.lengths.push(p.len());
    loop {
        if p.len() >= k {
            if let Ok(w) = extract_window(&p, k, orient) {
                return Ok(SeedRun::Found(w));
            }
        }
        let next = if let Some(q) = extend_endpoints(g, &p) {
            Ok(q)
        } else if p.len() % 2 == 0 {
            rotate_even_step(g, &p, bound)
        } else if p.len() == 1 {
            // A stuck edge u → v means u has out-degree 1.
            let (u, v) = if g.has_edge(p.first(), p.last()) {
                (p.first(), p.last())
            } else {
                (p.last(), p.first())
            };
            let witness = if g.out_degree(u) <= g.in_degree(v) {
                u
            } else {
                v
            };
            Err(StepError::Violation(Violation {
                step: Step::Seed,
                witness,
                shortfall: Shortfall::EndpointDegree,
                observed: 1,
                required: 2,
                bound,
            }))
        } else {
            close_anticycle(g, &p, k).and_then(|c| extend_anticycle(g, &c, k))
        };
        match next {
            Ok(q) => {
                debug_assert_eq!(q.len(), p.len() + 1);
                p = q;
                trace.lengths.push(p.len());
            }
            Err(StepError::Violation(v)) => return Ok(SeedRun::Stuck(p, v)),
            Err(e) => return Err(SearchError::Contract(e)),
        }
    }
}

/// Finds an antipath of length `k` with the requested orientation.
///
/// When `δ̄⁰(g) ≥ (3k − 2)/4` the first seed always succeeds. Below the bound
/// the driver tries every seed and reports `NotGuaranteed` with the longest
/// path it reached if none succeeds.
pub fn find_antipath(
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
) -> Result<SearchOutcome, SearchError> {
    find_antipath_traced(g, k, orient).map(|(outcome, _)| outcome)
}

pub fn find_antipath_traced(
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
) -> Result<(SearchOutcome, Trace), SearchError> {
    let mut trace = Trace::default();
    match k {
        1 => return single_edge(g, orient).map(|o| (o, trace)),
        0 | 2 => return Err(SearchError::UnsupportedK(k)),
        _ => {}
    }
    if g.edge_count() == 0 {
        return Err(SearchError::EmptyGraph);
    }
    let bound = theorem_bound(k);
    let degree = g.pseudo_semidegree();
    let guaranteed = meets(degree, bound);

    let mut best: Option<AntiPath> = None;
    let mut first_violation = None;
    for seed in seeds(g) {
        trace.seeds += 1;
        match run_seed(g, seed, k, orient, bound, &mut trace)? {
            SeedRun::Found(p) => return Ok((SearchOutcome::Found(p), trace)),
            SeedRun::Stuck(_, v) if guaranteed => {
                return Ok((SearchOutcome::HypothesisViolation(v), trace));
            }
            SeedRun::Stuck(p, v) => {
                if best.as_ref().is_none_or(|b| p.len() > b.len()) {
                    best = Some(p);
                }
                first_violation.get_or_insert(v);
            }
        }
    }
    Ok((
        SearchOutcome::NotGuaranteed {
            reason: format!("pseudo-semidegree {degree} is below (3k-2)/4 = {bound}"),
            best_path: best.expect("at least one seed"),
            violation: first_violation,
        },
        trace,
    ))
}

fn two_edge_star(g: &OrientedGraph, orient: Orientation) -> Option<AntiPath> {
    // Forward-first needs a sink of in-degree 2, backward-first a source of out-degree 2.
    let outgoing = orient == Orientation::BackwardFirst;
    (0..g.n()).find_map(|v| match g.neighbors(v, outgoing) {
        [a, b, ..] => Some(validate_antipath(g, &[*a, v, *b]).expect("two-edge star")),
        _ => None,
    })
}

/// Finds an antipath of length `k` in a graph with more than
/// `(3k − 4)·n/2` edges by peeling to a subgraph of large pseudo-semidegree.
pub fn find_antipath_dense(
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
) -> Result<SearchOutcome, SearchError> {
    if k == 0 {
        return Err(SearchError::UnsupportedK(k));
    }
    if g.edge_count() == 0 {
        return Err(SearchError::EmptyGraph);
    }
    if k == 1 {
        return single_edge(g, orient);
    }
    if k == 2 {
        return Ok(match two_edge_star(g, orient) {
            Some(p) => SearchOutcome::Found(p),
            None => SearchOutcome::NotGuaranteed {
                reason: format!(
                    "{} edges do not exceed the {} needed for k = 2",
                    g.edge_count(),
                    g.n()
                ),
                best_path: validate_antipath(g, &{
                    let (u, v) = g.edges().next().expect("non-empty");
                    [u, v]
                })
                .expect("edge"),
                violation: None,
            },
        });
    }

    let target = theorem_bound(k);
    let dense = 2 * g.edge_count() > (3 * k - 4) * g.n();
    let first = peel(g, dense_peel_threshold(k));
    let mut candidates = vec![first];
    // For k ≡ 1 (mod 4) the threshold (3k−4)/4 only forces degrees ≥ (3k−3)/4,
    // one short of the integer ceiling of (3k−2)/4; peel once more at that ceiling.
    let ceiling = target.ceil().to_integer() - 1;
    if ceiling > dense_peel_threshold(k).floor().to_integer() {
        candidates.push(peel(g, Bound::from_integer(ceiling)));
    }
    for core in candidates {
        if core.edge_count() > 0 && meets(core.pseudo_semidegree(), target) {
            let core = OrientedGraph::try_from(core).expect("subgraph of an oriented graph");
            return find_antipath(&core, k, orient);
        }
    }

    let outcome = find_antipath(g, k, orient)?;
    Ok(match outcome {
        SearchOutcome::NotGuaranteed {
            best_path,
            violation,
            ..
        } => SearchOutcome::NotGuaranteed {
            reason: if dense {
                format!(
                    "peeling left no subgraph with pseudo-semidegree ≥ {target} (k ≡ 1 mod 4 rounding gap)"
                )
            } else {
                format!(
                    "{} edges do not exceed (3k-4)n/2 = {}",
                    g.edge_count(),
                    Bound::new(((3 * k - 4) * g.n()) as i64, 2)
                )
            },
            best_path,
            violation,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle_blowup, gen_random, gen_tournament_union, RandomKind};

    #[test]
    fn rotational_tournament_on_seven_k4() {
        let g = gen_tournament_union(7, 1).unwrap();
        for o in Orientation::BOTH {
            let out = find_antipath(&g, 4, o).unwrap();
            let p = out.path().expect("found");
            assert_eq!(p.len(), 4);
            assert_eq!(p.orientation(), Some(o));
            assert!(validate_antipath(&g, p.verts()).is_ok());
        }
    }

    #[test]
    fn triangle_is_not_guaranteed() {
        let g = gen_tournament_union(3, 1).unwrap();
        match find_antipath(&g, 3, Orientation::ForwardFirst).unwrap() {
            SearchOutcome::NotGuaranteed {
                best_path,
                violation,
                ..
            } => {
                assert_eq!(best_path.len(), 1);
                assert!(violation.unwrap().is_honest(&g));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn k_two_and_empty() {
        let g = gen_tournament_union(3, 1).unwrap();
        assert_eq!(
            find_antipath(&g, 2, Orientation::ForwardFirst),
            Err(SearchError::UnsupportedK(2))
        );
        assert_eq!(
            find_antipath(&OrientedGraph::empty(3), 3, Orientation::ForwardFirst),
            Err(SearchError::EmptyGraph)
        );
        let one = find_antipath(&g, 1, Orientation::BackwardFirst).unwrap();
        assert_eq!(one.path().unwrap().verts(), &[1, 0]);
    }

    #[test]
    fn windows() {
        let g = OrientedGraph::from_edges(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5)]).unwrap();
        let p5 = validate_antipath(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        let w = extract_window(&p5, 4, Orientation::ForwardFirst).unwrap();
        assert_eq!(w.verts(), &[0, 1, 2, 3, 4]);
        let w = extract_window(&p5, 4, Orientation::BackwardFirst).unwrap();
        assert_eq!(w.verts(), &[1, 2, 3, 4, 5]);

        let p3 = validate_antipath(&g, &[0, 1, 2, 3]).unwrap();
        let w = extract_window(&p3, 3, Orientation::BackwardFirst).unwrap();
        assert_eq!(w.verts(), &[3, 2, 1, 0]);

        let p4 = validate_antipath(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            extract_window(&p4, 4, Orientation::BackwardFirst),
            Err(SearchError::NoMatchingWindow)
        );
        assert_eq!(
            extract_window(&p4, 5, Orientation::ForwardFirst),
            Err(SearchError::NoMatchingWindow)
        );
    }

    #[test]
    fn progress_one_edge_per_iteration() {
        for seed in 0..30 {
            let g = gen_random(21, RandomKind::Tournament, seed).unwrap();
            let d = g.pseudo_semidegree();
            let k = (4 * d + 2) / 3;
            if k < 3 {
                continue;
            }
            for o in Orientation::BOTH {
                let (out, trace) = find_antipath_traced(&g, k, o).unwrap();
                assert!(out.is_found(), "seed {seed} k {k}");
                assert_eq!(trace.seeds, 1);
                assert!(trace.lengths.windows(2).all(|w| w[1] == w[0] + 1));
                assert!(trace.lengths.len() <= k + 2);
            }
        }
    }

    #[test]
    fn dense_small_k() {
        let g = gen_random(12, RandomKind::Tournament, 3).unwrap();
        for o in Orientation::BOTH {
            for k in 1..=2 {
                let p = find_antipath_dense(&g, k, o).unwrap();
                let p = p.path().expect("tournament is dense enough");
                assert_eq!((p.len(), p.orientation()), (k, Some(o)));
            }
        }
    }

    #[test]
    fn dense_below_threshold_is_not_guaranteed_or_found() {
        // Blow-up (3, 2) has 12 edges; k = 4 needs more than (3·4−4)·6/2 = 24.
        let g = gen_cycle_blowup(3, 2).unwrap();
        let out = find_antipath_dense(&g, 4, Orientation::ForwardFirst).unwrap();
        assert!(matches!(out, SearchOutcome::NotGuaranteed { .. }));
    }

    #[test]
    fn dense_k8_on_forty_vertices() {
        for seed in 0..5 {
            let g = gen_random(40, RandomKind::Oriented(0.8), seed).unwrap();
            assert!(g.edge_count() > 400);
            for o in Orientation::BOTH {
                let out = find_antipath_dense(&g, 8, o).unwrap();
                let p = out.path().expect("dense graph");
                assert_eq!(p.len(), 8);
                assert_eq!(p.orientation(), Some(o));
                assert!(validate_antipath(&g, p.verts()).is_ok());
            }
        }
    }
}
