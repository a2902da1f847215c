//! The three rotation/closure/extension steps and endpoint extension.
//!
//! Every step that needs a particular edge direction at `v_0` works in a
//! [`View`] of the graph that is either the graph itself or its reversal.
//! Reversal maps antipaths to antipaths with the same vertex sequence, so
//! results need no translation back.

use num_rational::Ratio;

use super::fact1::{fact1_index, pair, Fact1Instance};
use super::{above_half, theorem_bound, Bound, Shortfall, Step, StepError, Violation};
use crate::antipath::{validate_anticycle, validate_antipath, AntiCycle, AntiPath};
use crate::graph::{Digraph, OrientedGraph};

/// The graph, or its reversal when `flip` is set, without copying.
#[derive(Clone, Copy)]
struct View<'a> {
    g: &'a Digraph,
    flip: bool,
}

impl<'a> View<'a> {
    fn new(g: &'a Digraph, flip: bool) -> Self {
        View { g, flip }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        if self.flip {
            self.g.has_edge(v, u)
        } else {
            self.g.has_edge(u, v)
        }
    }

    fn outs(&self, v: usize) -> &'a [usize] {
        self.g.neighbors(v, !self.flip)
    }

    fn ins(&self, v: usize) -> &'a [usize] {
        self.g.neighbors(v, self.flip)
    }
}

fn membership(n: usize, verts: &[usize]) -> Vec<bool> {
    let mut on = vec![false; n];
    for &v in verts {
        on[v] = true;
    }
    on
}

fn first_outside(candidates: &[usize], on: &[bool]) -> Option<usize> {
    candidates.iter().copied().find(|&w| !on[w])
}

fn certify_path(g: &Digraph, verts: &[usize]) -> Result<AntiPath, StepError> {
    validate_antipath(g, verts).map_err(StepError::Invalid)
}

fn recheck(g: &Digraph, p: &AntiPath) -> Result<(), StepError> {
    validate_antipath(g, p.verts())
        .map(|_| ())
        .map_err(|e| StepError::Precondition(format!("path is not an antipath of the graph: {e}")))
}

fn violation(
    step: Step,
    witness: usize,
    shortfall: Shortfall,
    observed: usize,
    required: usize,
    bound: Bound,
) -> StepError {
    StepError::Violation(Violation {
        step,
        witness,
        shortfall,
        observed,
        required,
        bound,
    })
}

/// Extends `p` by one edge at either endpoint if an off-path neighbour in the
/// direction forced by alternation exists. The tail is tried before the
/// head; the smallest such neighbour is used.
pub fn extend_endpoints(g: &OrientedGraph, p: &AntiPath) -> Option<AntiPath> {
    let on = membership(g.n(), p.verts());
    if p.is_empty() {
        let v = p.first();
        let w = first_outside(g.out_neighbors(v), &on)?;
        return Some(certify_path(g, &[v, w]).expect("single edge"));
    }
    if let Some(w) = first_outside(g.neighbors(p.last(), p.last_is_source()), &on) {
        let mut verts = p.verts().to_vec();
        verts.push(w);
        return Some(certify_path(g, &verts).expect("tail extension alternates"));
    }
    if let Some(w) = first_outside(g.neighbors(p.first(), p.first_is_source()), &on) {
        let mut verts = Vec::with_capacity(p.verts().len() + 1);
        verts.push(w);
        verts.extend_from_slice(p.verts());
        return Some(certify_path(g, &verts).expect("head extension alternates"));
    }
    None
}

fn require_stuck(g: &OrientedGraph, p: &AntiPath) -> Result<(), StepError> {
    if extend_endpoints(g, p).is_some() {
        return Err(StepError::Precondition(
            "path can still be extended at an endpoint".into(),
        ));
    }
    Ok(())
}

/// Stuck antipath of even length `m ≥ 2` with `m < 2·bound`: rotate through a
/// chord pair so that a new endpoint gains an off-path neighbour.
///
/// With `v_0 → v_1` (after dualizing), the chord search finds `i` with
/// `v_0 → v_i` and `v_m → v_{i−1}`. If `i` is odd the path is reversed so that
/// `v_i → v_{i−1}`. The rotations
/// `v_i … v_m v_{i−1} … v_0` and `v_i v_0 … v_{i−1} v_m … v_{i+1}` both start at
/// `v_i`, the first with an out-edge and the second with an in-edge, so any
/// off-path neighbour of `v_i` extends one of them.
pub fn rotate_even_step(
    g: &OrientedGraph,
    p: &AntiPath,
    bound: Bound,
) -> Result<AntiPath, StepError> {
    let m = p.len();
    if m < 2 || m % 2 == 1 {
        return Err(StepError::Precondition(format!(
            "rotation needs an even length m ≥ 2, got {m}"
        )));
    }
    if Ratio::from_integer(m as i64) >= bound * 2 {
        return Err(StepError::Precondition(format!(
            "rotation needs m < 2·bound, got m = {m} and bound {bound}"
        )));
    }
    recheck(g, p)?;
    require_stuck(g, p)?;

    let view = View::new(g, !p.first_is_source());
    let v = p.verts();
    let (v0, vm) = (v[0], v[m]);
    let inst = Fact1Instance::new(
        v[..m].to_vec(),
        v[1..].to_vec(),
        view.outs(v0).iter().map(|&w| pair(v0, w)),
        view.outs(vm).iter().map(|&w| pair(vm, w)),
        1,
    )
    .map_err(|e| StepError::Precondition(format!("stuck endpoint left the path: {e}")))?;
    let Some(mut i) = fact1_index(&inst) else {
        let witness = if view.outs(v0).len() <= view.outs(vm).len() {
            v0
        } else {
            vm
        };
        return Err(violation(
            Step::RotateEven,
            witness,
            Shortfall::ChordDegreeSum,
            inst.degree_sum(),
            m + 1,
            bound,
        ));
    };

    let mut verts = v.to_vec();
    if i % 2 == 1 {
        // v_{i−1} → v_i; reversing the path maps the chord pair to index m − i + 1.
        verts.reverse();
        i = m - i + 1;
    }
    debug_assert!(view.has(verts[i], verts[i - 1]));
    let on = membership(g.n(), &verts);
    let vi = verts[i];

    if let Some(w) = first_outside(view.outs(vi), &on) {
        let mut out = vec![w];
        out.extend_from_slice(&verts[i..]);
        out.extend(verts[..i].iter().rev());
        return certify_path(g, &out);
    }
    if let Some(w) = first_outside(view.ins(vi), &on) {
        let mut out = vec![w, vi];
        out.extend_from_slice(&verts[..i]);
        out.extend(verts[i + 1..].iter().rev());
        return certify_path(g, &out);
    }
    Err(violation(
        Step::RotateEven,
        vi,
        Shortfall::NoOutsideNeighbor,
        g.out_degree(vi) + g.in_degree(vi),
        m + 1,
        bound,
    ))
}

/// Stuck antipath of odd length `3 ≤ m < k`: close it into an anticycle on
/// the same vertices, assuming pseudo-semidegree at least `(3k − 2)/4`.
///
/// With `v_0 → v_1` the even-indexed vertices `X` are sources and the
/// odd-indexed `Y` sinks. A chord pair `v_0 → v_{2i−1}`, `v_{2i−2} → v_m`
/// yields the cycle `v_0 … v_{2i−2} v_m v_{m−1} … v_{2i−1}`.
pub fn close_anticycle(g: &OrientedGraph, p: &AntiPath, k: usize) -> Result<AntiCycle, StepError> {
    let m = p.len();
    if m < 3 || m % 2 == 0 || m >= k {
        return Err(StepError::Precondition(format!(
            "closing needs odd 3 ≤ m < k, got m = {m}, k = {k}"
        )));
    }
    recheck(g, p)?;
    require_stuck(g, p)?;

    let bound = theorem_bound(k);
    let view = View::new(g, !p.first_is_source());
    let v = p.verts();
    let (v0, vm) = (v[0], v[m]);
    let xs: Vec<usize> = v.iter().copied().step_by(2).collect();
    let ys: Vec<usize> = v.iter().copied().skip(1).step_by(2).collect();
    let half = ys.len();
    let inst = Fact1Instance::new(
        xs.clone(),
        ys.clone(),
        ys.iter()
            .filter(|&&y| view.has(v0, y))
            .map(|&y| pair(v0, y)),
        xs.iter()
            .filter(|&&x| view.has(x, vm))
            .map(|&x| pair(x, vm)),
        1,
    )
    .expect("bipartition of the path");
    let Some(i) = fact1_index(&inst) else {
        let witness = if view.outs(v0).len() <= view.ins(vm).len() {
            v0
        } else {
            vm
        };
        return Err(violation(
            Step::CloseAnticycle,
            witness,
            Shortfall::ChordDegreeSum,
            inst.degree_sum(),
            half + 1,
            bound,
        ));
    };

    let mut cycle: Vec<usize> = v[..=2 * i - 2].to_vec();
    cycle.extend(v[2 * i - 1..].iter().rev());
    validate_anticycle(g, &cycle).map_err(StepError::Invalid)
}

/// Anticycle `C` with `|C| ≤ k`: produce an antipath with one more edge than
/// `C` has vertices minus one, assuming pseudo-semidegree above `k/2`.
///
/// First, any vertex of `C` with a neighbour off `C` in its own direction
/// (out for sources, in for sinks) is spliced in. Otherwise the chord search
/// with offset 2 finds `v_0 → v_i` and `v_{i−2} → v_m`, and two off-cycle
/// vertices `x`, `y` attached at `v_i` (even `i`) or `v_{i−2}` (odd `i`)
/// replace the dropped vertex `v_{i−1}`.
pub fn extend_anticycle(g: &OrientedGraph, c: &AntiCycle, k: usize) -> Result<AntiPath, StepError> {
    let len = c.len();
    if len > k {
        return Err(StepError::Precondition(format!(
            "extension needs |C| ≤ k, got |C| = {len}, k = {k}"
        )));
    }
    validate_anticycle(g, c.verts())
        .map_err(|e| StepError::Precondition(format!("not an anticycle of the graph: {e}")))?;

    let bound = above_half(k);
    let view = View::new(g, !c.starts_at_source());
    let v = c.verts();
    let m = len - 1;
    let on = membership(g.n(), v);

    // Even positions are sources on C, odd positions sinks.
    for (j, &vj) in v.iter().enumerate() {
        let nbrs = if j % 2 == 0 {
            view.outs(vj)
        } else {
            view.ins(vj)
        };
        if let Some(w) = first_outside(nbrs, &on) {
            let mut out = vec![w];
            out.extend_from_slice(&v[j..]);
            out.extend_from_slice(&v[..j]);
            return certify_path(g, &out);
        }
    }

    let (v0, vm) = (v[0], v[m]);
    let inst = Fact1Instance::new(
        v[..m].to_vec(),
        v[1..].to_vec(),
        view.outs(v0).iter().map(|&w| pair(v0, w)),
        view.ins(vm).iter().map(|&w| pair(w, vm)),
        2,
    )
    .map_err(|e| StepError::Precondition(format!("closed anticycle leaked: {e}")))?;
    let Some(i) = fact1_index(&inst) else {
        let witness = if view.outs(v0).len() <= view.ins(vm).len() {
            v0
        } else {
            vm
        };
        return Err(violation(
            Step::ExtendAnticycle,
            witness,
            Shortfall::ChordDegreeSum,
            inst.degree_sum(),
            m + 2,
            bound,
        ));
    };

    // Attach x at the pivot, then y at x, both off C.
    let (pivot, pivot_out) = if i % 2 == 0 {
        (v[i], false)
    } else {
        (v[i - 2], true)
    };
    let x_cands = if pivot_out {
        view.outs(pivot)
    } else {
        view.ins(pivot)
    };
    let Some(x) = first_outside(x_cands, &on) else {
        return Err(violation(
            Step::ExtendAnticycle,
            pivot,
            Shortfall::NoOutsideNeighbor,
            g.out_degree(pivot) + g.in_degree(pivot),
            m + 1,
            bound,
        ));
    };
    let y_cands = if pivot_out { view.ins(x) } else { view.outs(x) };
    let Some(y) = first_outside(y_cands, &on) else {
        return Err(violation(
            Step::ExtendAnticycle,
            x,
            Shortfall::NoOutsideNeighbor,
            y_cands.len(),
            len / 2 + 1,
            bound,
        ));
    };

    let mut out = vec![y, x, pivot];
    if i % 2 == 0 {
        out.extend_from_slice(&v[..=i - 2]);
        out.extend(v[i + 1..].iter().rev());
    } else {
        out.extend(v[i..].iter().rev());
        out.extend_from_slice(&v[..=i - 3]);
    }
    certify_path(g, &out)
}
