//! Constructive antipath search.
//!
//! Each step either lengthens the current antipath by one edge or returns a
//! [`Violation`]: a counting bound that the semidegree hypothesis would have
//! guaranteed, observed to fail at a concrete vertex. A violation therefore
//! certifies that the pseudo-semidegree is below the asserted bound.

mod driver;
mod fact1;
mod peel;
mod steps;

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::antipath::{AntiPath, PathError};
use crate::graph::Digraph;

pub use driver::{extract_window, find_antipath, find_antipath_dense, find_antipath_traced, Trace};
pub use fact1::{fact1_index, pair, Fact1Error, Fact1Instance, Pair};
pub use peel::peel;
pub use steps::{close_anticycle, extend_anticycle, extend_endpoints, rotate_even_step};

/// Rational degree bound such as `(3k − 2)/4`.
pub type Bound = Ratio<i64>;

/// `(3k − 2)/4`, the pseudo-semidegree that guarantees every antipath of length `k`.
pub fn theorem_bound(k: usize) -> Bound {
    Ratio::new(3 * k as i64 - 2, 4)
}

/// `(3k − 4)/4`, the peeling threshold for the edge-density route.
pub fn dense_peel_threshold(k: usize) -> Bound {
    Ratio::new(3 * k as i64 - 4, 4)
}

/// `⌊k/2⌋ + 1`, the least integer exceeding `k/2`.
pub fn above_half(k: usize) -> Bound {
    Ratio::from_integer(k as i64 / 2 + 1)
}

/// Whether an integer degree meets a rational bound.
pub fn meets(degree: usize, bound: Bound) -> bool {
    Ratio::from_integer(degree as i64) >= bound
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Driver-level check on a single stuck edge.
    Seed,
    RotateEven,
    CloseAnticycle,
    ExtendAnticycle,
}

impl Step {
    pub fn as_str(self) -> &'static str {
        match self {
            Step::Seed => "seed",
            Step::RotateEven => "rotate-even",
            Step::CloseAnticycle => "close-anticycle",
            Step::ExtendAnticycle => "extend-anticycle",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which counting bound failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shortfall {
    /// The chord-index search found no index: `d_F0 + d_Fm` was too small.
    ChordDegreeSum,
    /// A vertex whose neighbours must leave the path or cycle had none outside it.
    NoOutsideNeighbor,
    /// An endpoint of a stuck single edge has degree 1.
    EndpointDegree,
}

impl Shortfall {
    pub fn as_str(self) -> &'static str {
        match self {
            Shortfall::ChordDegreeSum => "chord-degree-sum",
            Shortfall::NoOutsideNeighbor => "no-outside-neighbor",
            Shortfall::EndpointDegree => "endpoint-degree",
        }
    }
}

/// A failed counting bound: `observed < required` at `witness`, which is
/// impossible when the pseudo-semidegree is at least `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub step: Step,
    pub witness: usize,
    pub shortfall: Shortfall,
    pub observed: usize,
    pub required: usize,
    pub bound: Bound,
}

impl Violation {
    /// Recomputes `δ̄⁰` and confirms it is strictly below the asserted bound.
    pub fn is_honest(&self, g: &Digraph) -> bool {
        !meets(g.pseudo_semidegree(), self.bound)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at vertex {}: {} = {} < {} (asserted pseudo-semidegree ≥ {})",
            self.step,
            self.witness,
            self.shortfall.as_str(),
            self.observed,
            self.required,
            self.bound
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis violation: {0}")]
    Violation(Violation),
    #[error("step produced an invalid sequence: {0}")]
    Invalid(PathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("k = {0} is not supported (k = 2 admits the directed-cycle counterexample)")]
    UnsupportedK(usize),
    #[error("graph has no edge to start from")]
    EmptyGraph,
    #[error("no window of the path realizes the requested orientation")]
    NoMatchingWindow,
    #[error("internal contract breach: {0}")]
    Contract(StepError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// An antipath of exactly the requested length and orientation.
    Found(AntiPath),
    /// The hypothesis did not hold and the best-effort search fell short.
    NotGuaranteed {
        reason: String,
        best_path: AntiPath,
        violation: Option<Violation>,
    },
    /// A guaranteed step failed although the driver believed the hypothesis held.
    HypothesisViolation(Violation),
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn path(&self) -> Option<&AntiPath> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }

    /// Any violation carried by the outcome.
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            SearchOutcome::Found(_) => None,
            SearchOutcome::NotGuaranteed { violation, .. } => violation.as_ref(),
            SearchOutcome::HypothesisViolation(v) => Some(v),
        }
    }
}
