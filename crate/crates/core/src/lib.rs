//! Antidirected paths in oriented graphs.
//!
//! The crate finds antidirected paths of a requested length and orientation
//! in oriented graphs whose minimum pseudo-semidegree is at least
//! `(3k − 2)/4`, or whose edge count exceeds `(3k − 4)·n/2`. Every positive
//! answer is a certificate checkable in linear time with
//! [`antipath::validate_antipath`]; every failure of a guaranteed step comes
//! with a concrete counting witness.
//!
//! Alongside the constructive search live brute-force oracles, exhaustive
//! small-graph enumeration, the extremal generators, a plain-text graph and
//! certificate format, and stress runners.

pub mod antipath;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod pathfinder;
pub mod stress;

pub use antipath::{validate_anticycle, validate_antipath, AntiCycle, AntiPath, Orientation};
pub use graph::{build_graph, AnyGraph, DegreeProfile, Digraph, GraphKind, OrientedGraph};
pub use pathfinder::{find_antipath, find_antipath_dense, SearchOutcome};
