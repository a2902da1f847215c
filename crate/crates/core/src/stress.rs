//! Stress runners: exhaustive small-graph checks and randomized trials.
//!
//! Every trial is a pure function of `(seed, trial index)`, so trials are
//! sharded freely across threads and any failure can be replayed from its
//! bundle with `antipath find`.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rand::RngCore;
use rayon::prelude::*;

use crate::antipath::{validate_antipath, Orientation};
use crate::format::{emit_graph, graph_hash, parse_graph, verify_certificate, Certificate};
use crate::generators::{
    gen_random, gen_tournament_union, random_permutation, relabel, rng, RandomKind,
};
use crate::graph::{AnyGraph, GraphKind, OrientedGraph};
use crate::oracle::{enumerate_oriented_graphs, longest_antipath, OracleResult, DEFAULT_BUDGET};
use crate::pathfinder::{find_antipath, find_antipath_dense, meets, theorem_bound, SearchOutcome};

/// Failure records kept in a report; further failures are only counted.
pub const MAX_KEPT_FAILURES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressMode {
    Exhaustive,
    RandomTournaments,
    Dense,
}

impl StressMode {
    pub fn as_str(self) -> &'static str {
        match self {
            StressMode::Exhaustive => "exhaustive-n5",
            StressMode::RandomTournaments => "random-tournaments",
            StressMode::Dense => "dense",
        }
    }
}

impl fmt::Display for StressMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StressMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive-n5" | "exhaustive" => Ok(StressMode::Exhaustive),
            "random-tournaments" => Ok(StressMode::RandomTournaments),
            "dense" => Ok(StressMode::Dense),
            other => Err(format!(
                "unknown stress mode `{other}` (expected exhaustive-n5, random-tournaments or dense)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StressConfig {
    pub mode: StressMode,
    /// Ignored by the exhaustive mode, which visits every graph.
    pub trials: u64,
    pub seed: u64,
    pub n: usize,
    /// Target length for the dense mode; the other modes derive their own.
    pub k: usize,
}

impl StressConfig {
    pub fn new(mode: StressMode) -> Self {
        let (trials, n, k) = match mode {
            StressMode::Exhaustive => (0, 5, 3),
            StressMode::RandomTournaments => (200, 21, 0),
            StressMode::Dense => (50, 40, 8),
        };
        StressConfig {
            mode,
            trials,
            seed: 0,
            n,
            k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub trial: u64,
    pub check: &'static str,
    pub detail: String,
    pub graph: OrientedGraph,
    pub k: usize,
    pub orientation: Orientation,
    pub dense: bool,
}

impl Failure {
    /// Command line that replays the failing search on the bundled graph file.
    pub fn replay(&self, file: &str) -> String {
        format!(
            "antipath find {file} --k {} --orientation {}{}",
            self.k,
            self.orientation,
            if self.dense { " --dense" } else { "" }
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StressReport {
    pub instances: u64,
    pub searches: u64,
    pub guaranteed: u64,
    pub found: u64,
    pub verified: u64,
    pub oracle_checks: u64,
    pub parity_checks: u64,
    pub duality_checks: u64,
    pub resamples: u64,
    /// Hypothesis violations seen, including those attached to best-effort results.
    pub violations: u64,
    pub dishonest_violations: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl StressReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn merge(mut self, other: StressReport) -> StressReport {
        self.instances += other.instances;
        self.searches += other.searches;
        self.guaranteed += other.guaranteed;
        self.found += other.found;
        self.verified += other.verified;
        self.oracle_checks += other.oracle_checks;
        self.parity_checks += other.parity_checks;
        self.duality_checks += other.duality_checks;
        self.resamples += other.resamples;
        self.violations += other.violations;
        self.dishonest_violations += other.dishonest_violations;
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|f| f.trial);
        self.failures.truncate(MAX_KEPT_FAILURES);
        self
    }

    #[allow(clippy::too_many_arguments)]
    fn fail(
        &mut self,
        trial: u64,
        check: &'static str,
        detail: String,
        graph: &OrientedGraph,
        k: usize,
        orientation: Orientation,
        dense: bool,
    ) {
        self.failure_count += 1;
        if self.failures.len() < MAX_KEPT_FAILURES {
            self.failures.push(Failure {
                trial,
                check,
                detail,
                graph: graph.clone(),
                k,
                orientation,
                dense,
            });
        }
    }

    /// Writes `failure-<i>.graph` and `failure-<i>.txt` per kept failure.
    pub fn write_bundle(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for (i, f) in self.failures.iter().enumerate() {
            let name = format!("failure-{i}.graph");
            fs::write(dir.join(&name), emit_graph(GraphKind::Oriented, &f.graph))?;
            fs::write(
                dir.join(format!("failure-{i}.txt")),
                format!(
                    "trial: {}\ncheck: {}\ndetail: {}\nk: {}\norientation: {}\ndense: {}\nreplay: {}\n",
                    f.trial,
                    f.check,
                    f.detail,
                    f.k,
                    f.orientation,
                    f.dense,
                    f.replay(&name)
                ),
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for StressReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "instances {}  searches {}  guaranteed {}  found {}  verified {}",
            self.instances, self.searches, self.guaranteed, self.found, self.verified
        )?;
        writeln!(
            f,
            "oracle checks {}  parity checks {}  duality checks {}  resamples {}",
            self.oracle_checks, self.parity_checks, self.duality_checks, self.resamples
        )?;
        writeln!(
            f,
            "violations {}  dishonest {}",
            self.violations, self.dishonest_violations
        )?;
        write!(f, "failures {}", self.failure_count)?;
        for fail in &self.failures {
            write!(
                f,
                "\n  trial {} [{}] k={} {}{}: {}",
                fail.trial,
                fail.check,
                fail.k,
                fail.orientation,
                if fail.dense { " dense" } else { "" },
                fail.detail
            )?;
        }
        Ok(())
    }
}

/// Seed for trial `t`: the first word of ChaCha stream `t` under `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut r = rng(seed);
    r.set_stream(trial);
    r.next_u64()
}

pub fn run_stress(cfg: &StressConfig) -> StressReport {
    match cfg.mode {
        StressMode::Exhaustive => run_exhaustive(cfg.n),
        StressMode::RandomTournaments => run_trials(cfg, tournament_trial),
        StressMode::Dense => run_trials(cfg, dense_trial),
    }
}

fn run_trials(
    cfg: &StressConfig,
    trial: fn(&StressConfig, u64, &mut StressReport),
) -> StressReport {
    (0..cfg.trials)
        .into_par_iter()
        .fold(StressReport::default, |mut rep, t| {
            rep.instances += 1;
            trial(cfg, t, &mut rep);
            rep
        })
        .reduce(StressReport::default, StressReport::merge)
}

/// Shared bookkeeping for one search: soundness, guarantee, honesty.
/// Returns the path when the search found one.
#[allow(clippy::too_many_arguments)]
fn check_search(
    rep: &mut StressReport,
    trial: u64,
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
    dense: bool,
    guaranteed: bool,
    result: Result<SearchOutcome, crate::pathfinder::SearchError>,
) -> Option<SearchOutcome> {
    rep.searches += 1;
    if guaranteed {
        rep.guaranteed += 1;
    }
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            rep.fail(trial, "search-error", e.to_string(), g, k, orient, dense);
            return None;
        }
    };
    if let Some(v) = outcome.violation() {
        rep.violations += 1;
        if !v.is_honest(g) {
            rep.dishonest_violations += 1;
            rep.fail(
                trial,
                "honesty",
                format!("{v}, but pseudo-semidegree is {}", g.pseudo_semidegree()),
                g,
                k,
                orient,
                dense,
            );
        }
    }
    match &outcome {
        SearchOutcome::Found(p) => {
            rep.found += 1;
            let sound = validate_antipath(g, p.verts()).is_ok()
                && p.len() == k
                && p.orientation() == Some(orient);
            if !sound {
                rep.fail(
                    trial,
                    "soundness",
                    format!("returned {:?}", p.verts()),
                    g,
                    k,
                    orient,
                    dense,
                );
            }
        }
        other if guaranteed => {
            let what = match other {
                SearchOutcome::HypothesisViolation(v) => format!("hypothesis violation: {v}"),
                _ => "not guaranteed".into(),
            };
            rep.fail(trial, "guarantee", what, g, k, orient, dense);
        }
        _ => {}
    }
    Some(outcome)
}

/// Emits graph and certificate as text, parses both back and verifies.
fn round_trip_verify(
    rep: &mut StressReport,
    trial: u64,
    g: &OrientedGraph,
    k: usize,
    orient: Orientation,
    dense: bool,
    outcome: &SearchOutcome,
) {
    let any = AnyGraph::Oriented(g.clone());
    let cert = Certificate::from_outcome(graph_hash(&any), k, orient, outcome);
    let result = parse_graph(&emit_graph(GraphKind::Oriented, g))
        .map_err(|e| e.to_string())
        .and_then(|parsed| {
            let cert = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
            verify_certificate(&parsed, &cert).map_err(|e| e.to_string())
        });
    match result {
        Ok(()) => rep.verified += 1,
        Err(e) => rep.fail(trial, "verify", e, g, k, orient, dense),
    }
}

/// Largest `k ≥ 3` with `d ≥ (3k − 2)/4`, if any.
pub fn largest_guaranteed_k(d: usize) -> Option<usize> {
    // 3k − 2 ≤ 4d
    #[allow(clippy::manual_div_ceil)]
    let k = (4 * d + 2) / 3;
    (k >= 3).then_some(k)
}

/// Tournament for trial `t`. Every fourth trial (odd `n` only) is a
/// relabelled rotational tournament, the rest are uniformly random.
pub fn tournament_instance(n: usize, seed: u64, t: u64) -> OrientedGraph {
    let seed = trial_seed(seed, t);
    if t % 4 == 0 && n % 2 == 1 {
        let base = gen_tournament_union(n, 1).expect("odd n");
        relabel(&base, &random_permutation(n, &mut rng(seed)))
    } else {
        gen_random(n, RandomKind::Tournament, seed).expect("tournament")
    }
}

fn tournament_trial(cfg: &StressConfig, t: u64, rep: &mut StressReport) {
    let g = tournament_instance(cfg.n, cfg.seed, t);
    let Some(k) = largest_guaranteed_k(g.pseudo_semidegree()) else {
        return;
    };
    for orient in Orientation::BOTH {
        let outcome = check_search(
            rep,
            t,
            &g,
            k,
            orient,
            false,
            true,
            find_antipath(&g, k, orient),
        );
        if let Some(o @ SearchOutcome::Found(_)) = outcome {
            round_trip_verify(rep, t, &g, k, orient, false, &o);
        }
    }
}

/// Edge probability whose expected edge count sits an eighth of the way
/// from the density threshold to the complete tournament, so samples stay
/// close to the threshold while few are rejected.
fn dense_probability(n: usize, k: usize) -> f64 {
    let pairs = (n * (n - 1) / 2) as f64;
    let needed = ((3 * k - 4) * n) as f64 / 2.0;
    let q = needed / pairs;
    (q + (1.0 - q) / 8.0).clamp(0.0, 1.0)
}

/// Oriented graph for trial `t` with more than `(3k − 4)n/2` edges, and the
/// number of samples rejected on the way. Requires `3k − 4 < n − 1`.
pub fn dense_instance(n: usize, k: usize, seed: u64, t: u64) -> (OrientedGraph, u64) {
    let p = dense_probability(n, k);
    let mut source = rng(seed);
    source.set_stream(t);
    let mut resamples = 0;
    loop {
        let g = gen_random(n, RandomKind::Oriented(p), source.next_u64())
            .expect("probability in range");
        if 2 * g.edge_count() > (3 * k - 4) * n {
            return (g, resamples);
        }
        resamples += 1;
    }
}

fn dense_trial(cfg: &StressConfig, t: u64, rep: &mut StressReport) {
    let (n, k) = (cfg.n, cfg.k);
    if k < 3 || 3 * k - 4 >= n.saturating_sub(1) {
        rep.fail(
            t,
            "parameters",
            format!("no oriented graph on {n} vertices exceeds (3k-4)n/2 edges for k = {k}"),
            &OrientedGraph::empty(n),
            k,
            Orientation::ForwardFirst,
            true,
        );
        return;
    }
    let (g, resamples) = dense_instance(n, k, cfg.seed, t);
    rep.resamples += resamples;
    for orient in Orientation::BOTH {
        let outcome = check_search(
            rep,
            t,
            &g,
            k,
            orient,
            true,
            true,
            find_antipath_dense(&g, k, orient),
        );
        if let Some(o @ SearchOutcome::Found(_)) = outcome {
            round_trip_verify(rep, t, &g, k, orient, true, &o);
        }
    }
}

/// Checks on one enumerated graph: the search guarantee for every `3 ≤ k ≤ n`
/// in both orientations, agreement with the oracle, the parity of a longest
/// antipath below `2δ̄⁰`, and duality under reversal.
fn exhaustive_graph(idx: u64, g: &OrientedGraph, rep: &mut StressReport) {
    rep.instances += 1;
    let d = g.pseudo_semidegree();
    let oracle: OracleResult = longest_antipath(g, DEFAULT_BUDGET);
    if !oracle.exact {
        rep.fail(
            idx,
            "oracle",
            "budget exhausted".into(),
            g,
            0,
            Orientation::ForwardFirst,
            false,
        );
        return;
    }
    let m = oracle.max_length;
    for k in 1..=6 {
        if 2 * d >= k {
            rep.parity_checks += 1;
            if m < k && m % 2 == 0 {
                rep.fail(
                    idx,
                    "parity",
                    format!("longest antipath has even length {m} < k with pseudo-semidegree {d}"),
                    g,
                    k,
                    Orientation::ForwardFirst,
                    false,
                );
            }
        }
    }
    if g.edge_count() == 0 {
        return;
    }
    let reversed = g.reverse();
    for k in 3..=g.n() {
        let guaranteed = meets(d, theorem_bound(k));
        let mut found = [false; 2];
        for (slot, orient) in Orientation::BOTH.into_iter().enumerate() {
            let outcome = check_search(
                rep,
                idx,
                g,
                k,
                orient,
                false,
                guaranteed,
                find_antipath(g, k, orient),
            );
            let Some(outcome) = outcome else { continue };
            found[slot] = outcome.is_found();
            rep.oracle_checks += 1;
            if outcome.is_found() && !oracle.realizes(k, orient) {
                rep.fail(
                    idx,
                    "oracle-agreement",
                    format!("search found a path the oracle rules out (oracle max {m})"),
                    g,
                    k,
                    orient,
                    false,
                );
            }
        }
        let orient = Orientation::ForwardFirst;
        let dual = check_search(
            rep,
            idx,
            &reversed,
            k,
            orient,
            false,
            guaranteed,
            find_antipath(&reversed, k, orient),
        );
        if let Some(dual) = dual {
            rep.duality_checks += 1;
            let backward = found[Orientation::BOTH
                .iter()
                .position(|&o| o == Orientation::BackwardFirst)
                .expect("listed")];
            if dual.is_found() != backward {
                rep.fail(
                    idx,
                    "duality",
                    format!(
                        "forward-first on the reverse found: {}, backward-first found: {backward}",
                        dual.is_found()
                    ),
                    g,
                    k,
                    Orientation::BackwardFirst,
                    false,
                );
            }
        }
    }
}

/// Runs every check over all labelled oriented graphs on `n ≤ 6` vertices.
pub fn run_exhaustive(n: usize) -> StressReport {
    let graphs = match enumerate_oriented_graphs(n, true) {
        Ok(g) => g,
        Err(e) => {
            let mut rep = StressReport::default();
            rep.fail(
                0,
                "parameters",
                e.to_string(),
                &OrientedGraph::empty(0),
                0,
                Orientation::ForwardFirst,
                false,
            );
            return rep;
        }
    };
    (0..graphs.total())
        .into_par_iter()
        .fold(StressReport::default, |mut rep, idx| {
            exhaustive_graph(idx, &graphs.graph_at(idx), &mut rep);
            rep
        })
        .reduce(StressReport::default, StressReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_names() {
        for mode in [
            StressMode::Exhaustive,
            StressMode::RandomTournaments,
            StressMode::Dense,
        ] {
            assert_eq!(mode.as_str().parse::<StressMode>(), Ok(mode));
        }
        assert!("bogus".parse::<StressMode>().is_err());
    }

    #[test]
    fn guaranteed_k() {
        assert_eq!(largest_guaranteed_k(1), None);
        assert_eq!(largest_guaranteed_k(2), Some(3));
        assert_eq!(largest_guaranteed_k(3), Some(4));
        assert_eq!(largest_guaranteed_k(10), Some(14));
        for d in 2..40 {
            let k = largest_guaranteed_k(d).unwrap();
            assert!(meets(d, theorem_bound(k)) && !meets(d, theorem_bound(k + 1)));
        }
    }

    #[test]
    fn trial_seeds_are_stable_and_distinct() {
        assert_eq!(trial_seed(7, 3), trial_seed(7, 3));
        assert_ne!(trial_seed(7, 3), trial_seed(7, 4));
        assert_ne!(trial_seed(0, 1), trial_seed(1, 0));
    }

    #[test]
    fn exhaustive_small() {
        let rep = run_exhaustive(4);
        assert_eq!(rep.instances, 729);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn small_random_runs() {
        let mut cfg = StressConfig::new(StressMode::RandomTournaments);
        cfg.trials = 8;
        let rep = run_stress(&cfg);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.verified, rep.found);

        let mut cfg = StressConfig::new(StressMode::Dense);
        cfg.trials = 3;
        let rep = run_stress(&cfg);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.found, 6);
    }

    #[test]
    fn bundle_is_replayable() {
        let mut rep = StressReport::default();
        let g = gen_tournament_union(3, 1).unwrap();
        rep.fail(
            5,
            "guarantee",
            "example".into(),
            &g,
            3,
            Orientation::BackwardFirst,
            false,
        );
        let dir = std::env::temp_dir().join(format!("antipath-bundle-{}", std::process::id()));
        rep.write_bundle(&dir).unwrap();
        let text = fs::read_to_string(dir.join("failure-0.graph")).unwrap();
        assert_eq!(parse_graph(&text).unwrap(), AnyGraph::Oriented(g));
        let params = fs::read_to_string(dir.join("failure-0.txt")).unwrap();
        assert!(params
            .contains("replay: antipath find failure-0.graph --k 3 --orientation backward-first"));
        fs::remove_dir_all(dir).unwrap();
    }
}
