//! Star discrepancy subset selection: pick `k` of `n` points so that the
//! chosen subset has the smallest discrepancy possible.
//!
//! The heuristic starts from a random `k`-subset and repeatedly performs
//! improving 1-swaps (one chosen point out, one unchosen point in). Candidate
//! swaps are derived from the witness box of the current subset: a swap can
//! only lower the discrepancy if it changes that box's point count in the
//! right direction. Step 1 walks outward from the box's edge points one
//! grid rank at a time; Step 2 tries the remaining witness-affecting swaps and,
//! when none improves, certifies the subset as a 1-swap local minimum.
//!
//! Indices are 0-based ground-set indices throughout.

mod baseline;
mod scan;

pub use baseline::{exhaustive_best_subset, random_subset_search, EXHAUSTIVE_LIMIT};
pub use scan::{step1_scan, step2_bruteforce, ScanOutcome};

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use serde::Serialize;

use crate::discrepancy::{
    exact_discrepancy, DiscrepancyReport, GridIndexing, TaParams, ENVELOPE_DIM, ENVELOPE_POINTS,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rng;
use crate::scalar::Scalar;

use scan::{Context, Verdict};

/// Discrepancy engine used to score candidate subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Branch-and-bound exact computation.
    Exact,
    /// Threshold Accepting with a fixed per-call budget. `params.seed` is the
    /// base from which every call derives its own stream.
    Ta(TaParams),
}

impl Engine {
    /// TA with the per-call budget used by the heuristic by default.
    pub fn ta() -> Self {
        Engine::Ta(TaParams {
            budget: 10_000,
            rounds: 10,
            seed: 0,
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Engine::Exact)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeuristicConfig {
    pub engine: Engine,
    /// Run Step 2 after Step 1 is exhausted (BF); otherwise stop (NBF).
    pub brute_force: bool,
    pub restarts: usize,
    /// Wall-clock budget shared by all trials.
    pub time_cutoff: Option<Duration>,
    pub seed: u64,
    /// Accept equal-value swaps (capped at `k` per trial).
    pub plateau_moves: bool,
    /// After Step 2, also try every other 1-swap.
    pub full_neighborhood_check: bool,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self {
            engine: Engine::Exact,
            brute_force: true,
            restarts: 10,
            time_cutoff: None,
            seed: 0,
            plateau_moves: false,
            full_neighborhood_check: false,
        }
    }
}

/// A `k`-subset of a ground set and its discrepancy.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetSelection<'a, T> {
    #[serde(skip)]
    pub ground: &'a PointSet<T>,
    /// Sorted, distinct ground indices.
    pub chosen: Vec<usize>,
    /// Report on the induced subset; its edge ranks refer to the subset's
    /// own coordinate orders.
    pub report: DiscrepancyReport<T>,
}

impl<'a, T: Scalar> SubsetSelection<'a, T> {
    /// Scores `chosen` with the exact engine.
    pub fn new(ground: &'a PointSet<T>, mut chosen: Vec<usize>) -> Result<Self> {
        chosen.sort_unstable();
        chosen.dedup();
        let points = ground.select(&chosen)?;
        let report = exact_discrepancy(&points);
        Ok(Self { ground, chosen, report })
    }

    pub fn k(&self) -> usize {
        self.chosen.len()
    }

    pub fn value(&self) -> T {
        self.report.value
    }

    /// The induced point set, in ground order.
    pub fn points(&self) -> PointSet<T> {
        self.ground.select(&self.chosen).expect("chosen indices are in range")
    }

    pub(crate) fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ground.len()];
        for &i in &self.chosen {
            mask[i] = true;
        }
        mask
    }
}

/// A 1-swap together with the report of the resulting subset.
#[derive(Clone, Debug, Serialize)]
pub struct SwapCandidate<T> {
    pub remove_index: usize,
    pub add_index: usize,
    pub new_report: DiscrepancyReport<T>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrialStats {
    pub initial_value: f64,
    pub value: f64,
    pub step1_swaps: usize,
    pub step2_swaps: usize,
    /// Accepted swaps that did not lower the value.
    pub plateau_swaps: usize,
    /// Discrepancy computations on candidate subsets.
    pub evaluations: u64,
    /// Step 2 found no improving swap.
    pub certified: bool,
    pub interrupted: bool,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SelectionStats {
    pub trials: Vec<TrialStats>,
    pub best_trial: usize,
    pub evaluations: u64,
    pub interrupted: bool,
    /// The returned value was recomputed exactly after a TA-driven search.
    pub verified_exact: bool,
}

/// Runs the swap heuristic `cfg.restarts` times and keeps the best subset
/// (earlier trial on ties).
///
/// When the time cutoff fires, the current trial stops and the best subset
/// seen so far is returned with `stats.interrupted` set.
pub fn select_subset<'a, T: Scalar>(
    ground: &'a PointSet<T>,
    k: usize,
    cfg: &HeuristicConfig,
) -> Result<(SubsetSelection<'a, T>, SelectionStats)> {
    let n = ground.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("subset size {k} for {n} points")));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let deadline = cfg.time_cutoff.map(|t| Instant::now() + t);
    let grid = GridIndexing::new(ground);
    let mut stats = SelectionStats::default();
    let mut best: Option<SubsetSelection<'a, T>> = None;

    for trial in 0..cfg.restarts {
        let seed = rng::derive_seed(cfg.seed, trial as u64);
        let (state, ts) = run_trial(ground, &grid, k, cfg, seed, deadline);
        log::debug!(
            "trial {trial}: {:.6} -> {:.6}, {} evaluations",
            ts.initial_value,
            ts.value,
            ts.evaluations
        );
        stats.evaluations += ts.evaluations;
        let interrupted = ts.interrupted;
        stats.trials.push(ts);
        if let Some(state) = state {
            if best.as_ref().is_none_or(|b| state.report.value < b.report.value) {
                stats.best_trial = trial;
                best = Some(state);
            }
        }
        if interrupted {
            stats.interrupted = true;
            break;
        }
    }

    let mut best = match best {
        Some(b) => b,
        // The cutoff fired before even the first subset was scored.
        None => {
            let chosen = initial_subset(n, k, rng::derive_seed(cfg.seed, 0));
            stats.evaluations += 1;
            SubsetSelection::new(ground, chosen)?
        }
    };
    if !cfg.engine.is_exact() && ground.dim() <= ENVELOPE_DIM && k <= ENVELOPE_POINTS {
        best.report = exact_discrepancy(&best.points());
        stats.verified_exact = true;
    }
    Ok((best, stats))
}

fn initial_subset(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut r = rng::seeded(seed);
    let mut chosen = sample(&mut r, n, k).into_vec();
    chosen.sort_unstable();
    chosen
}

fn run_trial<'a, T: Scalar>(
    ground: &'a PointSet<T>,
    grid: &GridIndexing<T>,
    k: usize,
    cfg: &HeuristicConfig,
    seed: u64,
    deadline: Option<Instant>,
) -> (Option<SubsetSelection<'a, T>>, TrialStats) {
    let start = Instant::now();
    let mut ts = TrialStats::default();
    let mut order_rng = rng::substream(seed, 1);
    let chosen = initial_subset(ground.len(), k, seed);

    let mut ctx = Context::new(ground, &cfg.engine, rng::derive_seed(seed, 2), deadline);
    let report = match ctx.evaluate(&chosen, None) {
        Verdict::Better(r) => r,
        _ => {
            ts.interrupted = true;
            ts.seconds = start.elapsed().as_secs_f64();
            return (None, ts);
        }
    };
    ts.initial_value = report.value.to_f64().unwrap();
    let mut state = SubsetSelection { ground, chosen, report };
    let plateau_cap = if cfg.plateau_moves { k } else { 0 };

    loop {
        ctx.plateau = ts.plateau_swaps < plateau_cap;
        let rotation = rand::Rng::gen_range(&mut order_rng, 0..ground.dim());
        let outcome = match scan::step1(&mut ctx, &state, grid, rotation) {
            ScanOutcome::NoImprovement if cfg.brute_force => {
                match scan::step2(&mut ctx, &state, grid, cfg.full_neighborhood_check) {
                    ScanOutcome::Improved(c) => {
                        ts.step2_swaps += 1;
                        ScanOutcome::Improved(c)
                    }
                    other => other,
                }
            }
            ScanOutcome::Improved(c) => {
                ts.step1_swaps += 1;
                ScanOutcome::Improved(c)
            }
            other => other,
        };
        match outcome {
            ScanOutcome::Improved(c) => {
                if c.new_report.value >= state.report.value {
                    ts.plateau_swaps += 1;
                }
                apply(&mut state, c);
                ctx.reset_tried();
            }
            ScanOutcome::NoImprovement => {
                ts.certified = cfg.brute_force;
                break;
            }
            ScanOutcome::Interrupted => {
                ts.interrupted = true;
                break;
            }
        }
    }
    ts.value = state.report.value.to_f64().unwrap();
    ts.evaluations = ctx.calls;
    ts.seconds = start.elapsed().as_secs_f64();
    (Some(state), ts)
}

fn apply<T: Scalar>(state: &mut SubsetSelection<'_, T>, c: SwapCandidate<T>) {
    let pos = state
        .chosen
        .iter()
        .position(|&i| i == c.remove_index)
        .expect("removed point is chosen");
    state.chosen[pos] = c.add_index;
    state.chosen.sort_unstable();
    state.report = c.new_report;
}
