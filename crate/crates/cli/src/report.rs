//! JSON reports written by the subcommands. Each has a schema under
//! `docs/schemas/`. Wall-clock times are left out so that identical runs give
//! identical files.

use serde::Serialize;
use subsel::discrepancy::AnchoredBox;
use subsel::subset::TrialStats;

#[derive(Serialize)]
pub struct DiscReport {
    pub engine: &'static str,
    pub n: usize,
    pub d: usize,
    pub value: f64,
    pub exact: bool,
    pub witness: Option<AnchoredBox<f64>>,
    pub evaluations: Option<u64>,
}

#[derive(Serialize)]
pub struct Trial {
    pub initial_value: f64,
    pub value: f64,
    pub step1_swaps: usize,
    pub step2_swaps: usize,
    pub plateau_swaps: usize,
    pub evaluations: u64,
    pub certified: bool,
    pub interrupted: bool,
}

impl From<&TrialStats> for Trial {
    fn from(t: &TrialStats) -> Self {
        Self {
            initial_value: t.initial_value,
            value: t.value,
            step1_swaps: t.step1_swaps,
            step2_swaps: t.step2_swaps,
            plateau_swaps: t.plateau_swaps,
            evaluations: t.evaluations,
            certified: t.certified,
            interrupted: t.interrupted,
        }
    }
}

#[derive(Serialize)]
pub struct SubsetReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub engine: &'static str,
    pub brute_force: bool,
    pub restarts: usize,
    pub seed: u64,
    pub value: f64,
    pub exact: bool,
    pub chosen: Vec<usize>,
    pub witness: AnchoredBox<f64>,
    pub evaluations: u64,
    pub interrupted: bool,
    pub best_trial: usize,
    pub trials: Vec<Trial>,
    pub output: String,
}

#[derive(Serialize)]
pub struct Descent {
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub clamped: usize,
}

#[derive(Serialize)]
pub struct EnergyReport {
    pub n: usize,
    pub d: usize,
    pub energy: f64,
    pub clamped: usize,
    pub optimized: Option<Descent>,
}

#[derive(Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub energy_before: f64,
    pub descent: Descent,
    pub subset: SubsetReport,
}

#[derive(Serialize)]
pub struct AdversarialReport {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub discrepancy_a: f64,
    pub discrepancy_b: f64,
    pub set_a_local_min: bool,
    pub b_below_a: bool,
}
