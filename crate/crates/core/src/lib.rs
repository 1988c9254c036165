//! Low-discrepancy point sets: star discrepancy computation and subset
//! selection.

pub mod discrepancy;
pub mod energy;
pub mod error;
pub mod experiments;
pub mod pointset;
pub mod rng;
pub mod scalar;
pub mod subset;

pub use discrepancy::{
    bruteforce_discrepancy, exact_discrepancy, local_discrepancies, ta_discrepancy, AnchoredBox, Closure,
    DiscrepancyReport, GridIndexing, TaParams,
};
pub use energy::{energy, energy_gradient, energy_then_subset, gradient_descent, EnergyParams};
pub use error::{Error, Result};
pub use experiments::{
    adversarial_instance, comparison_run, inverse_discrepancy_search, verify_local_minimum, AdversarialInstance,
    ExperimentSpec, Method,
};
pub use pointset::{random_points, read_points, sobol_points, write_points, PointSet};
pub use scalar::Scalar;
pub use subset::{
    exhaustive_best_subset, random_subset_search, select_subset, Engine, HeuristicConfig, SelectionStats,
    SubsetSelection, SwapCandidate,
};

pub type PointSetF64 = PointSet<f64>;
pub type PointSetF32 = PointSet<f32>;
pub type ReportF64 = DiscrepancyReport<f64>;
pub type ReportF32 = DiscrepancyReport<f32>;
