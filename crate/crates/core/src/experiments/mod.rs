//! Experiment drivers: the local-minimum construction, inverse discrepancy
//! search and comparison grids.

mod adversarial;
mod compare;
mod inverse;

pub use adversarial::{adversarial_instance, verify_local_minimum, AdversarialInstance, VERIFY_LIMIT};
pub use compare::{comparison_run, write_csv, Cell, ExperimentSpec, Method, Row, CSV_HEADER};
pub use inverse::{default_engine, inverse_discrepancy_search, InverseResult, Probe};
