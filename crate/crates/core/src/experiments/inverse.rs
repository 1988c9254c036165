//! Smallest Sobol' prefix reaching a discrepancy target.

use serde::Serialize;

use crate::discrepancy::{exact_discrepancy, ta_discrepancy, TaParams, ENVELOPE_DIM};
use crate::error::{Error, Result};
use crate::pointset::sobol_points;
use crate::subset::Engine;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    pub n: usize,
    pub value: f64,
    pub reached: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InverseResult {
    pub d: usize,
    pub epsilon: f64,
    pub n_max: usize,
    /// Located prefix length. Discrepancy is not monotone in `n`, so a
    /// smaller qualifying prefix may exist: this is an upper bound.
    pub n: usize,
    pub value: f64,
    /// Engine actually used for the probes.
    pub engine: Engine,
    /// Probes in the order they were made.
    pub probes: Vec<Probe>,
}

/// Engine used by default: exact up to dimension 6, TA beyond.
pub fn default_engine(d: usize) -> Engine {
    if d <= ENVELOPE_DIM {
        Engine::Exact
    } else {
        Engine::Ta(TaParams::default())
    }
}

/// Binary search over `n ∈ [1, n_max]` for the first `n` whose Sobol'
/// prefix has discrepancy at most `epsilon`, assuming monotonicity.
pub fn inverse_discrepancy_search(d: usize, epsilon: f64, n_max: usize, engine: Engine) -> Result<InverseResult> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!("target {epsilon} outside (0, 1]")));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let sobol = sobol_points::<f64>(n_max, d)?;
    let mut probes = Vec::new();
    let mut probe = |n: usize| -> Result<bool> {
        let points = sobol.prefix(n)?;
        let value = match engine {
            Engine::Exact => exact_discrepancy(&points).value,
            Engine::Ta(p) => ta_discrepancy(&points, &p).value,
        };
        let reached = value <= epsilon;
        log::debug!("n = {n}: {value:.6} {}", if reached { "<=" } else { ">" });
        probes.push(Probe { n, value, reached });
        Ok(reached)
    };
    if !probe(n_max)? {
        let value = probes[0].value;
        return Err(Error::TargetNotReached { epsilon, n_max, value });
    }
    let (mut lo, mut hi) = (1, n_max);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let value = probes
        .iter()
        .rev()
        .find(|p| p.n == hi)
        .expect("the located n was probed")
        .value;
    Ok(InverseResult {
        d,
        epsilon,
        n_max,
        n: hi,
        value,
        engine,
        probes,
    })
}
