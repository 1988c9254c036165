//! Grids of subset-selection runs on Sobol' ground sets, emitted as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::discrepancy::exact_discrepancy;
use crate::error::{Error, Result};
use crate::pointset::sobol_points;
use crate::subset::{random_subset_search, select_subset, Engine, HeuristicConfig};

pub const CSV_HEADER: [&str; 9] = ["d", "n", "k", "method", "value", "exact", "evals", "seconds", "interrupted"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "DEM_BF")]
    DemBf,
    #[serde(rename = "DEM_NBF")]
    DemNbf,
    #[serde(rename = "TA_BF")]
    TaBf,
    #[serde(rename = "TA_NBF")]
    TaNbf,
    /// The first `k` Sobol' points, unselected.
    #[serde(rename = "SOBOL")]
    Sobol,
    /// Best of many random subsets.
    #[serde(rename = "RANDOM")]
    Random,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::DemBf,
        Method::DemNbf,
        Method::TaBf,
        Method::TaNbf,
        Method::Sobol,
        Method::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::DemBf => "DEM_BF",
            Method::DemNbf => "DEM_NBF",
            Method::TaBf => "TA_BF",
            Method::TaNbf => "TA_NBF",
            Method::Sobol => "SOBOL",
            Method::Random => "RANDOM",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    /// Wall-clock budget in seconds for the heuristic methods.
    #[serde(default)]
    pub time_budget: Option<f64>,
}

fn default_restarts() -> usize {
    10
}

fn default_random_trials() -> usize {
    1000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub cells: Vec<Cell>,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_random_trials")]
    pub random_trials: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            cells: Vec::new(),
            restarts: default_restarts(),
            seed: 0,
            random_trials: default_random_trials(),
        }
    }
}

impl ExperimentSpec {
    /// Every `(d, n, n − offset, method)` combination plus a Sobol' baseline
    /// row `k = n` for each `(d, n)`.
    pub fn grid(dims: &[usize], ns: &[usize], offsets: &[usize], methods: &[Method], time_budget: Option<f64>) -> Self {
        let mut cells = Vec::new();
        for &d in dims {
            for &n in ns {
                cells.push(Cell {
                    d,
                    n,
                    k: n,
                    method: Method::Sobol,
                    time_budget: None,
                });
                for &off in offsets.iter().filter(|&&o| o < n) {
                    for &method in methods.iter().filter(|&&m| m != Method::Sobol) {
                        cells.push(Cell {
                            d,
                            n,
                            k: n - off,
                            method,
                            time_budget,
                        });
                    }
                }
            }
        }
        Self {
            cells,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub value: f64,
    pub exact: bool,
    pub evals: u64,
    pub seconds: f64,
    pub interrupted: bool,
}

fn run_cell(cell: &Cell, spec: &ExperimentSpec) -> Result<Row> {
    let start = Instant::now();
    let ground = sobol_points::<f64>(cell.n, cell.d)?;
    if cell.k == 0 || cell.k > cell.n {
        return Err(Error::InvalidArgument(format!("cell k = {} for n = {}", cell.k, cell.n)));
    }
    let heuristic = |engine: Engine, brute_force: bool| HeuristicConfig {
        engine,
        brute_force,
        restarts: spec.restarts,
        time_cutoff: cell.time_budget.map(Duration::from_secs_f64),
        seed: spec.seed,
        ..Default::default()
    };
    let (value, exact, evals, interrupted) = match cell.method {
        Method::Sobol => {
            let r = exact_discrepancy(&ground.prefix(cell.k)?);
            (r.value, true, 1, false)
        }
        Method::Random => {
            let s = random_subset_search(&ground, cell.k, spec.random_trials, spec.seed)?;
            (s.value(), true, spec.random_trials.max(1) as u64, false)
        }
        m => {
            let cfg = match m {
                Method::DemBf => heuristic(Engine::Exact, true),
                Method::DemNbf => heuristic(Engine::Exact, false),
                Method::TaBf => heuristic(Engine::ta(), true),
                _ => heuristic(Engine::ta(), false),
            };
            let (s, stats) = select_subset(&ground, cell.k, &cfg)?;
            (s.value(), s.report.exact, stats.evaluations, stats.interrupted)
        }
    };
    Ok(Row {
        d: cell.d,
        n: cell.n,
        k: cell.k,
        method: cell.method,
        value,
        exact,
        evals,
        seconds: start.elapsed().as_secs_f64(),
        interrupted,
    })
}

/// Runs every cell; rows come back sorted by `(d, n, k, method)`.
pub fn comparison_run(spec: &ExperimentSpec) -> Result<Vec<Row>> {
    let mut rows = spec
        .cells
        .iter()
        .map(|c| {
            let row = run_cell(c, spec)?;
            log::info!("d={} n={} k={} {}: {:.6}", row.d, row.n, row.k, row.method, row.value);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.d, r.n, r.k, r.method));
    Ok(rows)
}

/// Writes the fixed header and then one record per row.
pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spec_gives_header_only() {
        let rows = comparison_run(&ExperimentSpec::default()).unwrap();
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "d,n,k,method,value,exact,evals,seconds,interrupted\n");
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("DEM".parse::<Method>().is_err());
    }

    #[test]
    fn grid_includes_baselines() {
        let spec = ExperimentSpec::grid(&[2], &[20, 30], &[5, 25], &[Method::DemBf], None);
        let baselines = spec.cells.iter().filter(|c| c.method == Method::Sobol).count();
        assert_eq!(baselines, 2);
        assert_eq!(spec.cells.len(), 2 + 1 + 2);
    }
}
