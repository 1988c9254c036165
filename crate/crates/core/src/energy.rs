//! Steinerberger's energy functional
//!
//! `E[X] = Σ_{m≠n} Π_k f(|x_{m,k} − x_{n,k}|)`, `f(t) = 1 − ln(2 sin(π t))`,
//!
//! summed over ordered pairs, with gradient descent on it and the
//! descent-then-subset-selection pipeline.
//!
//! `f` diverges at separations 0 and 1, so separations are clamped into
//! `[clamp_eps, 1 − clamp_eps]` before `f` or `f'` is applied.

use serde::Serialize;

use crate::discrepancy::DiscrepancyReport;
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;
use crate::subset::{select_subset, HeuristicConfig, SelectionStats};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyParams {
    pub max_iters: usize,
    /// Initial step; `None` means `1e-3 / n`.
    pub step: Option<f64>,
    pub max_halvings: u32,
    /// Stop once the relative energy decrease of an iteration falls below this.
    pub convergence_tol: f64,
    pub clamp_eps: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            step: None,
            max_halvings: 30,
            convergence_tol: 1e-9,
            clamp_eps: 1e-9,
        }
    }
}

impl EnergyParams {
    fn validate(&self) -> Result<()> {
        if !(self.clamp_eps > 0.0 && self.clamp_eps < 0.5) {
            return Err(Error::InvalidArgument(format!("clamp_eps {} outside (0, 0.5)", self.clamp_eps)));
        }
        if self.step.is_some_and(|s| !(s > 0.0)) {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        Ok(())
    }
}

/// Energy value and the number of clamped separations met computing it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Energy<T> {
    pub value: T,
    pub clamped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DescentTrace {
    /// Energy of the start set, then after every accepted iteration.
    pub energies: Vec<f64>,
    pub iterations: usize,
    /// Stopped on the relative-decrease test (or a vanishing gradient).
    pub converged: bool,
    pub clamped: usize,
}

fn sep<T: Scalar>(a: T, b: T) -> (T, T) {
    let diff = a - b;
    let sign = if diff > T::zero() {
        T::one()
    } else if diff < T::zero() {
        -T::one()
    } else {
        T::zero()
    };
    (diff.abs(), sign)
}

fn clamp<T: Scalar>(t: T, eps: T) -> (T, bool) {
    if t < eps {
        (eps, true)
    } else if t > T::one() - eps {
        (T::one() - eps, true)
    } else {
        (t, false)
    }
}

fn f<T: Scalar>(t: T) -> T {
    T::one() - (T::lit(2.0) * (T::PI() * t).sin()).ln()
}

fn df<T: Scalar>(t: T) -> T {
    -T::PI() / (T::PI() * t).tan()
}

fn check<T: Scalar>(points: &PointSet<T>) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("energy needs at least two points".into()));
    }
    Ok(())
}

/// Energy with explicit clamping and a count of clamped separations.
pub fn energy_with<T: Scalar>(points: &PointSet<T>, clamp_eps: f64) -> Result<Energy<T>> {
    check(points)?;
    let eps = T::lit(clamp_eps);
    let n = points.len();
    let mut value = T::zero();
    let mut clamped = 0;
    for m in 0..n {
        for l in m + 1..n {
            let mut prod = T::one();
            for (&a, &b) in points.point(m).iter().zip(points.point(l)) {
                let (t, c) = clamp(sep(a, b).0, eps);
                clamped += c as usize;
                prod *= f(t);
            }
            value += prod;
        }
    }
    // Each unordered pair appears twice in the ordered sum.
    Ok(Energy {
        value: value + value,
        clamped: 2 * clamped,
    })
}

/// `E[X]` with the default clamp.
pub fn energy<T: Scalar>(points: &PointSet<T>) -> Result<T> {
    Ok(energy_with(points, EnergyParams::default().clamp_eps)?.value)
}

/// Analytic gradient, row-major `n × d`.
pub fn energy_gradient<T: Scalar>(points: &PointSet<T>) -> Result<Vec<T>> {
    gradient_with(points, EnergyParams::default().clamp_eps)
}

fn gradient_with<T: Scalar>(points: &PointSet<T>, clamp_eps: f64) -> Result<Vec<T>> {
    check(points)?;
    let eps = T::lit(clamp_eps);
    let n = points.len();
    let d = points.dim();
    let two = T::lit(2.0);
    let mut grad = vec![T::zero(); n * d];
    let mut fs = vec![T::zero(); d];
    let mut dfs = vec![T::zero(); d];
    for m in 0..n {
        for l in m + 1..n {
            let (pm, pl) = (points.point(m), points.point(l));
            for k in 0..d {
                let (t, s) = sep(pm[k], pl[k]);
                let t = clamp(t, eps).0;
                fs[k] = f(t);
                dfs[k] = s * df(t);
            }
            for k in 0..d {
                let rest = (0..d).filter(|&i| i != k).fold(T::one(), |acc, i| acc * fs[i]);
                // Both ordered pairs contribute, and x_m and x_l move oppositely.
                let g = two * dfs[k] * rest;
                grad[m * d + k] += g;
                grad[l * d + k] -= g;
            }
        }
    }
    Ok(grad)
}

/// Backtracking gradient descent on the energy.
///
/// Each iteration starts from twice the last accepted step and halves it
/// until the energy strictly decreases; coordinates are clamped into
/// `[clamp_eps, 1 − clamp_eps]`. The trace therefore strictly decreases.
pub fn gradient_descent<T: Scalar>(points: &PointSet<T>, params: &EnergyParams) -> Result<(PointSet<T>, DescentTrace)> {
    params.validate()?;
    check(points)?;
    let lo = T::lit(params.clamp_eps);
    let hi = T::one() - lo;
    let mut x = points.clone();
    let e0 = energy_with(&x, params.clamp_eps)?;
    let mut current = e0.value;
    let mut trace = DescentTrace {
        energies: vec![current.to_f64().unwrap()],
        clamped: e0.clamped,
        ..Default::default()
    };
    let initial_step = params.step.unwrap_or(1e-3 / points.len() as f64);
    let mut step = T::lit(initial_step);

    while trace.iterations < params.max_iters {
        let grad = gradient_with(&x, params.clamp_eps)?;
        if grad.iter().all(|g| *g == T::zero()) {
            trace.converged = true;
            break;
        }
        let mut s = step + step;
        let mut accepted = None;
        for _ in 0..=params.max_halvings {
            let mut y = x.clone();
            for (c, &g) in y.coords_mut().iter_mut().zip(&grad) {
                *c = (*c - s * g).max(lo).min(hi);
            }
            let e = energy_with(&y, params.clamp_eps)?;
            if e.value < current {
                trace.clamped += e.clamped;
                accepted = Some((y, e.value));
                break;
            }
            s /= T::lit(2.0);
        }
        let Some((y, e)) = accepted else { break };
        let decrease = (current - e) / current.abs().max(T::min_positive_value());
        x = y;
        current = e;
        step = s;
        trace.iterations += 1;
        trace.energies.push(e.to_f64().unwrap());
        if decrease.to_f64().unwrap() < params.convergence_tol {
            trace.converged = true;
            break;
        }
    }
    if !trace.converged {
        log::debug!("descent stopped after {} iterations without converging", trace.iterations);
    }
    Ok((x, trace))
}

/// Outcome of descent followed by subset selection on the descended set.
#[derive(Clone, Debug)]
pub struct PipelineResult<T> {
    pub descended: PointSet<T>,
    pub chosen: Vec<usize>,
    pub report: DiscrepancyReport<T>,
    pub trace: DescentTrace,
    pub stats: SelectionStats,
}

impl<T: Scalar> PipelineResult<T> {
    pub fn points(&self) -> PointSet<T> {
        self.descended.select(&self.chosen).expect("chosen indices are in range")
    }
}

/// Gradient descent, then subset selection on the result.
pub fn energy_then_subset<T: Scalar>(
    points: &PointSet<T>,
    k: usize,
    eparams: &EnergyParams,
    hcfg: &HeuristicConfig,
) -> Result<PipelineResult<T>> {
    if k == 0 || k > points.len() {
        return Err(Error::InvalidArgument(format!("subset size {k} for {} points", points.len())));
    }
    let (descended, trace) = gradient_descent(points, eparams)?;
    let (sel, stats) = select_subset(&descended, k, hcfg)?;
    let (chosen, report) = (sel.chosen, sel.report);
    Ok(PipelineResult {
        descended,
        chosen,
        report,
        trace,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_in_one_dimension() {
        let p = PointSet::new(1, vec![0.25f64, 0.75]).unwrap();
        let e = energy(&p).unwrap();
        assert!((e - 2.0 * (1.0 - 2f64.ln())).abs() < 1e-12);
        let g = energy_gradient(&p).unwrap();
        assert!(g.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn coincident_coordinates_are_clamped() {
        let p = PointSet::new(2, vec![0.5f64, 0.1, 0.5, 0.9]).unwrap();
        let e = energy_with(&p, 1e-9).unwrap();
        assert!(e.value.is_finite());
        assert_eq!(e.clamped, 2);
        assert!(energy_gradient(&p).unwrap().iter().all(|g| g.is_finite()));
    }

    #[test]
    fn rejects_bad_params() {
        let p = PointSet::new(1, vec![0.25f64, 0.75]).unwrap();
        let bad = EnergyParams {
            clamp_eps: 0.5,
            ..Default::default()
        };
        assert!(gradient_descent(&p, &bad).is_err());
        assert!(energy(&PointSet::new(1, vec![0.5f64]).unwrap()).is_err());
    }
}
