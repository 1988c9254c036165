//! A ground set whose 1-swap landscape has a non-global local minimum.
//!
//! `k + 1` anchors `q_i` sit on the hyperbola `x·y = 1 − α`. Set A takes the
//! points `(q_{i,1}, q_{i+1,2})`; every largest empty box of A has volume
//! exactly `1 − α`. Set B shifts those points down by `δ` (and the first one
//! left by `γ`), which shrinks every empty box, yet reaching B from A needs
//! all points exchanged at once.

use serde::Serialize;

use crate::discrepancy::{bruteforce_discrepancy, exact_discrepancy};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, Serialize)]
pub struct AdversarialInstance {
    pub k: usize,
    pub n: usize,
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    #[serde(skip)]
    pub points: PointSet<f64>,
    /// Indices `0..k`.
    pub set_a: Vec<usize>,
    /// Indices `k..2k`.
    pub set_b: Vec<usize>,
}

/// Builds the instance for subset size `k` in dimension `d`; coordinates
/// beyond the second are 1.
pub fn adversarial_instance(k: usize, alpha: f64, d: usize) -> Result<AdversarialInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 2")));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d}, need d >= 2")));
    }
    let kf = k as f64;
    if !(alpha > 0.0 && alpha < 1.0 / (2.0 * kf)) {
        return Err(Error::Infeasible(format!("alpha = {alpha} must lie in (0, 1/(2k))")));
    }
    let c = 1.0 - alpha;
    let low = 1.0 - 1.0 / kf;

    // Anchors evenly spaced in x over [1 − α, 1], so all coordinates stay in
    // the unit square.
    let qx: Vec<f64> = (0..=k).map(|i| c + alpha * i as f64 / kf).collect();
    let qy: Vec<f64> = qx.iter().map(|x| c / x).collect();
    for i in 0..k {
        if qx[i] * qy[i + 1] <= 1.0 - 1.0 / (2.0 * kf) {
            return Err(Error::Infeasible(format!(
                "q_{{{i},1}}·q_{{{},2}} = {} not above 1 − 1/(2k)",
                i + 1,
                qx[i] * qy[i + 1]
            )));
        }
    }
    let ax: Vec<f64> = qx[..k].to_vec();
    let ay: Vec<f64> = qy[1..].to_vec();

    let gap = ay.windows(2).map(|w| (w[0] - w[1]).abs()).fold(f64::INFINITY, f64::min);
    let curve = (0..k).map(|i| ay[i] - low / ax[i]).fold(f64::INFINITY, f64::min);
    let delta = 0.5 * gap.min(curve);
    let gamma = 0.5 * (ax[0] - low / (ay[0] - delta));
    if !(delta > 0.0 && gamma > 0.0 && gamma < ax[0]) {
        return Err(Error::Infeasible(format!("no room for the shifts (delta {delta}, gamma {gamma})")));
    }

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(2 * k);
    let pad = |x: f64, y: f64| {
        let mut p = vec![1.0; d];
        p[0] = x;
        p[1] = y;
        p
    };
    for i in 0..k {
        rows.push(pad(ax[i], ay[i]));
    }
    rows.push(pad(ax[0] - gamma, ay[0] - delta));
    for i in 1..k {
        rows.push(pad(ax[i], ay[i] - delta));
    }
    for r in &rows {
        if r[0] * r[1] < low {
            return Err(Error::Infeasible(format!("point {:?} below x·y = 1 − 1/k", &r[..2])));
        }
    }
    let points = PointSet::from_rows(&rows)?;
    Ok(AdversarialInstance {
        k,
        n: 2 * k,
        alpha,
        delta,
        gamma,
        points,
        set_a: (0..k).collect(),
        set_b: (k..2 * k).collect(),
    })
}

/// Largest number of swaps [`verify_local_minimum`] will try.
pub const VERIFY_LIMIT: usize = 1_000_000;

fn discrepancy(points: &PointSet<f64>) -> f64 {
    // The grid enumeration is independent of the branch-and-bound engine the
    // heuristic uses; fall back to the latter only for large sets.
    bruteforce_discrepancy(points).unwrap_or_else(|_| exact_discrepancy(points).value)
}

/// Whether no single swap strictly lowers the discrepancy of `chosen`,
/// by trying every swap.
///
/// Values closer than `1e-12` (relative) count as equal.
pub fn verify_local_minimum(ground: &PointSet<f64>, chosen: &[usize]) -> Result<bool> {
    let n = ground.len();
    let mut mask = vec![false; n];
    for &i in chosen {
        if i >= n || mask[i] {
            return Err(Error::InvalidArgument(format!("bad or repeated index {i}")));
        }
        mask[i] = true;
    }
    let swaps = chosen.len() * (n - chosen.len());
    if swaps > VERIFY_LIMIT {
        return Err(Error::GuardExceeded(format!("{swaps} swaps exceed {VERIFY_LIMIT}")));
    }
    let value = discrepancy(&ground.select(chosen)?);
    let tol = 1e-12 * value.max(1.0);
    let mut current = chosen.to_vec();
    for slot in 0..chosen.len() {
        for h in (0..n).filter(|&h| !mask[h]) {
            current[slot] = h;
            if discrepancy(&ground.select(&current)?) < value - tol {
                return Ok(false);
            }
        }
        current[slot] = chosen[slot];
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_infeasible_parameters() {
        assert!(matches!(adversarial_instance(3, 0.4, 2), Err(Error::Infeasible(_))));
        assert!(adversarial_instance(1, 1e-3, 2).is_err());
        assert!(adversarial_instance(3, 1e-3, 1).is_err());
    }

    #[test]
    fn invariants_hold() {
        let inst = adversarial_instance(4, 1e-3, 2).unwrap();
        let p = &inst.points;
        assert_eq!(p.len(), 8);
        for i in 0..8 {
            assert!(p.coord(i, 0) * p.coord(i, 1) >= 1.0 - 0.25);
        }
        assert!(inst.gamma > 0.0 && inst.gamma < p.coord(0, 0));
    }
}
