use crate::discrepancy::{AnchoredBox, Closure};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// Largest `(n+1)^d` accepted by [`bruteforce_discrepancy`].
pub const BRUTEFORCE_LIMIT: f64 = 1e8;

/// Star discrepancy by enumerating every grid corner.
///
/// Open boxes range over the coordinate grids with 1 appended, closed boxes
/// over the grids themselves. Intended as a reference for small inputs.
pub fn bruteforce_discrepancy<T: Scalar>(points: &PointSet<T>) -> Result<T> {
    let n = points.len();
    let d = points.dim();
    let size = ((n + 1) as f64).powi(d as i32);
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "(n+1)^d = {size:.3e} exceeds {BRUTEFORCE_LIMIT:.0e}"
        )));
    }
    let grids: Vec<Vec<T>> = (0..d)
        .map(|j| {
            let mut g: Vec<T> = (0..n).map(|i| points.coord(i, j)).collect();
            g.sort_by(|a, b| a.partial_cmp(b).unwrap());
            g.dedup();
            g
        })
        .collect();
    let open_grids: Vec<Vec<T>> = grids
        .iter()
        .map(|g| {
            let mut g = g.clone();
            if g.last().is_none_or(|&v| v < T::one()) {
                g.push(T::one());
            }
            g
        })
        .collect();
    let mut best = T::neg_infinity();
    for (grid, closure) in [(&open_grids, Closure::Open), (&grids, Closure::Closed)] {
        let mut idx = vec![0usize; d];
        loop {
            let corner = (0..d).map(|j| grid[j][idx[j]]).collect();
            let b = AnchoredBox { corner, closure };
            best = best.max(b.local_discrepancy(points));
            let mut j = 0;
            while j < d {
                idx[j] += 1;
                if idx[j] < grid[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == d {
                break;
            }
        }
    }
    Ok(best)
}
