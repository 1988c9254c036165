//! Reference strategies: best of many random subsets, and exhaustive search.

use rand::seq::index::sample;

use super::SubsetSelection;
use crate::discrepancy::{exact_discrepancy, exact_discrepancy_below};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rng;
use crate::scalar::Scalar;

/// Largest number of subsets [`exhaustive_best_subset`] will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("subset size {k} for {n} points")));
    }
    Ok(())
}

/// Best of `trials` uniform random `k`-subsets (earliest on ties).
pub fn random_subset_search<T: Scalar>(
    ground: &PointSet<T>,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<SubsetSelection<'_, T>> {
    let n = ground.len();
    check_k(n, k)?;
    let mut rng = rng::seeded(seed);
    let mut best: Option<SubsetSelection<'_, T>> = None;
    for _ in 0..trials.max(1) {
        let mut chosen = sample(&mut rng, n, k).into_vec();
        chosen.sort_unstable();
        let points = ground.select(&chosen)?;
        let report = match &best {
            None => Some(exact_discrepancy(&points)),
            Some(b) => exact_discrepancy_below(&points, b.report.value).0,
        };
        if let Some(report) = report {
            best = Some(SubsetSelection { ground, chosen, report });
        }
    }
    Ok(best.expect("at least one trial"))
}

/// `C(n, k)`, saturating.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k) as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul(n as u128 - i) / (i + 1);
    }
    c
}

/// Global optimum over all `k`-subsets; ties go to the lexicographically
/// smallest index set.
pub fn exhaustive_best_subset<T: Scalar>(ground: &PointSet<T>, k: usize) -> Result<SubsetSelection<'_, T>> {
    let n = ground.len();
    check_k(n, k)?;
    let count = binomial(n, k);
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "C({n},{k}) = {count} subsets exceeds {EXHAUSTIVE_LIMIT}"
        )));
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let first = ground.select(&idx)?;
    let mut best = SubsetSelection {
        ground,
        chosen: idx.clone(),
        report: exact_discrepancy(&first),
    };
    while next_combination(&mut idx, n) {
        let points = ground.select(&idx)?;
        if let (Some(report), _) = exact_discrepancy_below(&points, best.report.value) {
            best = SubsetSelection {
                ground,
                chosen: idx.clone(),
                report,
            };
        }
    }
    Ok(best)
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}
