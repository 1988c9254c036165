//! Local and global L∞ star discrepancy.
//!
//! Boxes are anchored at the origin. An open box `[0,q)` counts points with
//! `p_i < q_i` in every coordinate; a closed box `[0,q]` counts `p_i <= q_i`.
//! A corner coordinate equal to 1 always admits the point, so a coordinate
//! of exactly 1 never leaves a point outside the unit cube's boxes.

mod brute;
mod exact;
mod grid;
mod ta;

pub use brute::bruteforce_discrepancy;
pub use exact::{exact_discrepancy, exact_discrepancy_below, has_box_at_least, ENVELOPE_DIM, ENVELOPE_POINTS};
pub use grid::GridIndexing;
pub use ta::{ta_discrepancy, ta_discrepancy_below, TaParams};

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Open,
    Closed,
}

/// An anchored box `[0,corner)` or `[0,corner]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnchoredBox<T> {
    pub corner: Vec<T>,
    pub closure: Closure,
}

impl<T: Scalar> AnchoredBox<T> {
    pub fn contains(&self, p: &[T]) -> bool {
        match self.closure {
            Closure::Open => p
                .iter()
                .zip(&self.corner)
                .all(|(&x, &q)| x < q || q >= T::one()),
            Closure::Closed => p.iter().zip(&self.corner).all(|(&x, &q)| x <= q),
        }
    }

    pub fn volume(&self) -> T {
        self.corner.iter().fold(T::one(), |v, &q| v * q)
    }

    /// Local discrepancy of this box with its own closure: underfill for an
    /// open box, overfill for a closed one.
    pub fn local_discrepancy(&self, points: &PointSet<T>) -> T {
        let inside = points.iter().filter(|p| self.contains(p)).count();
        let frac = T::from_count(inside) / T::from_count(points.len());
        match self.closure {
            Closure::Open => self.volume() - frac,
            Closure::Closed => frac - self.volume(),
        }
    }

    /// Deterministic witness order: lexicographic corner, then open first.
    pub(crate) fn key_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.corner.iter().zip(&other.corner) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) | None => continue,
                Some(o) => return o,
            }
        }
        self.closure.cmp(&other.closure)
    }
}

/// Result of a discrepancy computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport<T> {
    pub value: T,
    pub witness: AnchoredBox<T>,
    /// False when `value` is only a lower bound.
    pub exact: bool,
    /// For each dimension `j`, the 0-based rank in the evaluated set's
    /// coordinate-`j` order of an edge point of the witness. Rank `n` is the
    /// appended all-ones point.
    pub edge_ranks: Vec<usize>,
    /// Local discrepancy evaluations performed.
    pub evaluations: u64,
}

/// `(δ(q), δ̄(q))`: volume minus open-box fraction, closed-box fraction minus
/// volume.
pub fn local_discrepancies<T: Scalar>(q: &[T], points: &PointSet<T>) -> Result<(T, T)> {
    if q.len() != points.dim() {
        return Err(Error::DimensionMismatch {
            expected: points.dim(),
            got: q.len(),
        });
    }
    let open = AnchoredBox {
        corner: q.to_vec(),
        closure: Closure::Open,
    };
    let closed = AnchoredBox {
        corner: q.to_vec(),
        closure: Closure::Closed,
    };
    Ok((open.local_discrepancy(points), closed.local_discrepancy(points)))
}
