//! Point sets in the unit cube: construction, lifting and text I/O.

mod io;
mod sobol;

pub use io::{format_points, read_points, write_points};
pub use sobol::{sobol_points, SobolGenerator, SOBOL_MAX_DIMENSION};

use rand::distributions::{Distribution, Standard};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::Scalar;

/// An ordered set of `n >= 1` points in `[0,1]^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Scalar> PointSet<T> {
    /// Builds a set from flat row-major coordinates.
    pub fn new(dim: usize, coords: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension { got: 0, max: usize::MAX });
        }
        if coords.is_empty() {
            return Err(Error::NoPoints);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: coords.len() % dim,
            });
        }
        for (i, &c) in coords.iter().enumerate() {
            if !(c >= T::zero() && c <= T::one()) {
                return Err(Error::OutOfRange {
                    point: i / dim,
                    value: c.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { dim, coords })
    }

    /// Builds a set from individual points; all rows must share one length.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().ok_or(Error::NoPoints)?.as_ref().len();
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coord(&self, i: usize, j: usize) -> T {
        self.coords[i * self.dim + j]
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &[T]> + ExactSizeIterator + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// The points at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if i >= self.len() {
                return Err(Error::InvalidArgument(format!(
                    "index {i} out of range for {} points",
                    self.len()
                )));
            }
            coords.extend_from_slice(self.point(i));
        }
        Self::new(self.dim, coords)
    }

    /// The first `n` points.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix of {n} points from a set of {}",
                self.len()
            )));
        }
        Ok(Self {
            dim: self.dim,
            coords: self.coords[..n * self.dim].to_vec(),
        })
    }

    /// Converts every coordinate to another scalar type.
    pub fn cast<U: Scalar>(&self) -> PointSet<U> {
        PointSet {
            dim: self.dim,
            coords: self
                .coords
                .iter()
                .map(|c| U::from_f64(c.to_f64().unwrap()).unwrap())
                .collect(),
        }
    }

    /// Mutable coordinate access for in-crate optimisers; callers keep the
    /// values inside the unit cube.
    pub(crate) fn coords_mut(&mut self) -> &mut [T] {
        &mut self.coords
    }
}

/// `n` i.i.d. uniform points in `[0,1)^d` drawn from the crate's seeded
/// ChaCha8 stream.
pub fn random_points<T>(n: usize, d: usize, seed: u64) -> Result<PointSet<T>>
where
    T: Scalar,
    Standard: Distribution<T>,
{
    if n == 0 {
        return Err(Error::NoPoints);
    }
    let mut rng = rng::seeded(seed);
    let coords = (0..n * d).map(|_| rng.gen::<T>()).collect();
    PointSet::new(d, coords)
}

/// Turns the first `n` points of a `d`-dimensional sequence into a
/// `(d+1)`-dimensional set by appending `i/n` to the `i`-th point (1-based).
pub fn lift_sequence_to_set<T: Scalar>(points: &PointSet<T>) -> PointSet<T> {
    let n = points.len();
    let d = points.dim();
    let nf = T::from_count(n);
    let mut coords = Vec::with_capacity(n * (d + 1));
    for (i, p) in points.iter().enumerate() {
        coords.extend_from_slice(p);
        coords.push(T::from_count(i + 1) / nf);
    }
    PointSet { dim: d + 1, coords }
}
