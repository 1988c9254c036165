//! Sobol' sequence with the Antonov–Saleev Gray-code update and the
//! Bratley–Fox (TOMS 659) direction numbers, reproducing the output stream of
//! GSL's `gsl_qrng_sobol` bit for bit: 30-bit numerators, at most 40
//! dimensions, and the all-zero initial element skipped.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

pub const SOBOL_MAX_DIMENSION: usize = 40;
const BIT_COUNT: usize = 30;

/// Primitive polynomials over GF(2), binary encoded with the leading term.
const PRIMITIVE_POLYNOMIALS: [u32; SOBOL_MAX_DIMENSION] = [
    1, 3, 7, 11, 13, 19, 25, 37, 59, 47, 61, 55, 41, 67, 97, 91, 109, 103, 115, 131, 193, 137, 145,
    143, 241, 157, 185, 167, 229, 171, 213, 191, 253, 203, 211, 239, 247, 285, 369, 299,
];

const DEGREES: [usize; SOBOL_MAX_DIMENSION] = [
    0, 1, 2, 3, 3, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7,
    7, 7, 7, 7, 7, 8, 8, 8,
];

/// Initial direction numbers, `V_INIT[bit][dimension]`.
#[rustfmt::skip]
const V_INIT: [[u32; SOBOL_MAX_DIMENSION]; 8] = [
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
     1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 1, 3, 1, 3, 1, 3, 3, 1, 3, 1, 3, 1, 3, 1, 1, 3, 1, 3,
     1, 3, 1, 3, 3, 1, 3, 1, 3, 1, 3, 1, 1, 3, 1, 3, 1, 3, 1, 3],
    [0, 0, 0, 7, 5, 1, 3, 3, 7, 5, 5, 7, 7, 1, 3, 3, 7, 5, 1, 1,
     5, 3, 3, 1, 7, 5, 1, 3, 3, 7, 5, 1, 1, 5, 7, 7, 5, 1, 3, 3],
    [0, 0, 0, 0, 0, 1, 7, 9, 13, 11, 1, 3, 7, 9, 5, 13, 13, 11, 3, 15,
     5, 3, 15, 7, 9, 13, 9, 1, 11, 7, 5, 15, 1, 15, 11, 5, 3, 1, 7, 9],
    [0, 0, 0, 0, 0, 0, 0, 9, 3, 27, 15, 29, 21, 23, 19, 11, 25, 7, 13, 17,
     1, 25, 29, 3, 31, 11, 5, 23, 27, 19, 21, 5, 1, 17, 13, 7, 15, 9, 31, 9],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 37, 33, 7, 5, 11, 39, 63,
     27, 17, 15, 23, 29, 3, 21, 13, 31, 25, 9, 49, 33, 19, 29, 11, 19, 27, 15, 25],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 13,
     33, 115, 41, 79, 17, 29, 119, 75, 73, 105, 7, 59, 65, 21, 3, 113, 61, 89, 45, 107],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
     0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 7, 23, 39],
];

/// Incremental generator. Each call to [`next_numerators`] yields the next
/// point as 30-bit integer numerators over `2^30`.
///
/// [`next_numerators`]: SobolGenerator::next_numerators
#[derive(Clone, Debug)]
pub struct SobolGenerator {
    dim: usize,
    directions: Vec<[u32; BIT_COUNT]>,
    numerators: Vec<u32>,
    count: u32,
}

impl SobolGenerator {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > SOBOL_MAX_DIMENSION {
            return Err(Error::UnsupportedDimension {
                got: dim,
                max: SOBOL_MAX_DIMENSION,
            });
        }
        let mut directions = vec![[0u32; BIT_COUNT]; dim];
        directions[0] = [1; BIT_COUNT];
        for (d, v) in directions.iter_mut().enumerate().skip(1) {
            let degree = DEGREES[d];
            // include[k] is the coefficient of x^(degree-1-k).
            let mut poly = PRIMITIVE_POLYNOMIALS[d];
            let mut include = [false; 8];
            for k in (0..degree).rev() {
                include[k] = poly % 2 == 1;
                poly /= 2;
            }
            for j in 0..degree {
                v[j] = V_INIT[j][d];
            }
            for j in degree..BIT_COUNT {
                let mut next = v[j - degree];
                for k in 0..degree {
                    if include[k] {
                        next ^= v[j - k - 1] << (k + 1);
                    }
                }
                v[j] = next;
            }
        }
        // Scale column j by 2^(BIT_COUNT-1-j) so every entry is a numerator
        // over 2^BIT_COUNT.
        for v in directions.iter_mut() {
            for (j, x) in v.iter_mut().enumerate() {
                *x <<= BIT_COUNT - 1 - j;
            }
        }
        Ok(Self {
            dim,
            directions,
            numerators: vec![0; dim],
            count: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Advances and returns the numerators of the next point, or `None` once
    /// the `2^30 - 1` available points are exhausted.
    pub fn next_numerators(&mut self) -> Option<&[u32]> {
        let bit = self.count.trailing_ones() as usize;
        if bit >= BIT_COUNT {
            return None;
        }
        for (x, v) in self.numerators.iter_mut().zip(&self.directions) {
            *x ^= v[bit];
        }
        self.count += 1;
        Some(&self.numerators)
    }

    /// Advances and writes the next point into `out` as reals in `[0,1)`.
    pub fn next_point<T: Scalar>(&mut self, out: &mut [T]) -> Option<()> {
        let scale = 1.0 / (1u64 << BIT_COUNT) as f64;
        let nums = self.next_numerators()?;
        for (o, &x) in out.iter_mut().zip(nums) {
            *o = T::lit(x as f64 * scale);
        }
        Some(())
    }
}

/// The first `n` points of the `d`-dimensional Sobol' sequence.
pub fn sobol_points<T: Scalar>(n: usize, d: usize) -> Result<PointSet<T>> {
    if n == 0 {
        return Err(Error::NoPoints);
    }
    let mut gen = SobolGenerator::new(d)?;
    let mut coords = vec![T::zero(); n * d];
    for row in coords.chunks_exact_mut(d) {
        gen.next_point(row).ok_or_else(|| {
            Error::InvalidArgument(format!("{n} points exceed the Sobol' generator period"))
        })?;
    }
    PointSet::new(d, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_points_of_two_dimensions() {
        let p = sobol_points::<f64>(3, 2).unwrap();
        assert_eq!(p.coords(), &[0.5, 0.5, 0.75, 0.25, 0.25, 0.75]);
    }

    #[test]
    fn single_point_is_the_centre() {
        // Value recorded from gsl_qrng_sobol with dimension 2.
        let p = sobol_points::<f64>(1, 2).unwrap();
        assert_eq!(p.coords(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(SobolGenerator::new(0).is_err());
        assert!(SobolGenerator::new(41).is_err());
        assert!(SobolGenerator::new(40).is_ok());
    }

    #[test]
    fn prefix_property() {
        let a = sobol_points::<f64>(20, 5).unwrap();
        let b = sobol_points::<f64>(21, 5).unwrap();
        assert_eq!(a.coords(), &b.coords()[..100]);
    }
}
