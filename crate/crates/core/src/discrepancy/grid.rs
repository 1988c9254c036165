use crate::discrepancy::{AnchoredBox, Closure};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// Per-dimension sort orders of `P ∪ {(1,…,1)}`.
///
/// Index `n` denotes the appended all-ones point. Ties are broken by point
/// index so the orders are deterministic.
#[derive(Clone, Debug)]
pub struct GridIndexing<T> {
    n: usize,
    perms: Vec<Vec<usize>>,
    ranks: Vec<Vec<usize>>,
    coords: Vec<Vec<T>>,
}

impl<T: Scalar> GridIndexing<T> {
    pub fn new(points: &PointSet<T>) -> Self {
        let n = points.len();
        let d = points.dim();
        let mut perms = Vec::with_capacity(d);
        let mut ranks = Vec::with_capacity(d);
        let mut coords = Vec::with_capacity(d);
        for j in 0..d {
            let value = |i: usize| if i == n { T::one() } else { points.coord(i, j) };
            let mut perm: Vec<usize> = (0..=n).collect();
            perm.sort_by(|&a, &b| value(a).partial_cmp(&value(b)).unwrap().then(a.cmp(&b)));
            let mut rank = vec![0; n + 1];
            for (r, &i) in perm.iter().enumerate() {
                rank[i] = r;
            }
            coords.push(perm.iter().map(|&i| value(i)).collect());
            perms.push(perm);
            ranks.push(rank);
        }
        Self {
            n,
            perms,
            ranks,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.perms.len()
    }

    /// Number of real points (the all-ones point excluded).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Point index at `rank` in dimension `j`.
    pub fn at(&self, j: usize, rank: usize) -> usize {
        self.perms[j][rank]
    }

    /// Rank of point `index` in dimension `j`.
    pub fn rank(&self, j: usize, index: usize) -> usize {
        self.ranks[j][index]
    }

    /// Coordinate `j` of the point at `rank`.
    pub fn value_at(&self, j: usize, rank: usize) -> T {
        self.coords[j][rank]
    }

    pub fn perm(&self, j: usize) -> &[usize] {
        &self.perms[j]
    }

    /// Edge ranks of `witness` among the points accepted by `member`.
    ///
    /// For each dimension the smallest-rank member lying in the closed box
    /// with coordinate equal to the corner is chosen. A corner coordinate of
    /// 1 with no such member maps to the all-ones point (rank `n`).
    pub fn edge_ranks(
        &self,
        points: &PointSet<T>,
        witness: &AnchoredBox<T>,
        member: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let closed = AnchoredBox {
            corner: witness.corner.clone(),
            closure: Closure::Closed,
        };
        (0..self.dim())
            .map(|j| {
                let q = witness.corner[j];
                let start = self.coords[j].partition_point(|&v| v < q);
                let mut r = start;
                while r < self.n && self.coords[j][r] == q {
                    let i = self.perms[j][r];
                    if member(i) && closed.contains(points.point(i)) {
                        return r;
                    }
                    r += 1;
                }
                if q >= T::one() {
                    self.n
                } else {
                    start.min(self.n)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::random_points;

    #[test]
    fn orders_are_sorted_bijections() {
        let p = random_points::<f64>(30, 4, 8).unwrap();
        let g = GridIndexing::new(&p);
        for j in 0..4 {
            let mut seen = vec![false; 31];
            for r in 0..=30 {
                seen[g.at(j, r)] = true;
                assert_eq!(g.rank(j, g.at(j, r)), r);
                if r > 0 {
                    assert!(g.value_at(j, r - 1) <= g.value_at(j, r));
                }
            }
            assert!(seen.iter().all(|&s| s));
            assert_eq!(g.at(j, 30), 30);
            assert_eq!(g.value_at(j, 30), 1.0);
        }
    }

    #[test]
    fn ties_break_by_index() {
        let p = PointSet::new(1, vec![0.5, 0.2, 0.5, 0.2]).unwrap();
        let g = GridIndexing::new(&p);
        assert_eq!(g.perm(0), &[1, 3, 0, 2, 4]);
    }
}
