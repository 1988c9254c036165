//! Exact star discrepancy by branch-and-bound over critical boxes.
//!
//! Dimensions are fixed from the last to the first. At each level the active
//! points are those whose already-fixed coordinates lie inside the box; the
//! next corner coordinate ranges over the active coordinates in that
//! dimension. Open boxes take the first excluded value (or 1), closed boxes the
//! last included one. The first dimension is resolved by a linear sweep.
//!
//! Subtrees are cut against the best value so far using order statistics of
//! the active points: a closed box holding `s` of them has every free side at
//! least the `s`-th smallest coordinate, and an open box excluding a point has
//! volume at most that point's largest free coordinate. Consecutive children
//! are screened in small blocks with a single bound before being visited one
//! by one.

use std::cmp::Ordering;

use crate::discrepancy::{AnchoredBox, Closure, DiscrepancyReport, GridIndexing};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// Dimension beyond which the exact engine is outside its design envelope.
pub const ENVELOPE_DIM: usize = 6;
/// Point count beyond which the exact engine is outside its design envelope.
pub const ENVELOPE_POINTS: usize = 250;

/// Number of consecutive children screened together.
const BLOCK: usize = 4;

/// A per-point key with its rank order and the keys in that order.
struct SortedKeys<T> {
    rank: Vec<u32>,
    sorted: Vec<T>,
}

impl<T: Scalar> SortedKeys<T> {
    fn new(keys: &[T]) -> Self {
        let mut order: Vec<u32> = (0..keys.len() as u32).collect();
        order.sort_by(|&a, &b| keys[a as usize].partial_cmp(&keys[b as usize]).unwrap().then(a.cmp(&b)));
        let mut rank = vec![0u32; keys.len()];
        for (k, &i) in order.iter().enumerate() {
            rank[i as usize] = k as u32;
        }
        let sorted = order.iter().map(|&i| keys[i as usize]).collect();
        Self { rank, sorted }
    }
}

#[derive(Default)]
struct Buffers<T> {
    ids: Vec<u32>,
    vals: Vec<T>,
    maxima: Vec<T>,
    prods: Vec<T>,
    /// Sorted coordinates of the child set in each free dimension.
    stats: Vec<Vec<T>>,
}

/// `max_k (c * b[k] - a[k])`, or -inf for empty input.
#[inline]
fn max_affine<T: Scalar>(b: &[T], a: &[T], c: T) -> T {
    let mut m = [T::neg_infinity(); 4];
    let mut bc = b.chunks_exact(4);
    let mut ac = a.chunks_exact(4);
    for (bb, aa) in (&mut bc).zip(&mut ac) {
        for l in 0..4 {
            let v = c * bb[l] - aa[l];
            m[l] = if v > m[l] { v } else { m[l] };
        }
    }
    for (&bb, &aa) in bc.remainder().iter().zip(ac.remainder()) {
        let v = c * bb - aa;
        m[0] = if v > m[0] { v } else { m[0] };
    }
    m[0].max(m[1]).max(m[2].max(m[3]))
}

/// `max_k (a[k] - c * b[k])`, or -inf for empty input.
#[inline]
fn max_neg_affine<T: Scalar>(a: &[T], b: &[T], c: T) -> T {
    let mut m = [T::neg_infinity(); 4];
    let mut bc = b.chunks_exact(4);
    let mut ac = a.chunks_exact(4);
    for (bb, aa) in (&mut bc).zip(&mut ac) {
        for l in 0..4 {
            let v = aa[l] - c * bb[l];
            m[l] = if v > m[l] { v } else { m[l] };
        }
    }
    for (&bb, &aa) in bc.remainder().iter().zip(ac.remainder()) {
        let v = aa - c * bb;
        m[0] = if v > m[0] { v } else { m[0] };
    }
    m[0].max(m[1]).max(m[2].max(m[3]))
}

/// `out` = `by_rank[rank[i]]` for `i` in `list`, in rank order.
fn gather<U: Copy>(list: &[u32], rank: &[u32], by_rank: &[U], mark: &mut [bool], scratch: &mut Vec<u32>, out: &mut Vec<U>) {
    out.clear();
    if list.len() * 8 < mark.len() {
        scratch.clear();
        scratch.extend(list.iter().map(|&i| rank[i as usize]));
        scratch.sort_unstable();
        out.extend(scratch.iter().map(|&r| by_rank[r as usize]));
    } else {
        for &i in list {
            mark[rank[i as usize] as usize] = true;
        }
        for (r, m) in mark.iter_mut().enumerate() {
            if *m {
                *m = false;
                out.push(by_rank[r]);
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Goal<T> {
    Maximise,
    /// Stop at the first box with local discrepancy `>= threshold`.
    Reach(T),
}

struct Search<'a, T> {
    points: &'a PointSet<T>,
    goal: Goal<T>,
    frac: Vec<T>,
    rank: Vec<Vec<u32>>,
    best: T,
    best_box: Option<AnchoredBox<T>>,
    q_open: Vec<T>,
    q_closed: Vec<T>,
    /// `free_max[j][p]`, `free_prod[j][p]`: max and product of point `p`'s
    /// coordinates `0..j`.
    free_max: Vec<Vec<T>>,
    free_prod: Vec<Vec<T>>,
    /// Point ids in rank order per dimension, and the first coordinates in
    /// rank order.
    by_rank: Vec<Vec<u32>>,
    sorted_cols: Vec<Vec<T>>,
    max_order: Vec<SortedKeys<T>>,
    prod_order: Vec<SortedKeys<T>>,
    /// Coordinates by dimension.
    cols: Vec<Vec<T>>,
    /// Smallest `s >= 1` with `s/n >= floor`: closed scans start here.
    closed_first: usize,
    /// Per-level reusable buffers.
    bufs: Vec<Buffers<T>>,
    mark: Vec<bool>,
    scratch: Vec<u32>,
    /// Largest coordinate below 1 in each dimension, over all points.
    below_one: Vec<Option<T>>,
    evaluations: u64,
    done: bool,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(points: &'a PointSet<T>, goal: Goal<T>) -> Self {
        let n = points.len();
        let d = points.dim();
        let nn = T::from_count(n);
        let frac = (0..=n).map(|s| T::from_count(s) / nn).collect();
        let coord_order: Vec<SortedKeys<T>> = (0..d)
            .map(|j| SortedKeys::new(&(0..n).map(|i| points.coord(i, j)).collect::<Vec<_>>()))
            .collect();
        let by_rank = coord_order
            .iter()
            .map(|o| {
                let mut ids = vec![0u32; n];
                for (i, &r) in o.rank.iter().enumerate() {
                    ids[r as usize] = i as u32;
                }
                ids
            })
            .collect();
        let (rank, sorted_cols): (Vec<Vec<u32>>, Vec<Vec<T>>) =
            coord_order.into_iter().map(|o| (o.rank, o.sorted)).unzip();
        let below_one = (0..d)
            .map(|j| {
                (0..n)
                    .map(|i| points.coord(i, j))
                    .filter(|&x| x < T::one())
                    .fold(None, |m: Option<T>, x| Some(m.map_or(x, |m| m.max(x))))
            })
            .collect();
        let mut free_max = vec![vec![T::zero(); n]; d];
        let mut free_prod = vec![vec![T::one(); n]; d];
        for j in 1..d {
            for i in 0..n {
                let x = points.coord(i, j - 1);
                free_max[j][i] = free_max[j - 1][i].max(x);
                free_prod[j][i] = free_prod[j - 1][i] * x;
            }
        }
        let max_order = free_max.iter().map(|k| SortedKeys::new(k)).collect();
        let prod_order = free_prod.iter().map(|k| SortedKeys::new(k)).collect();
        let bufs = (0..d)
            .map(|_| Buffers {
                ids: Vec::with_capacity(n),
                vals: Vec::with_capacity(n),
                maxima: Vec::with_capacity(n),
                prods: Vec::with_capacity(n),
                stats: Vec::new(),
            })
            .collect();
        Self {
            points,
            goal,
            frac,
            rank,
            free_max,
            free_prod,
            by_rank,
            sorted_cols,
            max_order,
            prod_order,
            bufs,
            mark: vec![false; n],
            cols: (0..d).map(|j| (0..n).map(|i| points.coord(i, j)).collect()).collect(),
            closed_first: 1,
            scratch: Vec::with_capacity(n),
            below_one,
            best: T::neg_infinity(),
            best_box: None,
            q_open: vec![T::one(); d],
            q_closed: vec![T::one(); d],
            evaluations: 0,
            done: false,
        }
    }

    /// Pruning threshold. For a target it sits a few ulps low, since the
    /// bounds round differently from the box values they cover.
    fn floor(&self) -> T {
        match self.goal {
            Goal::Maximise => self.best,
            Goal::Reach(t) => t - T::epsilon() * T::lit(16.0) * t.abs().max(T::one()),
        }
    }

    fn run(&mut self) {
        let floor = self.floor();
        self.set_floor(floor);
        let d = self.points.dim();
        let n = self.points.len();
        let (vo, vc) = (Some(T::one()), Some(T::one()));
        if d == 1 {
            let mut vals: Vec<T> = (0..n).map(|i| self.points.coord(i, 0)).collect();
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            self.leaf(&vals, vo, vc);
        } else {
            let mut list: Vec<u32> = (0..n as u32).collect();
            let r = &self.rank[d - 1];
            list.sort_by_key(|&i| r[i as usize]);
            self.node(d - 1, &list, vo, vc);
        }
    }

    #[inline]
    fn x(&self, i: u32, j: usize) -> T {
        self.cols[j][i as usize]
    }

    /// `list` holds the active points sorted by dimension `j`.
    fn node(&mut self, j: usize, list: &[u32], vo: Option<T>, vc: Option<T>) {
        let a = list.len();
        let one = T::one();
        let child_dim = j - 1;
        let mut buf = std::mem::take(&mut self.bufs[j]);
        let Buffers {
            ids: ref mut child_ids,
            vals: ref mut child_vals,
            ref mut maxima,
            ref mut prods,
            ref mut stats,
        } = buf;
        if child_dim == 0 {
            gather(list, &self.rank[0], &self.sorted_cols[0], &mut self.mark, &mut self.scratch, child_vals);
        } else {
            let (mark, scratch) = (&mut self.mark, &mut self.scratch);
            gather(list, &self.rank[child_dim], &self.by_rank[child_dim], mark, scratch, child_ids);
            let o = &self.max_order[j];
            gather(list, &o.rank, &o.sorted, mark, scratch, maxima);
            let o = &self.prod_order[j];
            gather(list, &o.rank, &o.sorted, mark, scratch, prods);
            stats.resize_with(j, Vec::new);
            for (i, st) in stats.iter_mut().enumerate() {
                gather(list, &self.rank[i], &self.sorted_cols[i], mark, scratch, st);
            }
        }
        // Leaf children are screened in blocks of consecutive t: one scan of
        // the largest child set bounds every leaf in the block.
        let mut block_lo = a + 1;
        let (mut block_open, mut block_closed) = (true, true);
        for t in (0..=a).rev() {
            if t < a {
                let gone = list[t];
                if child_dim == 0 {
                    let x = self.x(gone, 0);
                    let pos = child_vals.partition_point(|&v| v < x);
                    child_vals.remove(pos);
                } else {
                    let key = self.rank[child_dim][gone as usize];
                    let r = &self.rank[child_dim];
                    let pos = child_ids
                        .binary_search_by_key(&key, |&i| r[i as usize])
                        .expect("active point present in child list");
                    child_ids.remove(pos);
                    let m = self.free_max[j][gone as usize];
                    maxima.remove(maxima.partition_point(|&v| v < m));
                    let p = self.free_prod[j][gone as usize];
                    prods.remove(prods.partition_point(|&v| v < p));
                    for (i, st) in stats.iter_mut().enumerate() {
                        let x = self.cols[i][gone as usize];
                        st.remove(st.partition_point(|&v| v < x));
                    }
                }
            }
            let floor = self.floor();
            if t < block_lo {
                block_lo = t.saturating_sub(BLOCK - 1);
                (block_open, block_closed) = if child_dim == 0 {
                    self.screen_leaves(j, list, child_vals, block_lo, t, vo, vc, floor)
                } else {
                    self.screen_nodes(j, list, maxima, prods, stats, block_lo, t, vo, vc, floor)
                };
            }
            if t >= 1 && t < a && self.x(list[t - 1], j) == self.x(list[t], j) {
                continue;
            }
            let next = if t < a { self.x(list[t], j) } else { one };
            let open_bound = vo.map(|v| v * next);
            let open_ok = open_bound.is_some_and(|b| b >= floor);
            let closed_ok = vc.is_some() && t >= 1 && self.frac[t] >= floor;
            if !open_ok && !closed_ok {
                // Both bounds only shrink as t decreases.
                break;
            }
            let vo2 = if !open_ok {
                None
            } else if t == a || next < one {
                self.q_open[j] = next;
                open_bound
            } else {
                // Excluding a point at coordinate 1 needs a side below 1: the
                // largest grid value, if it still admits list[..t].
                match self.below_one[j] {
                    Some(m) if t == 0 || m > self.x(list[t - 1], j) => {
                        self.q_open[j] = m;
                        vo.map(|v| v * m).filter(|&b| b >= floor)
                    }
                    _ => None,
                }
            };
            let vc2 = if closed_ok {
                let last = self.x(list[t - 1], j);
                self.q_closed[j] = last;
                vc.map(|v| v * last)
            } else {
                None
            };
            let (vo2, vc2) = if child_dim > 0 {
                (
                    vo2.filter(|&v| block_open && self.open_bound(v, maxima) >= floor),
                    vc2.filter(|&v| block_closed && self.closed_bound(v, prods, stats) >= floor),
                )
            } else {
                (vo2.filter(|_| block_open), vc2.filter(|_| block_closed))
            };
            if vo2.is_none() && vc2.is_none() {
                continue;
            }
            if child_dim == 0 {
                self.leaf(child_vals, vo2, vc2);
            } else {
                self.node(child_dim, child_ids, vo2, vc2);
            }
            if self.done {
                break;
            }
        }
        self.bufs[j] = buf;
    }

    /// Whether any leaf child with `t` in `lo..=hi` of a level-`j` node can
    /// reach `floor`, per closure. `vals` is the child set at `hi`.
    ///
    /// Smaller `t` only removes points and lowers the side in dimension `j`,
    /// so open counts drop by at most `hi - lo` and closed volumes are at
    /// least those at `lo`.
    #[allow(clippy::too_many_arguments)]
    fn screen_leaves(&self, j: usize, list: &[u32], vals: &[T], lo: usize, hi: usize, vo: Option<T>, vc: Option<T>, floor: T) -> (bool, bool) {
        let a = list.len();
        let len = vals.len();
        let open = vo.is_some_and(|vo| {
            let side = if hi < a { self.x(list[hi], j) } else { T::one() };
            let f = vo * side;
            let slack = self.frac[hi - lo];
            let top = max_affine(vals, &self.frac[..len], f).max(f - self.frac[len]);
            top + slack >= floor
        });
        let closed = vc.is_some_and(|vc| {
            if hi == 0 {
                return false;
            }
            let f = vc * self.x(list[lo.max(1) - 1], j);
            let first = self.closed_first;
            first <= len && max_neg_affine(&self.frac[first..=len], &vals[first - 1..len], f) >= floor
        });
        (open, closed)
    }

    /// [`Self::screen_leaves`] for inner children, using the node bounds.
    #[allow(clippy::too_many_arguments)]
    fn screen_nodes(
        &self,
        j: usize,
        list: &[u32],
        maxima: &[T],
        prods: &[T],
        stats: &[Vec<T>],
        lo: usize,
        hi: usize,
        vo: Option<T>,
        vc: Option<T>,
        floor: T,
    ) -> (bool, bool) {
        let a = list.len();
        let open = vo.is_some_and(|vo| {
            let side = if hi < a { self.x(list[hi], j) } else { T::one() };
            self.open_bound(vo * side, maxima) + self.frac[hi - lo] >= floor
        });
        let closed = vc.is_some_and(|vc| hi > 0 && self.closed_bound(vc * self.x(list[lo.max(1) - 1], j), prods, stats) >= floor);
        (open, closed)
    }

    /// Upper bound on open-box values below a node with volume factor `vo`.
    /// Excluding a point forces the free volume below that point's largest
    /// free coordinate, so with `s` points inside the volume is at most the
    /// `(s+1)`-th smallest such maximum.
    fn open_bound(&self, vo: T, maxima: &[T]) -> T {
        let t = maxima.len();
        let mut best = T::neg_infinity();
        for s in 0..=t {
            let cap = vo - self.frac[s];
            if cap <= best {
                break;
            }
            let m = if s < t { maxima[s].min(T::one()) } else { T::one() };
            best = best.max(vo * m - self.frac[s]);
        }
        best
    }

    /// Upper bound on closed-box values below a node with volume factor `vc`.
    /// Containing `s` of the active points forces each free side to at least
    /// the `s`-th smallest active coordinate, and the free volume to at least
    /// the `s`-th smallest free product.
    fn closed_bound(&self, vc: T, prods: &[T], stats: &[Vec<T>]) -> T {
        let mut best = T::neg_infinity();
        for s in self.closed_first..=prods.len() {
            let mut vol = prods[s - 1];
            let mut sides = T::one();
            for st in stats {
                sides *= st[s - 1];
            }
            if sides > vol {
                vol = sides;
            }
            let l = self.frac[s] - vc * vol;
            if l > best {
                best = l;
            }
        }
        best
    }

    /// `vals` are the active first coordinates, sorted.
    ///
    /// Within a run of equal values only the first (open) or last (closed)
    /// index yields a valid box, and it is also the largest of the run, so
    /// taking the first maximiser needs no explicit tie handling.
    fn leaf(&mut self, vals: &[T], vo: Option<T>, vc: Option<T>) {
        let len = vals.len();
        let floor = self.floor();
        let one = T::one();
        if let Some(vo) = vo {
            // Terms from s on are at most vo - s/n, and q0 = 1 covers all of
            // vals, so only s below both limits need scanning.
            let below = if vals.last().is_none_or(|&v| v < one) {
                len
            } else {
                vals.partition_point(|&v| v < one)
            };
            let reach = self.reach(vo, floor);
            let mut end = below.min(reach);
            if end > 0 && vo * vals[end - 1] < floor {
                end = 0;
            }
            let (fr, vs) = (&self.frac[..end], &vals[..end]);
            let mut top = max_affine(vs, fr, vo);
            self.evaluations += end as u64 + 1;
            let mut q0 = one;
            if top > T::neg_infinity() {
                let arg = (0..end).find(|&s| vo * vs[s] - fr[s] == top).unwrap();
                q0 = vals[arg];
            }
            if below < len && below < reach {
                // Points at 1 remain; exclude them with the largest grid
                // value below 1 if it keeps vals[..below] inside.
                if let Some(m) = self.below_one[0] {
                    if below == 0 || m > vals[below - 1] {
                        let l = vo * m - self.frac[below];
                        self.evaluations += 1;
                        if l > top {
                            top = l;
                            q0 = m;
                        }
                    }
                }
            }
            let l = vo - self.frac[len];
            if l > top {
                top = l;
                q0 = one;
            }
            if top >= floor {
                self.offer(top, q0, Closure::Open);
                if self.done {
                    return;
                }
            }
        }
        if let Some(vc) = vc {
            // Terms with s/n < floor cannot qualify.
            let first = self.closed_first;
            if first > len || self.frac[len] - vc * vals[first - 1] < floor {
                return;
            }
            let (fr, vs) = (&self.frac[first..=len], &vals[first - 1..len]);
            let top = max_neg_affine(fr, vs, vc);
            self.evaluations += fr.len() as u64;
            if top >= floor {
                let arg = (0..fr.len()).find(|&k| fr[k] - vc * vs[k] == top).unwrap();
                self.offer(top, vs[arg], Closure::Closed);
            }
        }
    }

    /// Number of `s` with `vo - s/n >= floor`.
    #[inline]
    fn reach(&self, vo: T, floor: T) -> usize {
        let n = self.frac.len() - 1;
        let gap = vo - floor;
        if !gap.is_finite() {
            return if gap > T::zero() { n + 1 } else { 0 };
        }
        let est = (gap * T::from_count(n)).to_f64().unwrap_or(0.0).floor();
        let mut r = (est.max(0.0) as usize + 1).min(n + 1);
        while r > 0 && vo - self.frac[r - 1] < floor {
            r -= 1;
        }
        while r <= n && vo - self.frac[r] >= floor {
            r += 1;
        }
        r
    }

    fn set_floor(&mut self, floor: T) {
        self.closed_first = self.frac.partition_point(|&f| f < floor).max(1);
    }

    fn offer(&mut self, value: T, q0: T, closure: Closure) {
        match self.goal {
            Goal::Reach(t) => {
                if value >= t {
                    self.best = value;
                    self.best_box = Some(self.make_box(q0, closure));
                    self.done = true;
                }
            }
            Goal::Maximise => {
                if value > self.best {
                    self.best = value;
                    self.set_floor(value);
                    self.best_box = Some(self.make_box(q0, closure));
                } else if value == self.best {
                    let cand = self.make_box(q0, closure);
                    let better = self
                        .best_box
                        .as_ref()
                        .is_none_or(|b| cand.key_cmp(b) == Ordering::Less);
                    if better {
                        self.best_box = Some(cand);
                    }
                }
            }
        }
    }

    fn make_box(&self, q0: T, closure: Closure) -> AnchoredBox<T> {
        let mut corner = match closure {
            Closure::Open => self.q_open.clone(),
            Closure::Closed => self.q_closed.clone(),
        };
        corner[0] = q0;
        AnchoredBox { corner, closure }
    }
}

fn warn_envelope<T: Scalar>(points: &PointSet<T>) {
    if points.dim() > ENVELOPE_DIM || points.len() > ENVELOPE_POINTS {
        log::warn!(
            "exact discrepancy outside design envelope (d={}, n={}); running time may be large",
            points.dim(),
            points.len()
        );
    }
}

fn report<T: Scalar>(points: &PointSet<T>, value: T, witness: AnchoredBox<T>, evaluations: u64) -> DiscrepancyReport<T> {
    let edge_ranks = GridIndexing::new(points).edge_ranks(points, &witness, |_| true);
    DiscrepancyReport {
        value,
        witness,
        exact: true,
        edge_ranks,
        evaluations,
    }
}

/// Exact `d*_∞(P)` with a witness box.
///
/// Among boxes attaining the maximum the witness is the one with the
/// lexicographically smallest corner, an open box preferred over a closed one
/// with the same corner.
pub fn exact_discrepancy<T: Scalar>(points: &PointSet<T>) -> DiscrepancyReport<T> {
    warn_envelope(points);
    let mut s = Search::new(points, Goal::Maximise);
    s.run();
    let witness = s.best_box.take().expect("closed box at the all-ones corner always exists");
    report(points, s.best, witness, s.evaluations)
}

/// Whether some anchored box has local discrepancy at least `threshold`.
///
/// Returns the first such box found, or `None`, plus the evaluation count.
pub fn has_box_at_least<T: Scalar>(points: &PointSet<T>, threshold: T) -> (Option<(T, AnchoredBox<T>)>, u64) {
    let mut s = Search::new(points, Goal::Reach(threshold));
    s.run();
    let found = s.best_box.take().map(|b| (s.best, b));
    (found, s.evaluations)
}

/// Exact discrepancy if it is strictly below `cutoff`, else `None`.
///
/// Much cheaper than [`exact_discrepancy`] when the answer is `None`, since
/// the search stops at the first box reaching the cutoff.
pub fn exact_discrepancy_below<T: Scalar>(points: &PointSet<T>, cutoff: T) -> (Option<DiscrepancyReport<T>>, u64) {
    let (hit, evals) = has_box_at_least(points, cutoff);
    if hit.is_some() {
        return (None, evals);
    }
    let mut r = exact_discrepancy(points);
    r.evaluations += evals;
    let total = r.evaluations;
    if r.value >= cutoff {
        return (None, total);
    }
    (Some(r), total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_centre_point() {
        let p = PointSet::new(2, vec![0.5, 0.5]).unwrap();
        let r = exact_discrepancy(&p);
        assert_eq!(r.value, 0.75);
        assert_eq!(r.witness.corner, vec![0.5, 0.5]);
        assert_eq!(r.witness.closure, Closure::Closed);
    }

    #[test]
    fn one_dimension_closed_form() {
        // For sorted x_i in 1-D, d* = max_i max(i/n - x_i, x_i - (i-1)/n).
        let xs = [0.1, 0.35, 0.4, 0.9];
        let p = PointSet::new(1, xs.to_vec()).unwrap();
        let mut want = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            want = want.max((i + 1) as f64 / 4.0 - x).max(x - i as f64 / 4.0);
        }
        want = want.max(1.0 - 1.0);
        assert!((exact_discrepancy(&p).value - want).abs() < 1e-15);
    }

    #[test]
    fn threshold_query_agrees() {
        let p = crate::pointset::random_points::<f64>(20, 3, 4).unwrap();
        let v = exact_discrepancy(&p).value;
        assert!(has_box_at_least(&p, v).0.is_some());
        assert!(has_box_at_least(&p, v + 1e-9).0.is_none());
        assert!(exact_discrepancy_below(&p, v).0.is_none());
        assert_eq!(exact_discrepancy_below(&p, v + 1e-9).0.unwrap().value, v);
    }

    #[test]
    fn threshold_at_the_exact_value_is_always_reached() {
        for seed in 0..300 {
            let p = crate::pointset::random_points::<f64>(6, 2, seed).unwrap();
            let v = exact_discrepancy(&p).value;
            assert!(has_box_at_least(&p, v).0.is_some(), "seed {seed}");
        }
    }
}
