//! The two swap scans of the heuristic.
//!
//! For a closed (overfull) witness `[0,q]` only swaps that take a point out
//! of the box or bring none in can help; for an open (underfull) witness
//! `[0,q)` the mirror holds. Edge points are the chosen points on the box
//! boundary, one per dimension, located by their rank `c[j]` in the ground
//! set's coordinate-`j` order.

use std::collections::HashSet;
use std::time::Instant;

use rand::Rng as _;

use super::{Engine, SubsetSelection, SwapCandidate};
use crate::discrepancy::{
    exact_discrepancy, exact_discrepancy_below, ta_discrepancy, ta_discrepancy_below, AnchoredBox, Closure,
    DiscrepancyReport, GridIndexing, TaParams,
};
use crate::pointset::PointSet;
use crate::rng;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub enum ScanOutcome<T> {
    /// The first swap that lowers the discrepancy, in scan order.
    Improved(SwapCandidate<T>),
    /// Every candidate of the scan failed. After Step 2 this certifies the
    /// subset as a local minimum for the families tried.
    NoImprovement,
    /// The time cutoff fired.
    Interrupted,
}

pub(crate) enum Verdict<T> {
    Better(DiscrepancyReport<T>),
    NotBetter,
    Interrupted,
}

/// Evaluation state shared by the scans of one trial.
pub(crate) struct Context<'a, T> {
    ground: &'a PointSet<T>,
    engine: &'a Engine,
    ta_seed: u64,
    deadline: Option<Instant>,
    tried: HashSet<(usize, usize)>,
    pub calls: u64,
    /// Accept swaps that keep the value unchanged.
    pub plateau: bool,
}

impl<'a, T: Scalar> Context<'a, T> {
    pub fn new(ground: &'a PointSet<T>, engine: &'a Engine, ta_seed: u64, deadline: Option<Instant>) -> Self {
        Self {
            ground,
            engine,
            ta_seed,
            deadline,
            tried: HashSet::new(),
            calls: 0,
            plateau: false,
        }
    }

    pub fn reset_tried(&mut self) {
        self.tried.clear();
    }

    /// Scores the subset `indices`. With a cutoff, `Better` means the value
    /// is below it (or equal, in plateau mode); without one it always is.
    pub fn evaluate(&mut self, indices: &[usize], cutoff: Option<T>) -> Verdict<T> {
        if self.deadline.is_some_and(|t| Instant::now() >= t) {
            return Verdict::Interrupted;
        }
        self.calls += 1;
        let points = self.ground.select(indices).expect("indices are in range");
        let cutoff = cutoff.map(|c| if self.plateau { bump(c) } else { c });
        match (self.engine, cutoff) {
            (Engine::Exact, None) => Verdict::Better(exact_discrepancy(&points)),
            (Engine::Exact, Some(c)) => match exact_discrepancy_below(&points, c).0 {
                Some(r) => Verdict::Better(r),
                None => Verdict::NotBetter,
            },
            (Engine::Ta(p), c) => {
                let params = TaParams {
                    seed: rng::derive_seed(self.ta_seed ^ p.seed, self.calls),
                    ..*p
                };
                match c {
                    None => Verdict::Better(ta_discrepancy(&points, &params)),
                    Some(c) => {
                        let r = ta_discrepancy_below(&points, &params, c);
                        if r.value < c {
                            Verdict::Better(r)
                        } else {
                            Verdict::NotBetter
                        }
                    }
                }
            }
        }
    }

    /// Tries swapping `remove` out and `add` in. `None` if the pair was
    /// already tried for this subset or the two points coincide.
    fn try_swap(
        &mut self,
        state: &SubsetSelection<'_, T>,
        remove: usize,
        add: usize,
    ) -> Option<Result<SwapCandidate<T>, bool>> {
        if self.ground.point(remove) == self.ground.point(add) || !self.tried.insert((remove, add)) {
            return None;
        }
        let indices: Vec<usize> = {
            let mut v: Vec<usize> = state.chosen.iter().map(|&i| if i == remove { add } else { i }).collect();
            v.sort_unstable();
            v
        };
        match self.evaluate(&indices, Some(state.report.value)) {
            Verdict::Better(new_report) => Some(Ok(SwapCandidate {
                remove_index: remove,
                add_index: add,
                new_report,
            })),
            Verdict::NotBetter => Some(Err(false)),
            Verdict::Interrupted => Some(Err(true)),
        }
    }
}

/// Smallest representable margin above `c`, so that a `< bump(c)` test
/// accepts values equal to `c`.
fn bump<T: Scalar>(c: T) -> T {
    c + T::epsilon() * T::lit(4.0) * c.abs().max(T::one())
}

macro_rules! attempt {
    ($ctx:expr, $state:expr, $r:expr, $h:expr) => {
        match $ctx.try_swap($state, $r, $h) {
            Some(Ok(c)) => return ScanOutcome::Improved(c),
            Some(Err(true)) => return ScanOutcome::Interrupted,
            _ => {}
        }
    };
}

/// Witness edges: rank `c[j]` and, when that rank holds a chosen point on the
/// boundary, the point's index.
struct Edges {
    ranks: Vec<usize>,
    points: Vec<Option<usize>>,
}

fn edges<T: Scalar>(state: &SubsetSelection<'_, T>, grid: &GridIndexing<T>, mask: &[bool]) -> Edges {
    let ground = state.ground;
    let witness = &state.report.witness;
    let n = ground.len();
    let ranks = grid.edge_ranks(ground, witness, |i| mask[i]);
    let points = ranks
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            if r >= n {
                return None;
            }
            let i = grid.at(j, r);
            (mask[i] && ground.coord(i, j) == witness.corner[j]).then_some(i)
        })
        .collect();
    Edges { ranks, points }
}

pub(crate) fn step1<T: Scalar>(
    ctx: &mut Context<'_, T>,
    state: &SubsetSelection<'_, T>,
    grid: &GridIndexing<T>,
    rotation: usize,
) -> ScanOutcome<T> {
    let n = state.ground.len();
    let d = state.ground.dim();
    let mask = state.mask();
    let e = edges(state, grid, &mask);
    let closed = state.report.witness.closure == Closure::Closed;
    let valid = || (0..d).filter(|&j| e.points[j].is_some()).map(|j| e.ranks[j]);
    let reach = if closed {
        valid().min().map_or(0, |c| n - 1 - c)
    } else {
        valid().max().unwrap_or(0)
    };
    for i in 1..=reach {
        for m in 0..d {
            let j = (rotation + m) % d;
            let Some(edge) = e.points[j] else { continue };
            let c = e.ranks[j];
            let b = if closed {
                if c + i > n - 1 {
                    continue;
                }
                c + i
            } else {
                if i > c {
                    continue;
                }
                c - i
            };
            let h = grid.at(j, b);
            if !mask[h] {
                attempt!(ctx, state, edge, h);
            }
        }
    }
    ScanOutcome::NoImprovement
}

pub(crate) fn step2<T: Scalar>(
    ctx: &mut Context<'_, T>,
    state: &SubsetSelection<'_, T>,
    grid: &GridIndexing<T>,
    full: bool,
) -> ScanOutcome<T> {
    let ground = state.ground;
    let n = ground.len();
    let mask = state.mask();
    let e = edges(state, grid, &mask);
    let witness: &AnchoredBox<T> = &state.report.witness;
    let closed = witness.closure == Closure::Closed;

    // Edge point against the unchosen points on the other side of it.
    for j in 0..ground.dim() {
        let Some(edge) = e.points[j] else { continue };
        let c = e.ranks[j];
        let ranks = if closed { 0..c } else { c + 1..n };
        for b in ranks {
            let h = grid.at(j, b);
            if !mask[h] {
                attempt!(ctx, state, edge, h);
            }
        }
    }

    // Chosen points counted by the box against unchosen points it misses,
    // or the reverse for an open box.
    let inside: Vec<bool> = (0..n).map(|i| witness.contains(ground.point(i))).collect();
    let removable = |i: usize| mask[i] && inside[i] == closed;
    let addable = |i: usize| !mask[i] && inside[i] != closed;
    for r in (0..n).filter(|&i| removable(i)) {
        for h in (0..n).filter(|&i| addable(i)) {
            attempt!(ctx, state, r, h);
        }
    }

    if full {
        for &r in &state.chosen {
            for h in (0..n).filter(|&i| !mask[i]) {
                attempt!(ctx, state, r, h);
            }
        }
    }
    ScanOutcome::NoImprovement
}

/// Step 1 on its own: the breadth-first scan outward from the witness
/// edges, starting at a dimension drawn from `dim_order_seed`.
///
/// `grid` must index `state.ground`.
pub fn step1_scan<T: Scalar>(
    state: &SubsetSelection<'_, T>,
    grid: &GridIndexing<T>,
    engine: &Engine,
    dim_order_seed: u64,
) -> ScanOutcome<T> {
    let rotation = rng::seeded(dim_order_seed).gen_range(0..state.ground.dim());
    let mut ctx = Context::new(state.ground, engine, dim_order_seed, None);
    step1(&mut ctx, state, grid, rotation)
}

/// Step 2 on its own: the remaining witness-affecting swaps, then every
/// other swap if `full_neighborhood_check` is set.
///
/// `grid` must index `state.ground`.
pub fn step2_bruteforce<T: Scalar>(
    state: &SubsetSelection<'_, T>,
    grid: &GridIndexing<T>,
    engine: &Engine,
    full_neighborhood_check: bool,
) -> ScanOutcome<T> {
    let mut ctx = Context::new(state.ground, engine, 0, None);
    step2(&mut ctx, state, grid, full_neighborhood_check)
}
