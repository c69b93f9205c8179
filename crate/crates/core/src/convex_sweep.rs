//! Maximum clique for points in convex position, given an anchor point.
//!
//! After restricting to the anchor's unit disk and rotating so the anchor is
//! the leftmost point, the upper hull `p_1 = anchor, ..., p_t` is swept left
//! to right. At step `i` the sweep holds an upper clique `S_u(i)` (upper-hull
//! points left of `p_i` within distance 1 of it) and a lower clique
//! `S'_l(i)`, a superset of the analogous lower set `S_l(i)`. Their union is
//! cobipartite and contains every clique whose rightmost point is `p_i` and
//! which contains the anchor, so the best of the per-step cobipartite solves
//! is at least as large as any clique through the anchor. A mirrored run
//! handles cliques whose rightmost point is on the lower hull.
//!
//! Past the topmost upper-hull point `p_h`, `S'_l` only drops points of
//! region R1 that conflict with a newly inserted point. This keeps the total
//! number of insertions and deletions linear in the number of points.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::cobipartite::{max_clique_cobipartite, CobipartiteInstance};
use crate::error::{Error, Result};
use crate::geometry::{
    check_convex_position, dist_le_one, is_clique, normalize_for_anchor, upper_hull, CliqueResult,
    Normalized, Point, PointSet,
};

pub const ALGORITHM: &str = "convex-given";

/// Part of the right half of the anchor's unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionTag {
    /// Within distance 1 of the point one unit below the anchor.
    R1,
    R2,
}

pub fn classify_region(p: &Point, anchor: &Point) -> RegionTag {
    let below = Point::new(anchor.x, anchor.y - 1.0);
    if dist_le_one(p, &below) {
        RegionTag::R1
    } else {
        RegionTag::R2
    }
}

/// Points inserted into and deleted from `S'` by one sweep step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateBatch {
    pub insertions: Vec<usize>,
    pub deletions: Vec<usize>,
}

impl UpdateBatch {
    pub fn volume(&self) -> usize {
        self.insertions.len() + self.deletions.len()
    }
}

/// Sweep bookkeeping over a normalized point set. All ids are local to
/// [`SweepState::points`]; positions `i` and `h` are 0-based into `pu`.
#[derive(Debug, Clone)]
pub struct SweepState {
    pub points: PointSet,
    pub anchor: usize,
    /// Upper hull, left to right; `pu[0]` is the anchor.
    pub pu: Vec<usize>,
    /// All other points.
    pub pl: Vec<usize>,
    /// Position in `pu` of the point with the largest y.
    pub h: usize,
    /// Current position in `pu`.
    pub i: usize,
    /// Sorted `S_u(i)`.
    pub su: Vec<usize>,
    /// Sorted `S'_l(i)`.
    pub slp: Vec<usize>,
    /// Region tag for each point of `pl`, `None` for upper-hull points.
    pub region: Vec<Option<RegionTag>>,
}

impl SweepState {
    /// Starts a sweep on points already normalized around `anchor`.
    pub fn new(points: PointSet, anchor: usize) -> Result<Self> {
        let pu = upper_hull(&points)?;
        if pu.first() != Some(&anchor) {
            return Err(Error::Contract(format!(
                "anchor {anchor} is not the leftmost point after normalization"
            )));
        }
        let mut on_upper = vec![false; points.len()];
        for &id in &pu {
            on_upper[id] = true;
        }
        let pl: Vec<usize> = (0..points.len()).filter(|&id| !on_upper[id]).collect();
        let h = (0..pu.len())
            .max_by(|&a, &b| points.get(pu[a]).y.total_cmp(&points.get(pu[b]).y))
            .unwrap();
        let a = *points.get(anchor);
        let region = (0..points.len())
            .map(|id| (!on_upper[id]).then(|| classify_region(points.get(id), &a)))
            .collect();
        let mut state = Self {
            points,
            anchor,
            pu,
            pl,
            h,
            i: 0,
            su: Vec::new(),
            slp: Vec::new(),
            region,
        };
        (state.su, state.slp) = state.target_sets(0);
        Ok(state)
    }

    pub fn t(&self) -> usize {
        self.pu.len()
    }

    pub fn is_done(&self) -> bool {
        self.i + 1 >= self.t()
    }

    /// `(S_u(j), S_l(j))`: points of each part at or left of `p_j` and within
    /// distance 1 of it.
    pub fn target_sets(&self, j: usize) -> (Vec<usize>, Vec<usize>) {
        let pj = self.points.get(self.pu[j]);
        let pick = |ids: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = ids
                .iter()
                .copied()
                .filter(|&id| {
                    let p = self.points.get(id);
                    p.x <= pj.x && dist_le_one(p, pj)
                })
                .collect();
            out.sort_unstable();
            out
        };
        (pick(&self.pu), pick(&self.pl))
    }

    /// Moves from `p_i` to `p_{i+1}` and returns the change to `S'`.
    pub fn advance(&mut self) -> Result<UpdateBatch> {
        if self.is_done() {
            return Err(Error::InvalidArgument(
                "sweep already at the last hull point".into(),
            ));
        }
        let next = self.i + 1;
        let (su_next, sl_next) = self.target_sets(next);
        let slp_next = if next <= self.h {
            sl_next
        } else {
            let mut cur = self.slp.clone();
            let inserted: Vec<usize> = sl_next
                .iter()
                .copied()
                .filter(|id| self.slp.binary_search(id).is_err())
                .collect();
            for p in inserted {
                let pp = *self.points.get(p);
                cur.retain(|&q| {
                    self.region[q] != Some(RegionTag::R1) || dist_le_one(&pp, self.points.get(q))
                });
                let at = cur.binary_search(&p).unwrap_err();
                cur.insert(at, p);
            }
            cur
        };

        let mut batch = UpdateBatch::default();
        for (old, new) in [(&self.su, &su_next), (&self.slp, &slp_next)] {
            batch
                .insertions
                .extend(new.iter().filter(|id| old.binary_search(id).is_err()));
            batch
                .deletions
                .extend(old.iter().filter(|id| new.binary_search(id).is_err()));
        }
        batch.insertions.sort_unstable();
        batch.deletions.sort_unstable();

        self.i = next;
        self.su = su_next;
        self.slp = slp_next;
        if !is_clique(&self.points, &self.slp)? {
            return Err(Error::Contract(format!(
                "lower set is not a clique at step {next}"
            )));
        }
        Ok(batch)
    }

    /// Maximum clique of `S_u(i) ∪ S'_l(i)`, in local ids.
    pub fn solve_current(&self) -> Result<CliqueResult> {
        max_clique_cobipartite(&CobipartiteInstance::new(&self.points, &self.su, &self.slp))
    }
}

/// Per-run instrumentation of set updates and invariant checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    /// Points in the normalized instance.
    pub n: usize,
    /// Hull positions visited.
    pub steps: usize,
    pub su_insertions: Vec<u32>,
    pub su_deletions: Vec<u32>,
    /// Lower-set insertions and deletions while `i <= h`.
    pub sl_insertions_rising: Vec<u32>,
    pub sl_deletions_rising: Vec<u32>,
    /// Lower-set insertions and deletions while `i > h`.
    pub sl_insertions_falling: Vec<u32>,
    pub sl_deletions_falling: Vec<u32>,
    /// `Σ |I(i)| + |D(i)|`, counting the initial `S'(1)` as insertions.
    pub total_updates: usize,
    /// Steps where `S_l(i)` was not contained in `S'_l(i)`.
    pub containment_failures: usize,
    /// Steps where either side failed the clique check.
    pub clique_failures: usize,
}

impl SweepStats {
    fn new(n: usize) -> Self {
        Self {
            n,
            su_insertions: vec![0; n],
            su_deletions: vec![0; n],
            sl_insertions_rising: vec![0; n],
            sl_deletions_rising: vec![0; n],
            sl_insertions_falling: vec![0; n],
            sl_deletions_falling: vec![0; n],
            ..Default::default()
        }
    }

    pub fn max_su_insertions(&self) -> u32 {
        self.su_insertions.iter().copied().max().unwrap_or(0)
    }

    pub fn max_su_deletions(&self) -> u32 {
        self.su_deletions.iter().copied().max().unwrap_or(0)
    }

    pub fn max_sl_deletions_rising(&self) -> u32 {
        self.sl_deletions_rising.iter().copied().max().unwrap_or(0)
    }

    pub fn max_sl_updates(&self) -> u32 {
        (0..self.n)
            .map(|id| {
                self.sl_insertions_rising[id]
                    + self.sl_deletions_rising[id]
                    + self.sl_insertions_falling[id]
                    + self.sl_deletions_falling[id]
            })
            .max()
            .unwrap_or(0)
    }
}

/// Result of one full sweep in local ids.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub best: CliqueResult,
    pub stats: SweepStats,
}

/// Runs the sweep to completion, solving every `G(S'(i))`.
pub fn run_sweep(mut state: SweepState) -> Result<SweepRun> {
    let n = state.points.len();
    let mut stats = SweepStats::new(n);
    for &id in state.su.iter().chain(&state.slp) {
        stats.su_insertions[id] += u32::from(state.region[id].is_none());
        stats.sl_insertions_rising[id] += u32::from(state.region[id].is_some());
    }
    stats.total_updates = state.su.len() + state.slp.len();

    let mut best = CliqueResult::empty(ALGORITHM);
    loop {
        stats.steps += 1;
        let (_, sl_exact) = state.target_sets(state.i);
        if !sl_exact
            .iter()
            .all(|id| state.slp.binary_search(id).is_ok())
        {
            stats.containment_failures += 1;
        }
        if !is_clique(&state.points, &state.su)? || !is_clique(&state.points, &state.slp)? {
            stats.clique_failures += 1;
        }
        let found = state.solve_current()?;
        if found.size() > best.size() {
            best = CliqueResult::new(found.indices, ALGORITHM);
        }
        if state.is_done() {
            break;
        }
        let rising = state.i < state.h;
        let batch = state.advance()?;
        stats.total_updates += batch.volume();
        for &id in &batch.insertions {
            match (state.region[id].is_none(), rising) {
                (true, _) => stats.su_insertions[id] += 1,
                (false, true) => stats.sl_insertions_rising[id] += 1,
                (false, false) => stats.sl_insertions_falling[id] += 1,
            }
        }
        for &id in &batch.deletions {
            match (state.region[id].is_none(), rising) {
                (true, _) => stats.su_deletions[id] += 1,
                (false, true) => stats.sl_deletions_rising[id] += 1,
                (false, false) => stats.sl_deletions_falling[id] += 1,
            }
        }
    }
    if stats.containment_failures > 0 || stats.clique_failures > 0 {
        return Err(Error::Contract(format!(
            "sweep invariants failed: {} containment, {} clique",
            stats.containment_failures, stats.clique_failures
        )));
    }
    Ok(SweepRun { best, stats })
}

/// Normalizes `ps` around `anchor` and sets up the (unmirrored) sweep.
pub fn prepare_sweep(ps: &PointSet, anchor: usize, seed: u64) -> Result<SweepState> {
    check_input(ps, anchor)?;
    let norm = normalize_for_anchor(ps, anchor, seed)?;
    SweepState::new(norm.points, norm.anchor)
}

fn check_input(ps: &PointSet, anchor: usize) -> Result<()> {
    ps.check_id(anchor)?;
    ps.validate()?;
    let convex = check_convex_position(ps)?;
    if convex.collinear > 0 {
        warn!(
            "{} points lie on hull edges; the sweep assumes no three collinear points",
            convex.collinear
        );
    }
    Ok(())
}

/// Reflects the normalized set across the horizontal line through its anchor.
fn mirrored(norm: &Normalized) -> PointSet {
    let ay = norm.points.get(norm.anchor).y;
    PointSet::new(
        norm.points
            .points()
            .iter()
            .map(|p| Point::new(p.x, 2.0 * ay - p.y))
            .collect(),
    )
}

/// Clique through the anchor's sweep, with instrumentation of both runs.
#[derive(Debug, Clone)]
pub struct GivenPointReport {
    pub clique: CliqueResult,
    pub upper: SweepStats,
    pub lower: SweepStats,
}

/// A clique at least as large as every clique containing `anchor`; a maximum
/// clique whenever `anchor` belongs to one.
pub fn max_clique_given_point(ps: &PointSet, anchor: usize, seed: u64) -> Result<CliqueResult> {
    Ok(max_clique_given_point_traced(ps, anchor, seed)?.clique)
}

pub fn max_clique_given_point_traced(
    ps: &PointSet,
    anchor: usize,
    seed: u64,
) -> Result<GivenPointReport> {
    check_input(ps, anchor)?;
    given_point_unchecked(ps, anchor, seed)
}

/// The sweep without the input checks; `ps` must be valid and convex.
pub(crate) fn given_point_unchecked(
    ps: &PointSet,
    anchor: usize,
    seed: u64,
) -> Result<GivenPointReport> {
    let norm = normalize_for_anchor(ps, anchor, seed)?;
    let upper = run_sweep(SweepState::new(norm.points.clone(), norm.anchor)?)?;
    let lower = run_sweep(SweepState::new(mirrored(&norm), norm.anchor)?)?;
    let best = if lower.best.size() > upper.best.size() {
        &lower.best
    } else {
        &upper.best
    };
    let clique = CliqueResult::new(norm.to_original(&best.indices), ALGORITHM).verified(ps)?;
    Ok(GivenPointReport {
        clique,
        upper: upper.stats,
        lower: lower.stats,
    })
}
