//! Planar primitives and the unit-distance predicate that defines the graph.
//!
//! The unit-disk graph over a [`PointSet`] is never materialized: two points
//! are adjacent iff [`dist_le_one`] holds, which compares the squared distance
//! against 1 in double precision with no tolerance.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// `true` iff the two points are at Euclidean distance at most 1.
#[inline]
pub fn dist_le_one(p: &Point, q: &Point) -> bool {
    p.dist_sq(q) <= 1.0
}

/// Orientation of `r` relative to the directed line `p -> q`: positive for a
/// left turn, negative for a right turn, zero when collinear. Exact.
#[inline]
pub fn orient(p: &Point, q: &Point, r: &Point) -> f64 {
    robust::orient2d(
        robust::Coord { x: p.x, y: p.y },
        robust::Coord { x: q.x, y: q.y },
        robust::Coord { x: r.x, y: r.y },
    )
}

/// Ordered planar points; a point's id is its position.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        Self { points }
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Self {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    #[inline]
    pub fn get(&self, id: usize) -> &Point {
        &self.points[id]
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        dist_le_one(&self.points[a], &self.points[b])
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { id, n: self.len() })
        }
    }

    /// Sub-instance over `ids`, in the given order.
    pub fn subset(&self, ids: &[usize]) -> PointSet {
        PointSet::new(ids.iter().map(|&i| self.points[i]).collect())
    }

    /// Solver entry check: every coordinate finite and no two points equal.
    pub fn validate(&self) -> Result<()> {
        if let Some(id) = self.points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { id });
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| cmp_xy(&self.points[a], &self.points[b]));
        for w in order.windows(2) {
            if self.points[w[0]] == self.points[w[1]] {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoint { first, second });
            }
        }
        Ok(())
    }
}

impl From<Vec<Point>> for PointSet {
    fn from(points: Vec<Point>) -> Self {
        Self::new(points)
    }
}

fn cmp_xy(a: &Point, b: &Point) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// A clique found by one of the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    /// Sorted, distinct point ids.
    pub indices: Vec<usize>,
    pub algorithm: String,
}

impl CliqueResult {
    pub fn new(mut indices: Vec<usize>, algorithm: impl Into<String>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self {
            indices,
            algorithm: algorithm.into(),
        }
    }

    pub fn empty(algorithm: impl Into<String>) -> Self {
        Self::new(Vec::new(), algorithm)
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// Re-checks the clique property against `ps`, returning a contract error
    /// if it fails.
    pub fn verified(self, ps: &PointSet) -> Result<Self> {
        match is_clique(ps, &self.indices) {
            Ok(true) => Ok(self),
            Ok(false) => Err(Error::Contract(format!(
                "{} returned a non-clique {:?}",
                self.algorithm, self.indices
            ))),
            Err(e) => Err(Error::Contract(format!("{}: {e}", self.algorithm))),
        }
    }
}

/// `true` iff every pair among `ids` is within distance 1.
pub fn is_clique(ps: &PointSet, ids: &[usize]) -> Result<bool> {
    for &id in ids {
        ps.check_id(id)?;
    }
    Ok(ids
        .iter()
        .enumerate()
        .all(|(k, &a)| ids[k + 1..].iter().all(|&b| ps.adjacent(a, b))))
}

/// Upper convex hull as ids in strictly increasing x, both extremes included.
///
/// Points lying exactly on a hull edge are kept as hull vertices. Requires
/// pairwise distinct x-coordinates.
pub fn upper_hull(ps: &PointSet) -> Result<Vec<usize>> {
    let pts = ps.points();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x));
    for w in order.windows(2) {
        if pts[w[0]].x == pts[w[1]].x {
            return Err(Error::DuplicateX {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len());
    for &id in &order {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if orient(&pts[a], &pts[b], &pts[id]) > 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(id);
    }
    Ok(hull)
}

/// Outcome of a convex-position check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexCheck {
    /// Points that lie on a hull edge without being a strict vertex.
    pub collinear: usize,
}

/// Verifies every point lies on the boundary of the convex hull.
///
/// Returns [`Error::NotConvex`] naming the smallest interior id. Points in the
/// relative interior of a hull edge are accepted and counted in
/// [`ConvexCheck::collinear`].
pub fn check_convex_position(ps: &PointSet) -> Result<ConvexCheck> {
    let pts = ps.points();
    let n = pts.len();
    if n <= 2 {
        return Ok(ConvexCheck { collinear: 0 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp_xy(&pts[a], &pts[b]));

    // Andrew's monotone chain, strict vertices only.
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &id in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if orient(&pts[a], &pts[b], &pts[id]) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(id);
        }
        hull.pop();
    }

    let mut is_vertex = vec![false; n];
    for &id in &hull {
        is_vertex[id] = true;
    }
    let m = hull.len();
    let mut collinear = 0;
    for id in 0..n {
        if is_vertex[id] {
            continue;
        }
        let p = &pts[id];
        let on_edge = (0..m).any(|k| {
            let a = &pts[hull[k]];
            let b = &pts[hull[(k + 1) % m]];
            orient(a, b, p) == 0.0
                && p.x >= a.x.min(b.x)
                && p.x <= a.x.max(b.x)
                && p.y >= a.y.min(b.y)
                && p.y <= a.y.max(b.y)
        });
        if !on_edge {
            return Err(Error::NotConvex { id });
        }
        collinear += 1;
    }
    Ok(ConvexCheck { collinear })
}

/// The anchor's unit disk, rigidly rotated about the anchor so that it is the
/// unique leftmost point and all coordinates are pairwise distinct.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub points: PointSet,
    /// `mapping[local] = original id`.
    pub mapping: Vec<usize>,
    /// Local id of the anchor.
    pub anchor: usize,
    /// Rotation applied, in radians.
    pub angle: f64,
}

impl Normalized {
    pub fn to_original(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&i| self.mapping[i]).collect()
    }
}

const NORMALIZE_RETRIES: usize = 64;

/// Restricts `ps` to the unit disk around `anchor` and rotates it about the
/// anchor so the anchor is strictly leftmost with distinct x and y values.
///
/// The identity rotation is tried first. Otherwise angles are drawn from the
/// window of directions that keep the anchor extreme, at most 64 times.
pub fn normalize_for_anchor(ps: &PointSet, anchor: usize, seed: u64) -> Result<Normalized> {
    ps.check_id(anchor)?;
    let a = *ps.get(anchor);
    let mapping: Vec<usize> = (0..ps.len())
        .filter(|&i| dist_le_one(ps.get(i), &a))
        .collect();
    let local_anchor = mapping.iter().position(|&i| i == anchor).unwrap();
    let base: Vec<Point> = mapping.iter().map(|&i| *ps.get(i)).collect();

    let build = |angle: f64| -> Vec<Point> {
        if angle == 0.0 {
            return base.clone();
        }
        let (s, c) = angle.sin_cos();
        base.iter()
            .map(|p| {
                let (dx, dy) = (p.x - a.x, p.y - a.y);
                Point::new(a.x + c * dx - s * dy, a.y + s * dx + c * dy)
            })
            .collect()
    };
    let accept =
        |pts: &[Point]| anchor_strictly_leftmost(pts, local_anchor) && coords_distinct(pts);

    let identity = build(0.0);
    if accept(&identity) {
        return Ok(Normalized {
            points: PointSet::new(identity),
            mapping,
            anchor: local_anchor,
            angle: 0.0,
        });
    }

    let (lo, hi) = leftmost_window(&base, local_anchor).ok_or_else(|| Error::Normalization {
        anchor,
        reason: "anchor is not an extreme point of its unit-disk neighborhood".into(),
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..NORMALIZE_RETRIES {
        let angle = rng.gen_range(lo..hi);
        let pts = build(angle);
        if accept(&pts) {
            return Ok(Normalized {
                points: PointSet::new(pts),
                mapping,
                anchor: local_anchor,
                angle,
            });
        }
    }
    Err(Error::Normalization {
        anchor,
        reason: format!("no admissible rotation after {NORMALIZE_RETRIES} attempts"),
    })
}

fn anchor_strictly_leftmost(pts: &[Point], anchor: usize) -> bool {
    let ax = pts[anchor].x;
    pts.iter().enumerate().all(|(i, p)| i == anchor || p.x > ax)
}

fn coords_distinct(pts: &[Point]) -> bool {
    let mut xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    xs.windows(2).all(|w| w[0] != w[1]) && ys.windows(2).all(|w| w[0] != w[1])
}

/// Open interval of rotation angles (counter-clockwise, radians) after which
/// every other point has strictly larger x than the anchor, shrunk to its
/// middle 90%. `None` if the directions to the other points span π or more.
fn leftmost_window(pts: &[Point], anchor: usize) -> Option<(f64, f64)> {
    use std::f64::consts::{PI, TAU};
    let a = pts[anchor];
    let mut dirs: Vec<f64> = pts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != anchor)
        .map(|(_, p)| (p.y - a.y).atan2(p.x - a.x))
        .collect();
    if dirs.is_empty() {
        return Some((-0.5, 0.5));
    }
    dirs.sort_by(f64::total_cmp);
    // The widest empty circular gap; the directions occupy its complement.
    let mut gap_end = dirs[0];
    let mut gap = dirs[0] + TAU - dirs[dirs.len() - 1];
    for w in dirs.windows(2) {
        if w[1] - w[0] > gap {
            gap = w[1] - w[0];
            gap_end = w[1];
        }
    }
    let spread = TAU - gap;
    if spread >= PI {
        return None;
    }
    // Directions fill [gap_end, gap_end + spread]. A direction d works iff it
    // is within π/2 of all of them; rotating by -d maps d onto +x.
    let slack = PI - spread;
    let d_lo = gap_end + spread - PI / 2.0 + 0.05 * slack;
    let d_hi = gap_end + PI / 2.0 - 0.05 * slack;
    Some((-d_hi, -d_lo))
}
