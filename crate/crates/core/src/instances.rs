//! Seeded instance generators.
//!
//! Every generated instance keeps all pairwise squared distances at least
//! `1e-7` away from 1 and at least `1e-9` away from 0, so the closed distance
//! predicate gives the same answer under any reasonable rounding.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_convex_position, Point, PointSet};

pub const UNIT_MARGIN: f64 = 1e-7;
pub const ZERO_MARGIN: f64 = 1e-9;
const MAX_RESAMPLES: usize = 10_000;

/// Radius of each cluster in the bounded-clique family.
pub const CLUSTER_RADIUS: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    UniformSquare,
    ClusteredBoundedK,
    ConvexCircle,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::UniformSquare => "uniform",
            Family::ClusteredBoundedK => "bounded-k",
            Family::ConvexCircle => "convex",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform_square" => Ok(Family::UniformSquare),
            "bounded-k" | "bounded_k" | "clustered_bounded_k" => Ok(Family::ClusteredBoundedK),
            "convex" | "convex_circle" => Ok(Family::ConvexCircle),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        }
    }
}

fn default_k_max() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Square side, cluster separation, or circle radius.
    pub param: f64,
    pub seed: u64,
    /// Cluster size cap, used by the bounded-clique family only.
    #[serde(default = "default_k_max")]
    pub k_max: usize,
}

impl GenSpec {
    pub fn generate(&self) -> Result<PointSet> {
        if self.n < 1 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        match self.family {
            Family::UniformSquare => gen_uniform(self.n, self.param, self.seed),
            Family::ClusteredBoundedK => gen_bounded_k(self.n, self.k_max, self.param, self.seed),
            Family::ConvexCircle => gen_convex(self.n, self.param, self.seed),
        }
    }
}

/// Tracks accepted points in cells slightly wider than 1 so every pair near
/// distance 1 sits in adjacent cells.
#[derive(Default)]
struct MarginIndex {
    cells: HashMap<(i64, i64), Vec<Point>>,
}

impl MarginIndex {
    fn key(p: &Point) -> (i64, i64) {
        const CELL: f64 = 1.01;
        ((p.x / CELL).floor() as i64, (p.y / CELL).floor() as i64)
    }

    fn admits(&self, p: &Point) -> bool {
        let (cx, cy) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = self.cells.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                if bucket.iter().any(|q| !margin_ok(p, q)) {
                    return false;
                }
            }
        }
        true
    }

    fn insert(&mut self, p: Point) {
        self.cells.entry(Self::key(&p)).or_default().push(p);
    }
}

fn margin_ok(p: &Point, q: &Point) -> bool {
    let d2 = p.dist_sq(q);
    (d2 - 1.0).abs() >= UNIT_MARGIN && d2 >= ZERO_MARGIN
}

/// Smallest `|d² - 1|` over all pairs, or `None` for fewer than two points.
pub fn min_unit_gap(ps: &PointSet) -> Option<f64> {
    let pts = ps.points();
    (0..pts.len())
        .flat_map(|a| (a + 1..pts.len()).map(move |b| (a, b)))
        .map(|(a, b)| (pts[a].dist_sq(&pts[b]) - 1.0).abs())
        .min_by(f64::total_cmp)
}

fn sample_with_margin<R: Rng>(
    rng: &mut R,
    index: &mut MarginIndex,
    mut draw: impl FnMut(&mut R) -> Point,
) -> Result<Point> {
    for _ in 0..MAX_RESAMPLES {
        let p = draw(rng);
        if index.admits(&p) {
            index.insert(p);
            return Ok(p);
        }
    }
    Err(Error::Generation(format!(
        "margin unsatisfiable after {MAX_RESAMPLES} resamples"
    )))
}

/// `n` i.i.d. uniform points in `[0, side]²`.
pub fn gen_uniform(n: usize, side: f64, seed: u64) -> Result<PointSet> {
    if !(side > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "side must be positive, got {side}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut index = MarginIndex::default();
    let points = (0..n)
        .map(|_| {
            sample_with_margin(&mut rng, &mut index, |r| {
                Point::new(r.gen_range(0.0..=side), r.gen_range(0.0..=side))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointSet::new(points))
}

/// Clusters of at most `k_max` points in radius-0.4 disks whose centers lie on
/// a square lattice of spacing `separation`. The maximum clique is the
/// largest cluster, `min(n, k_max)`. Ids are shuffled.
pub fn gen_bounded_k(n: usize, k_max: usize, separation: f64, seed: u64) -> Result<PointSet> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if !(separation > 2.0) {
        return Err(Error::InvalidArgument(format!(
            "separation must exceed 2, got {separation}"
        )));
    }
    let clusters = n.div_ceil(k_max);
    let row = (clusters as f64).sqrt().ceil() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut index = MarginIndex::default();
    let mut points = Vec::with_capacity(n);
    for c in 0..clusters {
        let center = Point::new((c % row) as f64 * separation, (c / row) as f64 * separation);
        let size = k_max.min(n - c * k_max);
        for _ in 0..size {
            points.push(sample_with_margin(&mut rng, &mut index, |r| loop {
                let dx = r.gen_range(-CLUSTER_RADIUS..=CLUSTER_RADIUS);
                let dy = r.gen_range(-CLUSTER_RADIUS..=CLUSTER_RADIUS);
                if dx * dx + dy * dy <= CLUSTER_RADIUS * CLUSTER_RADIUS {
                    break Point::new(center.x + dx, center.y + dy);
                }
            })?);
        }
    }
    points.shuffle(&mut rng);
    Ok(PointSet::new(points))
}

/// `n` points in strictly convex position near a circle: random sorted angles,
/// each point pulled inward by at most `radius * 1e-3`.
pub fn gen_convex(n: usize, radius: f64, seed: u64) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::InvalidArgument("convex family needs n >= 3".into()));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let min_gap = angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .chain(std::iter::once(
                angles[0] + std::f64::consts::TAU - angles[n - 1],
            ))
            .fold(f64::INFINITY, f64::min);
        // Inward pull small enough that no point falls behind the chord of
        // its neighbors.
        let max_pull = radius * (1e-3_f64).min(0.25 * (1.0 - min_gap.cos()));
        let points: Vec<Point> = angles
            .iter()
            .map(|&t| {
                let r = radius - rng.gen_range(0.0..=max_pull);
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        let ps = PointSet::new(points);
        let margins = {
            let mut index = MarginIndex::default();
            ps.points().iter().all(|p| {
                let ok = index.admits(p);
                index.insert(*p);
                ok
            })
        };
        if margins && matches!(check_convex_position(&ps), Ok(c) if c.collinear == 0) {
            return Ok(ps);
        }
    }
    Err(Error::Generation(format!(
        "no convex instance within margins after {MAX_RESAMPLES} attempts"
    )))
}

/// Regular polygon with vertex 0 at angle `phase`. No margin guarantee.
pub fn regular_polygon(n: usize, radius: f64, phase: f64) -> PointSet {
    PointSet::new(
        (0..n)
            .map(|i| {
                let t = phase + std::f64::consts::TAU * i as f64 / n as f64;
                Point::new(radius * t.cos(), radius * t.sin())
            })
            .collect(),
    )
}
