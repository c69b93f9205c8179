//! Side-1/2 grid buckets with constant-size neighbor blocks.
//!
//! Every cell is a half-open axis-parallel square of side 1/2, so the points
//! in one bucket are pairwise closer than 1. A unit disk centered anywhere in
//! a cell lies within the 5x5 block of cells around it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

pub const CELL_SIDE: f64 = 0.5;

/// Neighbor offsets range over `-REACH..=REACH` on each axis.
pub const REACH: i64 = 2;

/// Upper bound on `|N(C)|`.
pub const MAX_NEIGHBORS: usize = ((2 * REACH + 1) * (2 * REACH + 1)) as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub ix: i64,
    pub iy: i64,
}

impl CellKey {
    pub const fn new(ix: i64, iy: i64) -> Self {
        Self { ix, iy }
    }

    pub fn of(p: &Point) -> Self {
        Self {
            ix: (p.x / CELL_SIDE).floor() as i64,
            iy: (p.y / CELL_SIDE).floor() as i64,
        }
    }

    /// The full 5x5 block around this key, in sorted order.
    pub fn block(self) -> impl Iterator<Item = CellKey> {
        (-REACH..=REACH).flat_map(move |dx| {
            (-REACH..=REACH).map(move |dy| CellKey::new(self.ix + dx, self.iy + dy))
        })
    }

    pub fn in_block_of(self, center: CellKey) -> bool {
        (self.ix - center.ix).abs() <= REACH && (self.iy - center.iy).abs() <= REACH
    }
}

/// Non-empty cells sorted by key, each with its sorted bucket of point ids.
///
/// Built by sorting, so iteration order is deterministic.
#[derive(Debug, Clone)]
pub struct GridIndex {
    cells: Vec<(CellKey, Vec<usize>)>,
    n: usize,
}

impl GridIndex {
    pub fn build(ps: &PointSet) -> Self {
        let mut keyed: Vec<(CellKey, usize)> = ps
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| (CellKey::of(p), i))
            .collect();
        keyed.sort_unstable();
        let mut cells: Vec<(CellKey, Vec<usize>)> = Vec::new();
        for (key, id) in keyed {
            match cells.last_mut() {
                Some((k, bucket)) if *k == key => bucket.push(id),
                _ => cells.push((key, vec![id])),
            }
        }
        Self { cells, n: ps.len() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellKey, &[usize])> {
        self.cells.iter().map(|(k, b)| (*k, b.as_slice()))
    }

    pub fn bucket(&self, key: CellKey) -> Option<&[usize]> {
        self.cells
            .binary_search_by(|(k, _)| k.cmp(&key))
            .ok()
            .map(|i| self.cells[i].1.as_slice())
    }

    pub fn contains(&self, key: CellKey) -> bool {
        self.bucket(key).is_some()
    }

    /// Present cells of the 5x5 block around `key`.
    pub fn neighbors(&self, key: CellKey) -> Vec<CellKey> {
        neighbors(key, Some(self))
    }

    /// `P_C`: the union of buckets over `N(C)`, sorted.
    pub fn union_neighborhood(&self, key: CellKey) -> Result<Vec<usize>> {
        if !self.contains(key) {
            return Err(Error::InvalidArgument(format!(
                "cell ({}, {}) is not in the grid",
                key.ix, key.iy
            )));
        }
        let mut ids: Vec<usize> = Vec::new();
        // Each column of the block is a contiguous key range.
        for dx in -REACH..=REACH {
            let lo = CellKey::new(key.ix + dx, key.iy - REACH);
            let hi = CellKey::new(key.ix + dx, key.iy + REACH);
            let start = self.cells.partition_point(|(k, _)| *k < lo);
            for (k, bucket) in &self.cells[start..] {
                if *k > hi {
                    break;
                }
                ids.extend_from_slice(bucket);
            }
        }
        ids.sort_unstable();
        Ok(ids)
    }
}

/// `N(C)`: the 5x5 block of keys around `key`, restricted to cells present in
/// `grid` when one is supplied.
pub fn neighbors(key: CellKey, grid: Option<&GridIndex>) -> Vec<CellKey> {
    key.block()
        .filter(|k| grid.is_none_or(|g| g.contains(*k)))
        .collect()
}
