//! Output-sensitive maximum clique for arbitrary point sets.
//!
//! The decision procedure answers "is there a clique of size `k`?" using the
//! grid: a full bucket is already a clique, and otherwise any clique touching
//! cell `C` lives inside `P_C`, which has `O(k)` points. The optimizer wraps
//! the decision in an exponential search followed by a binary search.

use web_time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CliqueResult, PointSet};
use crate::grid::GridIndex;
use crate::lens::max_clique_lens_on;

pub const ALGORITHM: &str = "general";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub witness: Option<CliqueResult>,
    /// Cells whose neighborhood was handed to the exact subsolver.
    pub cells_examined: usize,
}

impl DecisionOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub k: usize,
    pub found: bool,
    pub elapsed: Duration,
    pub cells_examined: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub probes: Vec<Probe>,
    /// Final maximum clique size.
    pub k_max: usize,
}

/// Decides whether the unit-disk graph has a clique of size `k`, returning a
/// witness of size at least `k` when it does.
pub fn decide_clique(ps: &PointSet, grid: &GridIndex, k: usize) -> Result<DecisionOutcome> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut outcome = DecisionOutcome {
        witness: None,
        cells_examined: 0,
    };
    if k > ps.len() {
        return Ok(outcome);
    }

    // A side-1/2 cell is a clique on its own.
    if let Some((_, bucket)) = grid.cells().find(|(_, b)| b.len() >= k) {
        outcome.witness = Some(CliqueResult::new(bucket[..k].to_vec(), ALGORITHM));
        return Ok(outcome);
    }

    for (key, _) in grid.cells() {
        let neighborhood = grid.union_neighborhood(key)?;
        if neighborhood.len() < k {
            continue;
        }
        outcome.cells_examined += 1;
        let found = max_clique_lens_on(ps, &neighborhood, Some(k))?;
        if found.size() >= k {
            outcome.witness = Some(CliqueResult::new(found.indices, ALGORITHM).verified(ps)?);
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

/// Maximum clique by exponential then binary search over [`decide_clique`].
///
/// Probes with `k > n` are recorded as failures without running.
pub fn max_clique_general(ps: &PointSet) -> Result<(CliqueResult, SearchTrace)> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    ps.validate()?;
    let grid = GridIndex::build(ps);
    let mut trace = SearchTrace::default();
    let probe = |k: usize, trace: &mut SearchTrace| -> Result<Option<CliqueResult>> {
        let start = Instant::now();
        let outcome = decide_clique(ps, &grid, k)?;
        trace.probes.push(Probe {
            k,
            found: outcome.found(),
            elapsed: start.elapsed(),
            cells_examined: outcome.cells_examined,
        });
        Ok(outcome.witness)
    };

    let mut lo = 1;
    let mut best = probe(1, &mut trace)?
        .ok_or_else(|| Error::Contract("no singleton clique in a non-empty point set".into()))?;
    let mut hi = loop {
        let next = lo * 2;
        match probe(next, &mut trace)? {
            Some(w) => {
                lo = next;
                best = w;
            }
            None => break next,
        }
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match probe(mid, &mut trace)? {
            Some(w) => {
                lo = mid;
                best = w;
            }
            None => hi = mid,
        }
    }
    if best.size() != lo {
        return Err(Error::Contract(format!(
            "witness of size {} at final k = {lo}",
            best.size()
        )));
    }
    trace.k_max = lo;
    Ok((best, trace))
}
