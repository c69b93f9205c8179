//! Exact maximum clique by enumerating lenses.
//!
//! If `p, q` is the farthest pair of a clique `M`, every point of `M` lies in
//! the lens `L(p, q)`: the intersection of the radius-`|pq|` disks around `p`
//! and `q`. The line through `p` and `q` splits the lens into two halves of
//! diameter at most `|pq|`, so the lens induces a cobipartite subgraph.

use crate::cobipartite::{max_clique_cobipartite, CobipartiteInstance};
use crate::error::{Error, Result};
use crate::geometry::{orient, CliqueResult, PointSet};

pub const ALGORITHM: &str = "lens";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lens {
    pub p: usize,
    pub q: usize,
    /// Sorted ids within `|pq|` of both `p` and `q`.
    pub members: Vec<usize>,
}

/// Members of `L(p, q)` among all points of `ps`.
pub fn lens_points(ps: &PointSet, p: usize, q: usize) -> Result<Lens> {
    ps.check_id(p)?;
    ps.check_id(q)?;
    if !ps.adjacent(p, q) {
        return Err(Error::InvalidArgument(format!(
            "points {p} and {q} are farther than 1 apart"
        )));
    }
    let ids: Vec<usize> = (0..ps.len()).collect();
    Ok(lens_within(ps, &ids, p, q))
}

fn lens_within(ps: &PointSet, candidates: &[usize], p: usize, q: usize) -> Lens {
    let (pp, pq) = (ps.get(p), ps.get(q));
    let r2 = pp.dist_sq(pq);
    let members = candidates
        .iter()
        .copied()
        .filter(|&r| {
            let pr = ps.get(r);
            pr.dist_sq(pp) <= r2 && pr.dist_sq(pq) <= r2
        })
        .collect();
    Lens { p, q, members }
}

/// Splits a lens by the line through `p` and `q`: points on or left of the
/// directed line `p -> q` form side A, the rest side B.
pub fn lens_to_cobipartite(ps: &PointSet, lens: &Lens) -> (Vec<usize>, Vec<usize>) {
    let (pp, pq) = (ps.get(lens.p), ps.get(lens.q));
    lens.members
        .iter()
        .partition(|&&r| orient(pp, pq, ps.get(r)) >= 0.0)
}

/// Maximum clique of the whole point set.
pub fn max_clique_lens_baseline(ps: &PointSet) -> Result<CliqueResult> {
    ps.validate()?;
    let ids: Vec<usize> = (0..ps.len()).collect();
    max_clique_lens_on(ps, &ids, None)
}

/// Maximum clique of the subgraph induced by `ids` (which must be sorted).
///
/// With `stop_at = Some(k)`, returns as soon as a clique of size `>= k` is
/// found. Ties between lenses go to the lexicographically smallest `(p, q)`.
pub fn max_clique_lens_on(
    ps: &PointSet,
    ids: &[usize],
    stop_at: Option<usize>,
) -> Result<CliqueResult> {
    let Some(&first) = ids.first() else {
        return Ok(CliqueResult::empty(ALGORITHM));
    };
    let mut best = CliqueResult::new(vec![first], ALGORITHM);
    if stop_at.is_some_and(|k| best.size() >= k) {
        return Ok(best);
    }
    for (i, &p) in ids.iter().enumerate() {
        for &q in &ids[i + 1..] {
            if !ps.adjacent(p, q) {
                continue;
            }
            let lens = lens_within(ps, ids, p, q);
            if lens.members.len() <= best.size() {
                continue;
            }
            let (side_a, side_b) = lens_to_cobipartite(ps, &lens);
            let found = max_clique_cobipartite(&CobipartiteInstance::new(ps, &side_a, &side_b))?;
            if found.size() > best.size() {
                best = CliqueResult::new(found.indices, ALGORITHM);
                if stop_at.is_some_and(|k| best.size() >= k) {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}
