//! Exponential-time exact solvers used as ground truth in tests.

use crate::error::{Error, Result};
use crate::geometry::{CliqueResult, PointSet};

pub const ALGORITHM: &str = "brute-force";

/// Largest instance the bitset oracle accepts.
pub const MAX_POINTS: usize = 64;

struct Search {
    adj: Vec<u64>,
    best: Vec<usize>,
}

impl Search {
    fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let adj = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && ps.adjacent(a, b))
                    .fold(0u64, |m, b| m | (1 << b))
            })
            .collect();
        Self {
            adj,
            best: Vec::new(),
        }
    }

    /// Bron–Kerbosch with Tomita pivoting. Branches that cannot reach the
    /// current best size are cut; equal-size cliques are still visited so the
    /// lexicographic tie-break sees all of them.
    fn expand(&mut self, r: &mut Vec<usize>, p: u64, x: u64) {
        if p == 0 {
            if x == 0 && better(r, &self.best) {
                self.best = r.clone();
            }
            return;
        }
        if r.len() + (p.count_ones() as usize) < self.best.len() {
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (p & self.adj[u]).count_ones())
            .unwrap();
        let mut cand = p & !self.adj[pivot];
        let (mut p, mut x) = (p, x);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            r.push(v);
            self.expand(r, p & self.adj[v], x & self.adj[v]);
            r.pop();
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn better(candidate: &[usize], best: &[usize]) -> bool {
    if candidate.len() != best.len() {
        return candidate.len() > best.len();
    }
    let mut c = candidate.to_vec();
    c.sort_unstable();
    c.as_slice() < best
}

fn check_size(ps: &PointSet) -> Result<()> {
    if ps.len() > MAX_POINTS {
        return Err(Error::TooLarge {
            n: ps.len(),
            max: MAX_POINTS,
        });
    }
    Ok(())
}

/// Maximum clique; among several, the lexicographically smallest id set.
pub fn brute_force_max_clique(ps: &PointSet) -> Result<CliqueResult> {
    check_size(ps)?;
    let n = ps.len();
    if n == 0 {
        return Ok(CliqueResult::empty(ALGORITHM));
    }
    let mut search = Search::new(ps);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.expand(&mut Vec::new(), all, 0);
    Ok(CliqueResult::new(search.best, ALGORITHM))
}

/// Maximum clique among those containing `p`.
pub fn max_clique_containing(ps: &PointSet, p: usize) -> Result<CliqueResult> {
    check_size(ps)?;
    ps.check_id(p)?;
    let mut search = Search::new(ps);
    let nbrs = search.adj[p];
    search.expand(&mut vec![p], nbrs, 0);
    Ok(CliqueResult::new(search.best, ALGORITHM))
}
