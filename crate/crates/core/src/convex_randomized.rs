//! Randomized maximum clique for points in convex position.
//!
//! A decision probe at `k = ceil(n^{6/7})` splits the work: small cliques go
//! to the output-sensitive general solver, large ones are found by sweeping
//! from randomly drawn anchors, at least one of which lands in a maximum
//! clique with high probability.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex_sweep::given_point_unchecked;
use crate::error::{Error, Result};
use crate::general::{decide_clique, max_clique_general};
use crate::geometry::{check_convex_position, CliqueResult, PointSet};
use crate::grid::GridIndex;

pub const ALGORITHM: &str = "convex";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomizedConfig {
    /// Multiplier on the number of sampled anchors.
    pub c: f64,
    pub seed: u64,
    /// Replaces the `ceil(n^{6/7})` threshold.
    pub threshold_override: Option<usize>,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        Self {
            c: 3.0,
            seed: 0,
            threshold_override: None,
        }
    }
}

/// `ceil(n^{6/7})`.
pub fn threshold(n: usize) -> usize {
    (n as f64).powf(6.0 / 7.0).ceil() as usize
}

/// `ceil(c · n^{1/7} · ln n)`, at least 1.
pub fn anchor_draws(n: usize, c: f64) -> usize {
    let n = n as f64;
    ((c * n.powf(1.0 / 7.0) * n.ln()).ceil() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Branch {
    /// The threshold probe failed, so the general solver ran.
    General,
    /// The threshold probe succeeded; anchors were sampled.
    Sampled { anchors: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomizedReport {
    pub clique: CliqueResult,
    pub threshold: usize,
    pub branch: Branch,
}

pub fn max_clique_convex(ps: &PointSet, cfg: &RandomizedConfig) -> Result<CliqueResult> {
    Ok(max_clique_convex_traced(ps, cfg)?.clique)
}

pub fn max_clique_convex_traced(ps: &PointSet, cfg: &RandomizedConfig) -> Result<RandomizedReport> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(cfg.c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "c must be positive, got {}",
            cfg.c
        )));
    }
    ps.validate()?;
    check_convex_position(ps)?;

    let n = ps.len();
    let k0 = cfg
        .threshold_override
        .unwrap_or_else(|| threshold(n))
        .max(1);
    let grid = GridIndex::build(ps);
    let probe = decide_clique(ps, &grid, k0)?;
    let Some(witness) = probe.witness else {
        let (clique, _) = max_clique_general(ps)?;
        return Ok(RandomizedReport {
            clique: CliqueResult::new(clique.indices, ALGORITHM),
            threshold: k0,
            branch: Branch::General,
        });
    };

    // All draws come from one stream up front, so the result does not depend
    // on the order the anchors are processed in.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let anchors: Vec<usize> = (0..anchor_draws(n, cfg.c))
        .map(|_| rng.gen_range(0..n))
        .collect();
    let rotation_seeds: Vec<u64> = anchors.iter().map(|_| rng.gen()).collect();

    let mut best = CliqueResult::new(witness.indices, ALGORITHM);
    for (&anchor, &seed) in anchors.iter().zip(&rotation_seeds) {
        let found = given_point_unchecked(ps, anchor, seed)?.clique;
        if found.size() > best.size() {
            best = CliqueResult::new(found.indices, ALGORITHM);
        }
    }
    Ok(RandomizedReport {
        clique: best.verified(ps)?,
        threshold: k0,
        branch: Branch::Sampled { anchors },
    })
}
