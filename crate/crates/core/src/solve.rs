//! Single entry point over all solvers, producing a verified report.

use std::fmt;
use std::str::FromStr;
use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::convex_randomized::{max_clique_convex, RandomizedConfig};
use crate::convex_sweep::max_clique_given_point_traced;
use crate::error::{Error, Result};
use crate::general::max_clique_general;
use crate::geometry::{is_clique, CliqueResult, PointSet};
use crate::lens::max_clique_lens_baseline;
use crate::oracle::brute_force_max_clique;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    General,
    Lens,
    Convex,
    ConvexGiven,
    BruteForce,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::General => "general",
            Algo::Lens => "lens",
            Algo::Convex => "convex",
            Algo::ConvexGiven => "convex-given",
            Algo::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Algo::General),
            "lens" | "lens-baseline" => Ok(Algo::Lens),
            "convex" => Ok(Algo::Convex),
            "convex-given" => Ok(Algo::ConvexGiven),
            "brute-force" | "oracle" => Ok(Algo::BruteForce),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub algo: Algo,
    /// Required by `convex-given`.
    pub anchor: Option<usize>,
    pub seed: u64,
    pub c: f64,
    pub threshold_override: Option<usize>,
}

impl SolveOptions {
    pub fn new(algo: Algo) -> Self {
        Self {
            algo,
            anchor: None,
            seed: 0,
            c: 3.0,
            threshold_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub k: usize,
    pub found: bool,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateCounts {
    /// Total insertions plus deletions of the unmirrored sweep.
    pub upper_run: usize,
    /// Same for the mirrored sweep.
    pub lower_run: usize,
    /// Points inside the anchor's unit disk.
    pub n_local: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub clique_size: usize,
    pub indices: Vec<usize>,
    pub algorithm: String,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe_trace: Option<Vec<ProbeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub update_counts: Option<UpdateCounts>,
}

impl SolveReport {
    /// Re-checks the clique against `ps`.
    pub fn verify(&self, ps: &PointSet) -> Result<()> {
        let ok = self.clique_size == self.indices.len()
            && self.indices.windows(2).all(|w| w[0] < w[1])
            && is_clique(ps, &self.indices).unwrap_or(false);
        if ok {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "report from {} does not hold a valid clique",
                self.algorithm
            )))
        }
    }
}

pub fn solve(ps: &PointSet, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let mut probe_trace = None;
    let mut update_counts = None;
    let mut seed = None;
    let clique: CliqueResult = match opts.algo {
        Algo::General => {
            let (clique, trace) = max_clique_general(ps)?;
            probe_trace = Some(
                trace
                    .probes
                    .iter()
                    .map(|p| ProbeRecord {
                        k: p.k,
                        found: p.found,
                        elapsed_ms: p.elapsed.as_secs_f64() * 1e3,
                    })
                    .collect(),
            );
            clique
        }
        Algo::Lens => max_clique_lens_baseline(ps)?,
        Algo::Convex => {
            seed = Some(opts.seed);
            let cfg = RandomizedConfig {
                c: opts.c,
                seed: opts.seed,
                threshold_override: opts.threshold_override,
            };
            max_clique_convex(ps, &cfg)?
        }
        Algo::ConvexGiven => {
            let anchor = opts
                .anchor
                .ok_or_else(|| Error::InvalidArgument("convex-given requires an anchor".into()))?;
            seed = Some(opts.seed);
            let report = max_clique_given_point_traced(ps, anchor, opts.seed)?;
            update_counts = Some(UpdateCounts {
                upper_run: report.upper.total_updates,
                lower_run: report.lower.total_updates,
                n_local: report.upper.n,
            });
            report.clique
        }
        Algo::BruteForce => {
            ps.validate()?;
            brute_force_max_clique(ps)?
        }
    };
    let report = SolveReport {
        clique_size: clique.size(),
        indices: clique.indices,
        algorithm: opts.algo.name().to_string(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        probe_trace,
        seed,
        update_counts,
    };
    report.verify(ps)?;
    Ok(report)
}
