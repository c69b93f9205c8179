//! Benchmark matrices with CSV output.
//!
//! A [`BenchSpec`] expands into one cell per (family, n, algorithm, seed).
//! Cells may run on several threads, but rows are always emitted in spec
//! order, followed after each (family, n, algorithm) group by a median row.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Mutex};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{Family, GenSpec};
use crate::solve::{solve, Algo, SolveOptions};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "UDG_CLIQUE_THREADS";

fn default_timeout() -> f64 {
    60.0
}

fn default_k_max() -> usize {
    8
}

fn default_c() -> f64 {
    3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub families: Vec<FamilySweep>,
    /// Per-cell limit in seconds.
    #[serde(default = "default_timeout")]
    pub timeout_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySweep {
    pub family: Family,
    pub n: Vec<usize>,
    pub param: f64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    pub algos: Vec<Algo>,
    pub seeds: Vec<u64>,
    /// Anchor for `convex-given`; defaults to point 0.
    #[serde(default)]
    pub anchor: Option<usize>,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default)]
    pub threshold_override: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub gen: GenSpec,
    pub opts: SolveOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Done {
        clique_size: usize,
        elapsed_ms: f64,
        probes: Option<usize>,
        updates: Option<usize>,
    },
    Timeout,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub param: f64,
    pub algo: String,
    /// Seed, or `median` for summary rows.
    pub seed: String,
    /// Clique size, or `timeout` / `error`.
    pub clique_size: String,
    pub elapsed_ms: String,
    pub probes: String,
    pub updates: String,
}

impl BenchSpec {
    pub fn cells(&self) -> Vec<BenchCell> {
        let mut cells = Vec::new();
        for sweep in &self.families {
            for &n in &sweep.n {
                for &algo in &sweep.algos {
                    for &seed in &sweep.seeds {
                        cells.push(BenchCell {
                            gen: GenSpec {
                                family: sweep.family,
                                n,
                                param: sweep.param,
                                seed,
                                k_max: sweep.k_max,
                            },
                            opts: SolveOptions {
                                algo,
                                anchor: Some(sweep.anchor.unwrap_or(0)),
                                seed,
                                c: sweep.c,
                                threshold_override: sweep.threshold_override,
                            },
                        });
                    }
                }
            }
        }
        cells
    }
}

/// Thread count from [`THREADS_ENV`], else the available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run_cell(cell: &BenchCell) -> CellOutcome {
    let run = || -> Result<CellOutcome> {
        let ps = cell.gen.generate()?;
        let report = solve(&ps, &cell.opts)?;
        Ok(CellOutcome::Done {
            clique_size: report.clique_size,
            elapsed_ms: report.elapsed_ms,
            probes: report.probe_trace.as_ref().map(Vec::len),
            updates: report.update_counts.map(|u| u.upper_run + u.lower_run),
        })
    };
    run().unwrap_or_else(|e| CellOutcome::Failed(e.to_string()))
}

/// Runs `cell` on its own thread, giving up after `timeout`. A timed-out
/// solve keeps running detached until it finishes.
pub fn run_cell_with_timeout(cell: &BenchCell, timeout: Duration) -> CellOutcome {
    let (tx, rx) = mpsc::channel();
    let owned = cell.clone();
    thread::spawn(move || {
        let _ = tx.send(run_cell(&owned));
    });
    rx.recv_timeout(timeout).unwrap_or(CellOutcome::Timeout)
}

/// Runs every cell with up to `threads` workers; outcomes are in cell order.
pub fn run_cells(cells: &[BenchCell], timeout: Duration, threads: usize) -> Vec<CellOutcome> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<CellOutcome>>> = Mutex::new(vec![None; cells.len()]);
    let workers = threads.clamp(1, cells.len().max(1));
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let outcome = run_cell_with_timeout(&cells[i], timeout);
                results.lock().unwrap()[i] = Some(outcome);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|o| o.expect("every cell ran"))
        .collect()
}

fn opt_str<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    })
}

/// Rows for `cells` and their outcomes, with a median row closing each run of
/// cells that share family, n, and algorithm.
pub fn rows(cells: &[BenchCell], outcomes: &[CellOutcome]) -> Vec<BenchRow> {
    let mut out = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    let key = |c: &BenchCell| (c.gen.family, c.gen.n, c.opts.algo);
    for i in 0..cells.len() {
        let c = &cells[i];
        let (clique_size, elapsed_ms, probes, updates) = match &outcomes[i] {
            CellOutcome::Done {
                clique_size,
                elapsed_ms,
                probes,
                updates,
            } => (
                clique_size.to_string(),
                format!("{elapsed_ms:.3}"),
                opt_str(*probes),
                opt_str(*updates),
            ),
            CellOutcome::Timeout => (
                "timeout".into(),
                String::new(),
                String::new(),
                String::new(),
            ),
            CellOutcome::Failed(_) => ("error".into(), String::new(), String::new(), String::new()),
        };
        out.push(BenchRow {
            family: c.gen.family.name().into(),
            n: c.gen.n,
            param: c.gen.param,
            algo: c.opts.algo.name().into(),
            seed: c.gen.seed.to_string(),
            clique_size,
            elapsed_ms,
            probes,
            updates,
        });
        group.push(i);
        if i + 1 == cells.len() || key(&cells[i + 1]) != key(c) {
            out.push(summary_row(cells, outcomes, &group));
            group.clear();
        }
    }
    out
}

fn summary_row(cells: &[BenchCell], outcomes: &[CellOutcome], group: &[usize]) -> BenchRow {
    let c = &cells[group[0]];
    let mut sizes = Vec::new();
    let mut times = Vec::new();
    let mut probes = Vec::new();
    let mut updates = Vec::new();
    for &i in group {
        if let CellOutcome::Done {
            clique_size,
            elapsed_ms,
            probes: p,
            updates: u,
        } = &outcomes[i]
        {
            sizes.push(*clique_size as f64);
            times.push(*elapsed_ms);
            probes.extend(p.map(|v| v as f64));
            updates.extend(u.map(|v| v as f64));
        }
    }
    BenchRow {
        family: c.gen.family.name().into(),
        n: c.gen.n,
        param: c.gen.param,
        algo: c.opts.algo.name().into(),
        seed: "median".into(),
        clique_size: opt_str(median(&mut sizes)),
        elapsed_ms: median(&mut times)
            .map(|t| format!("{t:.3}"))
            .unwrap_or_default(),
        probes: opt_str(median(&mut probes)),
        updates: opt_str(median(&mut updates)),
    }
}

pub fn run_bench(spec: &BenchSpec, threads: usize) -> Result<Vec<BenchRow>> {
    if !(spec.timeout_s > 0.0) {
        return Err(Error::InvalidArgument("timeout_s must be positive".into()));
    }
    let cells = spec.cells();
    let outcomes = run_cells(&cells, Duration::from_secs_f64(spec.timeout_s), threads);
    Ok(rows(&cells, &outcomes))
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> BenchSpec {
        serde_json::from_str(
            r#"{
                "families": [
                    {"family": "clustered_bounded_k", "n": [50, 100], "param": 3.0, "k_max": 4,
                     "algos": ["general"], "seeds": [1, 2, 3, 4, 5]}
                ],
                "timeout_s": 30
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn row_shape_and_medians() {
        let rows = run_bench(&spec(), 2).unwrap();
        assert_eq!(rows.len(), 2 * 5 + 2);
        assert_eq!(rows[5].seed, "median");
        assert_eq!(rows[11].seed, "median");
        assert!(rows.iter().all(|r| r.clique_size == "4"));
        assert!(rows[0].probes.parse::<usize>().unwrap() > 0);
    }

    #[test]
    fn rows_stable_except_timing() {
        let strip = |rows: Vec<BenchRow>| -> Vec<BenchRow> {
            rows.into_iter()
                .map(|mut r| {
                    r.elapsed_ms.clear();
                    r
                })
                .collect()
        };
        assert_eq!(
            strip(run_bench(&spec(), 1).unwrap()),
            strip(run_bench(&spec(), 3).unwrap())
        );
    }

    #[test]
    fn timeout_rows() {
        let cells = spec().cells();
        let outcomes = vec![CellOutcome::Timeout; cells.len()];
        let rows = rows(&cells, &outcomes);
        assert_eq!(rows[0].clique_size, "timeout");
        assert_eq!(rows[5].elapsed_ms, "");
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_csv(
            &rows(&spec().cells()[..1], &[CellOutcome::Timeout]),
            &mut buf,
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(
            text.starts_with("family,n,param,algo,seed,clique_size,elapsed_ms,probes,updates\n")
        );
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e3, 4e3, 1.6e4]
            .iter()
            .map(|&x| (x, 3.0 * x * x))
            .collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-12);
    }
}
