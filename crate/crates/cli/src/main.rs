use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use udg_clique::bench::{run_bench, threads_from_env, write_csv, BenchSpec};
use udg_clique::general::decide_clique;
use udg_clique::grid::GridIndex;
use udg_clique::instances::{Family, GenSpec};
use udg_clique::io::{format_points, parse_ids, parse_points};
use udg_clique::solve::{solve, Algo, SolveOptions};
use udg_clique::svg::{render_svg, Overlay};
use udg_clique::{is_clique, Error, PointSet, Result};

/// Maximum cliques in unit-disk graphs.
///
/// Point files hold one `x y` pair per line; `#` starts a comment line and
/// point ids are line order. Pass `-` to read points from stdin.
#[derive(Parser, Debug)]
#[command(name = "udg-clique", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a maximum clique and print a JSON report.
    Solve {
        /// general, lens, convex, convex-given or brute-force.
        #[arg(long, default_value = "general")]
        algo: Algo,
        /// Anchor point id for convex-given.
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplier for the number of sampled anchors.
        #[arg(long, default_value_t = 3.0)]
        c: f64,
        /// Replaces the clique-size threshold of the convex algorithm.
        #[arg(long)]
        threshold_override: Option<usize>,
        points: PathBuf,
    },
    /// Decide whether a clique of size K exists.
    Decide {
        #[arg(long)]
        k: usize,
        points: PathBuf,
    },
    /// Generate a seeded instance.
    Gen {
        /// uniform, bounded-k or convex.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Square side, cluster separation, or circle radius.
        #[arg(long)]
        param: f64,
        /// Cluster size cap for bounded-k.
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark matrix from a JSON spec and write CSV.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to UDG_CLIQUE_THREADS or the core count.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check that a set of point ids is a clique.
    Verify {
        /// Solve report JSON or whitespace-separated ids.
        #[arg(long)]
        clique: PathBuf,
        points: PathBuf,
    },
    /// Render points as SVG, optionally with a clique and a lens.
    Plot {
        points: PathBuf,
        /// Solve report JSON or whitespace-separated ids to highlight.
        #[arg(long, conflicts_with = "solve")]
        clique: Option<PathBuf>,
        /// Solve with this algorithm and highlight the result.
        #[arg(long)]
        solve: Option<Algo>,
        /// Draw the lens of two point ids.
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        lens: Option<Vec<usize>>,
        #[arg(long)]
        title: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&read_text(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(io::Error::other(e)))?;
    emit(None, &(text + "\n"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            algo,
            anchor,
            seed,
            c,
            threshold_override,
            points,
        } => {
            let ps = read_points(&points)?;
            let opts = SolveOptions {
                algo,
                anchor,
                seed,
                c,
                threshold_override,
            };
            let report = solve(&ps, &opts)?;
            print_json(&serde_json::to_value(&report).map_err(|e| Error::Io(e.into()))?)?;
        }
        Command::Decide { k, points } => {
            let ps = read_points(&points)?;
            ps.validate()?;
            let outcome = decide_clique(&ps, &GridIndex::build(&ps), k)?;
            print_json(&json!({
                "k": k,
                "found": outcome.found(),
                "witness": outcome.witness.map(|w| w.indices),
                "cells_examined": outcome.cells_examined,
            }))?;
        }
        Command::Gen {
            family,
            n,
            param,
            k_max,
            seed,
            out,
        } => {
            let spec = GenSpec {
                family,
                n,
                param,
                seed,
                k_max,
            };
            let ps = spec.generate()?;
            let header = format!("family={family} n={n} param={param} k_max={k_max} seed={seed}");
            emit(out.as_deref(), &format_points(&ps, Some(&header)))?;
        }
        Command::Bench { spec, out, threads } => {
            let spec: BenchSpec =
                serde_json::from_str(&read_text(&spec)?).map_err(|e| Error::Parse {
                    line: e.line(),
                    msg: e.to_string(),
                })?;
            let rows = run_bench(&spec, threads.unwrap_or_else(threads_from_env))?;
            match out {
                Some(p) => write_csv(&rows, fs::File::create(p)?)?,
                None => write_csv(&rows, io::stdout().lock())?,
            }
        }
        Command::Verify { clique, points } => {
            let ps = read_points(&points)?;
            let mut ids = parse_ids(&read_text(&clique)?)?;
            ids.sort_unstable();
            ids.dedup();
            let valid = is_clique(&ps, &ids)?;
            print_json(&json!({ "valid": valid, "size": ids.len() }))?;
            if !valid {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Plot {
            points,
            clique,
            solve: algo,
            lens,
            title,
            out,
        } => {
            let ps = read_points(&points)?;
            let ids = match (clique, algo) {
                (Some(path), _) => Some(parse_ids(&read_text(&path)?)?),
                (None, Some(algo)) => {
                    let mut opts = SolveOptions::new(algo);
                    opts.anchor = Some(0);
                    Some(solve(&ps, &opts)?.indices)
                }
                (None, None) => None,
            };
            if let Some(ids) = &ids {
                for &id in ids {
                    ps.check_id(id)?;
                }
            }
            let lens = match lens.as_deref() {
                Some(&[p, q]) => {
                    ps.check_id(p)?;
                    ps.check_id(q)?;
                    Some((p, q))
                }
                _ => None,
            };
            let overlay = Overlay {
                clique: ids.as_deref(),
                lens,
                title: title.as_deref(),
            };
            emit(out.as_deref(), &render_svg(&ps, &overlay))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_contract() { 2 } else { 1 })
        }
    }
}
