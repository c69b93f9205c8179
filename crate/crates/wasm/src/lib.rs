//! Browser bindings: generate an instance, solve it, and render it as SVG.
//!
//! Point sets cross the boundary in the same text format the CLI reads, so a
//! page can paste or download them unchanged.

use wasm_bindgen::prelude::*;

use udg_clique::instances::GenSpec;
use udg_clique::io::{format_points, parse_ids, parse_points};
use udg_clique::solve::{solve as run_solve, SolveOptions};
use udg_clique::svg::{render_svg, Overlay};
use udg_clique::{Error, PointSet};

fn js_err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn points(text: &str) -> Result<PointSet, JsError> {
    parse_points(text).map_err(js_err)
}

/// Point file text for a seeded instance of `family` (`uniform`,
/// `bounded-k` or `convex`).
#[wasm_bindgen]
pub fn generate(
    family: &str,
    n: usize,
    param: f64,
    seed: u32,
    k_max: usize,
) -> Result<String, JsError> {
    let spec = GenSpec {
        family: family.parse().map_err(js_err)?,
        n,
        param,
        seed: seed.into(),
        k_max,
    };
    let ps = spec.generate().map_err(js_err)?;
    Ok(format_points(&ps, None))
}

/// JSON solve report for the points in `text`.
#[wasm_bindgen]
pub fn solve(text: &str, algo: &str, anchor: Option<usize>, seed: u32) -> Result<String, JsError> {
    let ps = points(text)?;
    let mut opts = SolveOptions::new(algo.parse().map_err(js_err)?);
    opts.anchor = anchor;
    opts.seed = seed.into();
    let report = run_solve(&ps, &opts).map_err(js_err)?;
    serde_json::to_string(&report).map_err(|e| JsError::new(&e.to_string()))
}

/// SVG for the points in `text`. `clique` is a solve report or a list of
/// ids; `lens` is a pair of ids, or `None`.
#[wasm_bindgen]
pub fn render(
    text: &str,
    clique: Option<String>,
    lens: Option<Vec<usize>>,
) -> Result<String, JsError> {
    let ps = points(text)?;
    let ids = clique
        .filter(|c| !c.trim().is_empty())
        .map(|c| parse_ids(&c))
        .transpose()
        .map_err(js_err)?;
    for &id in ids.iter().flatten() {
        ps.check_id(id).map_err(js_err)?;
    }
    let lens = match lens.as_deref() {
        None | Some([]) => None,
        Some(&[p, q]) => {
            ps.check_id(p).map_err(js_err)?;
            ps.check_id(q).map_err(js_err)?;
            if !ps.adjacent(p, q) {
                return Err(JsError::new("lens points must be within distance 1"));
            }
            Some((p, q))
        }
        Some(_) => return Err(JsError::new("a lens takes exactly two point ids")),
    };
    let overlay = Overlay {
        clique: ids.as_deref(),
        lens,
        title: None,
    };
    Ok(render_svg(&ps, &overlay))
}
