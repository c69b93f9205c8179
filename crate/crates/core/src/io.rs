//! Text formats for point sets and clique id lists.
//!
//! Point files hold one `x y` pair per line, separated by whitespace. Lines
//! whose first non-blank character is `#` are comments and blank lines are
//! skipped; point ids follow the order of the remaining lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut coord = |name: &str| -> Result<f64> {
            let field = fields.next().ok_or_else(|| Error::Parse {
                line: lineno + 1,
                msg: format!("missing {name} coordinate"),
            })?;
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("invalid {name} coordinate `{field}`"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("non-finite {name} coordinate"),
                });
            }
            Ok(v)
        };
        let p = Point::new(coord("x")?, coord("y")?);
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("unexpected field `{extra}`"),
            });
        }
        points.push(p);
    }
    Ok(PointSet::new(points))
}

/// Shortest round-trip formatting, so parsing the output is lossless.
pub fn format_points(ps: &PointSet, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for p in ps.points() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

/// Reads a clique as point ids: either a JSON object with an `indices` array
/// (such as a solve report) or whitespace-separated integers with `#`
/// comment lines.
pub fn parse_ids(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        #[derive(serde::Deserialize)]
        struct WithIndices {
            indices: Vec<usize>,
        }
        let parsed: WithIndices = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        return Ok(parsed.indices);
    }
    let mut ids = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for field in line.split(|c: char| c.is_whitespace() || c == ',') {
            if field.is_empty() {
                continue;
            }
            ids.push(field.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("invalid point id `{field}`"),
            })?);
        }
    }
    Ok(ids)
}
