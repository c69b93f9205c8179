//! SVG rendering of point sets, cliques, and lenses.

use std::fmt::Write as _;

use crate::geometry::{Point, PointSet};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Default)]
pub struct Overlay<'a> {
    pub clique: Option<&'a [usize]>,
    /// Lens `L(p, q)` drawn as two circular arcs.
    pub lens: Option<(usize, usize)>,
    pub title: Option<&'a str>,
}

/// The two corners of the lens `L(p, q)`: where the radius-`|pq|` circles
/// around `p` and `q` cross.
pub fn lens_corners(p: &Point, q: &Point) -> (Point, Point) {
    let (mx, my) = ((p.x + q.x) / 2.0, (p.y + q.y) / 2.0);
    let h = 3f64.sqrt() / 2.0;
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    (
        Point::new(mx - h * dy, my + h * dx),
        Point::new(mx + h * dy, my - h * dx),
    )
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> (Self, f64) {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
        if let Some(first) = points.first() {
            (min_x, max_x, min_y, max_y) = (first.x, first.x, first.y, first.y);
            for p in points {
                min_x = min_x.min(p.x);
                max_x = max_x.max(p.x);
                min_y = min_y.min(p.y);
                max_y = max_y.max(p.y);
            }
        }
        // Leave room for the scale bar below the data.
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        let height = (max_y - min_y) * scale + 2.0 * MARGIN + 40.0;
        (
            Self {
                min_x,
                max_y,
                scale,
            },
            height,
        )
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min_x) * self.scale,
            MARGIN + (self.max_y - p.y) * self.scale,
        )
    }
}

pub fn render_svg(ps: &PointSet, overlay: &Overlay) -> String {
    let pts = ps.points();
    let (frame, height) = Frame::fit(pts);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(title) = overlay.title {
        let _ = writeln!(
            out,
            r#"<text x="{MARGIN}" y="20" font-family="sans-serif" font-size="14">{}</text>"#,
            escape(title)
        );
    }

    if let Some((p, q)) = overlay.lens {
        if p < pts.len() && q < pts.len() {
            let (a, b) = lens_corners(&pts[p], &pts[q]);
            let r = pts[p].dist_sq(&pts[q]).sqrt() * frame.scale;
            let (ax, ay) = frame.map(&a);
            let (bx, by) = frame.map(&b);
            let _ = writeln!(
                out,
                r##"<path class="lens" d="M {ax:.3} {ay:.3} A {r:.3} {r:.3} 0 0 0 {bx:.3} {by:.3} A {r:.3} {r:.3} 0 0 0 {ax:.3} {ay:.3} Z" fill="#4477aa" fill-opacity="0.12" stroke="#4477aa" stroke-width="1.5"/>"##
            );
        }
    }

    let mut in_clique = vec![false; pts.len()];
    for &id in overlay.clique.unwrap_or(&[]) {
        if id < pts.len() {
            in_clique[id] = true;
        }
    }
    for (id, p) in pts.iter().enumerate() {
        let (x, y) = frame.map(p);
        if in_clique[id] {
            let _ = writeln!(
                out,
                r##"<circle class="clique" cx="{x:.3}" cy="{y:.3}" r="4.5" fill="#cc3311"><title>{id}</title></circle>"##
            );
        } else {
            let _ = writeln!(
                out,
                r##"<circle class="point" cx="{x:.3}" cy="{y:.3}" r="3" fill="#333333"><title>{id}</title></circle>"##
            );
        }
    }

    // Scale bar of length 1, with a unit-diameter disk for reference.
    let bar = frame.scale;
    let y = height - 25.0;
    let _ = writeln!(
        out,
        r##"<g class="scale"><line x1="{MARGIN}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="#000" stroke-width="2"/><circle cx="{:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="#999" stroke-dasharray="3 3"/><text x="{MARGIN}" y="{:.3}" font-family="sans-serif" font-size="11">1</text></g>"##,
        MARGIN + bar,
        MARGIN + bar / 2.0,
        bar / 2.0,
        y - 5.0,
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
