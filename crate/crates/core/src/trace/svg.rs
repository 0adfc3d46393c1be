//! SVG 1.1 rendering of fold traces.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Constraint, FoldTrace, StepKind};
use crate::error::{Error, Result};
use crate::geom::{Line, Point};

/// Output size in pixels; the drawing is fitted inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub width: u32,
    pub height: u32,
}

impl Default for Viewport {
    fn default() -> Self {
        Self {
            width: 800,
            height: 800,
        }
    }
}

struct Bounds {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Bounds {
    fn of(points: &[Point]) -> Bounds {
        let mut b = Bounds {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points.iter().filter(|p| p.is_finite()) {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        if !b.min_x.is_finite() {
            b = Bounds {
                min_x: -1.0,
                min_y: -1.0,
                max_x: 1.0,
                max_y: 1.0,
            };
        }
        // Degenerate boxes get a unit extent around their centre.
        for (lo, hi) in [(&mut b.min_x, &mut b.max_x), (&mut b.min_y, &mut b.max_y)] {
            if *hi - *lo < 1e-9 {
                let mid = 0.5 * (*lo + *hi);
                *lo = mid - 0.5;
                *hi = mid + 0.5;
            }
        }
        b
    }

    fn with_margin(self, frac: f64) -> Bounds {
        let mx = (self.max_x - self.min_x) * frac;
        let my = (self.max_y - self.min_y) * frac;
        Bounds {
            min_x: self.min_x - mx,
            min_y: self.min_y - my,
            max_x: self.max_x + mx,
            max_y: self.max_y + my,
        }
    }

    fn extent(&self) -> f64 {
        (self.max_x - self.min_x).max(self.max_y - self.min_y)
    }

    /// Portion of `l` inside the box (Liang–Barsky on the anchor ray).
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let p0 = l.anchor();
        let d = l.direction();
        let mut t0 = f64::NEG_INFINITY;
        let mut t1 = f64::INFINITY;
        for (pos, dir, lo, hi) in [
            (p0.x, d.x, self.min_x, self.max_x),
            (p0.y, d.y, self.min_y, self.max_y),
        ] {
            if dir.abs() < 1e-15 {
                if pos < lo || pos > hi {
                    return None;
                }
            } else {
                let a = (lo - pos) / dir;
                let b = (hi - pos) / dir;
                t0 = t0.max(a.min(b));
                t1 = t1.min(a.max(b));
            }
        }
        (t0 <= t1).then(|| (p0 + d * t0, p0 + d * t1))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders `trace` as a standalone SVG document.
///
/// Fold lines, edge creases, construction lines and points each get their
/// own class; polygon vertices (points joined by edge creases) are drawn
/// as `vertex` markers. Output is byte-identical for identical input.
pub fn emit_svg(trace: &FoldTrace, viewport: Viewport) -> Result<Vec<u8>> {
    if trace.is_empty() {
        return Err(Error::EmptyDiagram);
    }

    let mut vertex_names = BTreeSet::new();
    for step in trace.steps.iter().filter(|s| s.kind == StepKind::Edge) {
        for c in &step.constraints {
            if let Constraint::PointOnLine { point, .. } = c {
                vertex_names.insert(point.as_str());
            }
        }
    }

    let points: Vec<(&str, Point)> = trace
        .inputs
        .points
        .iter()
        .map(|n| (n.name.as_str(), n.value))
        .chain(
            trace
                .steps
                .iter()
                .flat_map(|s| s.derived_points.iter().map(|n| (n.name.as_str(), n.value))),
        )
        .collect();

    let construction: Vec<Line> = trace
        .inputs
        .lines
        .iter()
        .chain(trace.steps.iter().flat_map(|s| s.derived_lines.iter()))
        .map(|n| n.value)
        .collect();

    let mut extent_points: Vec<Point> = points.iter().map(|(_, p)| *p).collect();
    extent_points.extend(construction.iter().map(Line::anchor));
    extent_points.extend(
        trace
            .steps
            .iter()
            .flat_map(|s| s.folds.iter().map(|f| f.value.anchor())),
    );
    let bounds = Bounds::of(&extent_points).with_margin(0.05);
    let extent = bounds.extent();
    let stroke = extent / 400.0;
    let radius = extent / 150.0;
    let font = extent / 45.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        viewport.width,
        viewport.height,
        num(bounds.min_x),
        num(-bounds.max_y),
        num(bounds.max_x - bounds.min_x),
        num(bounds.max_y - bounds.min_y),
    );
    let _ = writeln!(
        out,
        "<style>.construction{{stroke:#9a9a9a;stroke-dasharray:{d},{d}}} .fold{{stroke:#c0392b}} .edge{{stroke:#1f3a93}} .point{{fill:#333333}} .vertex{{fill:#1f3a93}} text{{font-family:sans-serif;font-size:{f}px;fill:#333333}}</style>",
        d = num(stroke * 4.0),
        f = num(font),
    );

    let _ = writeln!(out, r#"<g stroke-width="{}" fill="none">"#, num(stroke));
    for l in &construction {
        if let Some((a, b)) = bounds.clip(l) {
            write_line(&mut out, "construction", a, b);
        }
    }
    for step in &trace.steps {
        let class = if step.kind == StepKind::Edge {
            "edge"
        } else {
            "fold"
        };
        for f in &step.folds {
            if let Some((a, b)) = bounds.clip(&f.value) {
                write_line(&mut out, class, a, b);
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let input_names: BTreeSet<&str> = trace
        .inputs
        .points
        .iter()
        .map(|n| n.name.as_str())
        .collect();
    for (name, p) in &points {
        let is_vertex = vertex_names.contains(name);
        let class = if is_vertex { "vertex" } else { "point" };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
            num(p.x),
            num(-p.y),
            num(radius)
        );
        if is_vertex || input_names.contains(name) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                num(p.x + radius * 1.5),
                num(-p.y - radius * 1.5),
                escape(name)
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out.into_bytes())
}

fn write_line(out: &mut String, class: &str, a: Point, b: Point) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(a.x),
        num(-a.y),
        num(b.x),
        num(-b.y)
    );
}
