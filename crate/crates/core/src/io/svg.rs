use std::fmt::Write as _;

use crate::path::SegmentKind;
use crate::planner::PlanResult;
use crate::point::Point;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Plane coordinates used for drawing: raw in the plane, `(e.x, e_perp.x)` otherwise.
pub fn drawing_coordinates(result: &PlanResult<f64>, x: &Point<f64>) -> (f64, f64) {
    if x.dim() == 2 {
        (x[0], x[1])
    } else {
        (result.frame.e().dot(x), result.frame.e_perp().dot(x))
    }
}

/// Segment kind and its sampled drawing coordinates.
type Polyline = (&'static str, Vec<(f64, f64)>);

/// SVG drawing of a plan: each segment as a polyline through
/// `samples_per_segment + 1` points, obstacles as filled discs, starts as
/// open circles and goals as squares. Output depends only on the inputs.
pub fn render_svg(result: &PlanResult<f64>, samples_per_segment: usize) -> String {
    let samples = samples_per_segment.max(1);
    let path = &result.path;
    let project = |x: &Point<f64>| drawing_coordinates(result, x);

    let mut polylines: Vec<Vec<Polyline>> = Vec::new();
    let mut all: Vec<(f64, f64)> = path.obstacles().iter().map(project).collect();
    for segs in path.robots() {
        let mut robot = Vec::new();
        for s in segs {
            let kind = match s.kind {
                SegmentKind::Linear { .. } => "linear",
                SegmentKind::Arc { .. } => "arc",
            };
            let pts: Vec<(f64, f64)> = (0..=samples)
                .map(|k| project(&s.kind.at(k as f64 / samples as f64)))
                .collect();
            all.extend(&pts);
            robot.push((kind, pts));
        }
        polylines.push(robot);
    }

    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-6);
    let pad = 0.08 * size;
    let marker = 0.012 * size;
    let stroke = 0.004 * size;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - pad,
        -(y1 + pad),
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    )
    .unwrap();
    writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">"#).unwrap();
    for (r, robot) in polylines.iter().enumerate() {
        let color = PALETTE[r % PALETTE.len()];
        writeln!(out, r#"<g class="robot" data-robot="{}" stroke="{color}">"#, r + 1).unwrap();
        for (k, (kind, pts)) in robot.iter().enumerate() {
            let s = &path.segments(r)[k];
            let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
            writeln!(
                out,
                r#"<polyline data-kind="{kind}" data-t0="{}" data-t1="{}" points="{}"/>"#,
                s.t0,
                s.t1,
                coords.join(" ")
            )
            .unwrap();
        }
        let (sx, sy) = project(&path.query().starts()[r]);
        let (gx, gy) = project(&path.query().goals()[r]);
        writeln!(out, r#"<circle class="start" cx="{sx}" cy="{sy}" r="{marker}"/>"#).unwrap();
        writeln!(
            out,
            r#"<rect class="goal" x="{}" y="{}" width="{}" height="{}"/>"#,
            gx - marker,
            gy - marker,
            2.0 * marker,
            2.0 * marker
        )
        .unwrap();
        writeln!(out, "</g>").unwrap();
    }
    for (j, o) in path.obstacles().iter().enumerate() {
        let (ox, oy) = project(o);
        writeln!(
            out,
            r#"<circle class="obstacle" data-obstacle="{}" cx="{ox}" cy="{oy}" r="{marker}" fill="black" stroke="none"/>"#,
            j + 1
        )
        .unwrap();
    }
    writeln!(out, "</g>\n</svg>").unwrap();
    out
}
