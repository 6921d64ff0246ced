//! SVG 1.1 rendering of instances and solutions.
//!
//! Layers in drawing order: `region` (one `rect.pixel` per pixel or a single
//! `path.region`), `scans` (one `rect.scan` or `circle.scan` per scan range),
//! `stops` and `tour` (one closed `path.tour`, or a `circle.tour-dot` for a
//! tour of length zero). Numbers are printed with at most four decimals, so
//! output bytes depend only on the input.

use std::fmt::Write;

use mwpdv_core::{Point, Result, ScanMetric};

use crate::io::{InstanceFile, Region, SolutionFile};

/// Pixels per unit length.
const SCALE: f64 = 24.0;
const MARGIN: f64 = 0.5;

fn num(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

struct Frame {
    x0: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, x: f64) -> String {
        num((x - self.x0) * SCALE)
    }

    fn y(&self, y: f64) -> String {
        num((self.y1 - y) * SCALE)
    }

    fn len(&self, l: f64) -> String {
        num(l * SCALE)
    }

    fn path(&self, pts: &[Point], close: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, self.x(p.x), self.y(p.y));
        }
        if close {
            d.push_str(" Z");
        }
        d
    }
}

pub fn render_svg(instance: &InstanceFile, solution: Option<&SolutionFile>) -> Result<String> {
    let region = instance.region()?;
    let outline: Vec<Point> = match &region {
        Region::Polyomino(p) => p.pixels().iter().flat_map(|g| [g.to_point(), Point::new(g.x as f64 + 1.0, g.y as f64 + 1.0)]).collect(),
        Region::Polygon(p) => p.vertices().to_vec(),
    };
    let mut extent = outline.clone();
    if let Some(s) = solution {
        let r = s.cost.r;
        extent.extend(s.tour_points());
        for p in s.scan_points() {
            extent.push(Point::new(p.x - r, p.y - r));
            extent.push(Point::new(p.x + r, p.y + r));
        }
    }
    let x0 = extent.iter().map(|p| p.x).fold(f64::INFINITY, f64::min) - MARGIN;
    let x1 = extent.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let y0 = extent.iter().map(|p| p.y).fold(f64::INFINITY, f64::min) - MARGIN;
    let y1 = extent.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let f = Frame { x0, y1 };
    let (w, h) = (f.len(x1 - x0), f.len(y1 - y0));

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">");
    let _ = writeln!(out, "<title>{}</title>", escape(&instance.name));
    out.push_str("<g id=\"region\" fill=\"#dde6f0\" stroke=\"#7a8ea3\" stroke-width=\"1\">\n");
    match &region {
        Region::Polyomino(p) => {
            for g in p.pixels() {
                let _ = writeln!(
                    out,
                    "<rect class=\"pixel\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                    f.x(g.x as f64),
                    f.y(g.y as f64 + 1.0),
                    f.len(1.0),
                    f.len(1.0)
                );
            }
        }
        Region::Polygon(p) => {
            let _ = writeln!(out, "<path class=\"region\" d=\"{}\"/>", f.path(p.vertices(), true));
        }
    }
    out.push_str("</g>\n");

    if let Some(s) = solution {
        let r = s.cost.r;
        out.push_str("<g id=\"scans\" fill=\"#f2b134\" fill-opacity=\"0.25\" stroke=\"#c8811a\" stroke-width=\"1\">\n");
        for p in s.scan_points() {
            match s.cost.scan_metric {
                ScanMetric::Linf => {
                    let _ = writeln!(
                        out,
                        "<rect class=\"scan\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                        f.x(p.x - r),
                        f.y(p.y + r),
                        f.len(2.0 * r),
                        f.len(2.0 * r)
                    );
                }
                ScanMetric::L2 => {
                    let _ = writeln!(out, "<circle class=\"scan\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", f.x(p.x), f.y(p.y), f.len(r));
                }
            }
        }
        out.push_str("</g>\n<g id=\"stops\" fill=\"#c8811a\">\n");
        for p in s.scan_points() {
            let _ = writeln!(out, "<circle class=\"stop\" cx=\"{}\" cy=\"{}\" r=\"2\"/>", f.x(p.x), f.y(p.y));
        }
        out.push_str("</g>\n<g id=\"tour\" fill=\"none\" stroke=\"#b2182b\" stroke-width=\"2\">\n");
        let tour = s.tour_points();
        if s.tour_length == 0.0 || tour.len() < 2 {
            let _ = writeln!(out, "<circle class=\"tour-dot\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#b2182b\"/>", f.x(tour[0].x), f.y(tour[0].y));
        } else {
            let _ = writeln!(out, "<path class=\"tour\" d=\"{}\"/>", f.path(&tour[..tour.len() - 1], true));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
