//! Coverage certificates for scan sets on polyominoes.
//!
//! L∞ scans are checked exactly per pixel by coordinate compression of the
//! scan squares. L2 scans use a per-pixel triangle fan first (exact for unit
//! disks on lattice points), then probe the disk arrangement, then fall back
//! to a 64×64 subsample of the pixel.

use serde::{Deserialize, Serialize};

use crate::geometry::{CostModel, Mode, Pixel, Point, Polyomino, ScanMetric, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageCertificate {
    pub covered: bool,
    /// An uncovered point when `covered` is false.
    pub witness: Option<Point>,
}

impl CoverageCertificate {
    fn ok() -> Self {
        Self { covered: true, witness: None }
    }

    fn uncovered(witness: Point) -> Self {
        Self { covered: false, witness: Some(witness) }
    }
}

/// Every point of `region` must be within range `model.r` (in the scan
/// metric) of a scan that sees it. In milling mode a scan sees `q` only when
/// the segment between them stays inside the region.
pub fn coverage_check(region: &Polyomino, scans: &[Point], model: &CostModel, mode: Mode) -> CoverageCertificate {
    for &pixel in region.pixels() {
        let uncovered = match model.scan_metric {
            ScanMetric::Linf => linf_pixel_gap(region, pixel, scans, model.r, mode),
            ScanMetric::L2 => l2_pixel_gap(region, pixel, scans, model.r, mode),
        };
        if let Some(w) = uncovered {
            return CoverageCertificate::uncovered(w);
        }
    }
    CoverageCertificate::ok()
}

/// Whether `q` lies in the closed region.
pub fn point_in_polyomino(region: &Polyomino, q: Point) -> bool {
    let xs = candidate_cells(q.x);
    let ys = candidate_cells(q.y);
    xs.iter().flatten().any(|&x| ys.iter().flatten().any(|&y| region.contains(Pixel::new(x, y))))
}

fn candidate_cells(v: f64) -> [Option<i64>; 2] {
    let f = v.floor();
    let first = f as i64;
    let second = if (v - f).abs() <= EPS {
        Some(first - 1)
    } else if (f + 1.0 - v).abs() <= EPS {
        Some(first + 1)
    } else {
        None
    };
    [Some(first), second]
}

/// Whether the closed segment `ab` stays inside the closed region.
pub fn segment_in_polyomino(region: &Polyomino, a: Point, b: Point) -> bool {
    let mut ts = vec![0.0, 1.0];
    for (p0, p1) in [(a.x, b.x), (a.y, b.y)] {
        if (p1 - p0).abs() > EPS {
            let (lo, hi) = if p0 < p1 { (p0, p1) } else { (p1, p0) };
            let mut k = lo.ceil();
            while k <= hi {
                ts.push((k - p0) / (p1 - p0));
                k += 1.0;
            }
        }
    }
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let at = |t: f64| Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t);
    for w in ts.windows(2) {
        if !point_in_polyomino(region, at(w[0])) || !point_in_polyomino(region, at(0.5 * (w[0] + w[1]))) {
            return false;
        }
    }
    point_in_polyomino(region, b)
}

fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup_by(|a, b| a.approx_eq(*b));
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= EPS {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Interiors of two convex polygons intersect (separating axis test).
fn interiors_intersect(a: &[Point], b: &[Point]) -> bool {
    let axes = |poly: &[Point]| -> Vec<(f64, f64)> {
        (0..poly.len())
            .map(|i| {
                let p = poly[i];
                let q = poly[(i + 1) % poly.len()];
                (-(q.y - p.y), q.x - p.x)
            })
            .collect()
    };
    let project = |poly: &[Point], (nx, ny): (f64, f64)| {
        poly.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let v = p.x * nx + p.y * ny;
            (lo.min(v), hi.max(v))
        })
    };
    for axis in axes(a).into_iter().chain(axes(b)) {
        let norm = axis.0.hypot(axis.1);
        if norm <= EPS {
            continue;
        }
        let axis = (axis.0 / norm, axis.1 / norm);
        let (a0, a1) = project(a, axis);
        let (b0, b1) = project(b, axis);
        if a1 <= b0 + EPS || b1 <= a0 + EPS {
            return false;
        }
    }
    true
}

/// Whether every segment from `s` to a point of the convex polygon `shape`
/// stays inside the region, i.e. `conv(s ∪ shape) ⊆ region`.
fn sees_convex(region: &Polyomino, s: Point, shape: &[Point]) -> bool {
    let mut pts = shape.to_vec();
    pts.push(s);
    let hull = convex_hull(pts);
    if hull.len() < 3 {
        return hull.windows(2).all(|w| segment_in_polyomino(region, w[0], w[1]))
            && hull.iter().all(|p| point_in_polyomino(region, *p));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &hull {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    for cx in (x0 - EPS).floor() as i64..=(x1 + EPS).ceil() as i64 {
        for cy in (y0 - EPS).floor() as i64..=(y1 + EPS).ceil() as i64 {
            if region.contains(Pixel::new(cx, cy)) {
                continue;
            }
            let (fx, fy) = (cx as f64, cy as f64);
            let cell = [Point::new(fx, fy), Point::new(fx + 1.0, fy), Point::new(fx + 1.0, fy + 1.0), Point::new(fx, fy + 1.0)];
            if interiors_intersect(&hull, &cell) {
                return false;
            }
        }
    }
    true
}

fn rect_pts(x0: f64, y0: f64, x1: f64, y1: f64) -> [Point; 4] {
    [Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)]
}

fn linf_pixel_gap(region: &Polyomino, pixel: Pixel, scans: &[Point], r: f64, mode: Mode) -> Option<Point> {
    let (px, py) = (pixel.x as f64, pixel.y as f64);
    let relevant: Vec<Point> = scans
        .iter()
        .copied()
        .filter(|s| s.x - r < px + 1.0 - EPS && s.x + r > px + EPS && s.y - r < py + 1.0 - EPS && s.y + r > py + EPS)
        .collect();
    let mut xs = vec![px, px + 1.0];
    let mut ys = vec![py, py + 1.0];
    for s in &relevant {
        for v in [s.x - r, s.x + r] {
            if v > px + EPS && v < px + 1.0 - EPS {
                xs.push(v);
            }
        }
        for v in [s.y - r, s.y + r] {
            if v > py + EPS && v < py + 1.0 - EPS {
                ys.push(v);
            }
        }
    }
    let sort = |v: &mut Vec<f64>| {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup_by(|a, b| (*a - *b).abs() <= EPS);
    };
    sort(&mut xs);
    sort(&mut ys);
    for wx in xs.windows(2) {
        for wy in ys.windows(2) {
            let sub = rect_pts(wx[0], wy[0], wx[1], wy[1]);
            let covered = relevant.iter().any(|s| {
                let inside = s.x - r <= wx[0] + EPS && s.x + r >= wx[1] - EPS && s.y - r <= wy[0] + EPS && s.y + r >= wy[1] - EPS;
                inside && (mode == Mode::Lawnmowing || sees_convex(region, *s, &sub))
            });
            if !covered {
                return Some(Point::new(0.5 * (wx[0] + wx[1]), 0.5 * (wy[0] + wy[1])));
            }
        }
    }
    None
}

fn l2_pixel_gap(region: &Polyomino, pixel: Pixel, scans: &[Point], r: f64, mode: Mode) -> Option<Point> {
    let (px, py) = (pixel.x as f64, pixel.y as f64);
    let r2 = r * r;
    let relevant: Vec<Point> = scans
        .iter()
        .copied()
        .filter(|s| {
            let nx = s.x.clamp(px, px + 1.0);
            let ny = s.y.clamp(py, py + 1.0);
            s.dist2(Point::new(nx, ny)) < r2 - EPS
        })
        .collect();

    // Triangle fan around the pixel centre: each triangle needs one disk.
    let center = Point::new(px + 0.5, py + 0.5);
    let corners = rect_pts(px, py, px + 1.0, py + 1.0);
    let fan_covered = (0..4).all(|i| {
        let tri = [corners[i], corners[(i + 1) % 4], center];
        relevant.iter().any(|s| {
            tri.iter().all(|v| s.dist2(*v) <= r2 + EPS) && (mode == Mode::Lawnmowing || sees_convex(region, *s, &tri))
        })
    });
    if fan_covered {
        return None;
    }

    let covers = |q: &Point| -> bool {
        relevant
            .iter()
            .any(|s| s.dist2(*q) <= r2 + EPS && (mode == Mode::Lawnmowing || segment_in_polyomino(region, *s, *q)))
    };
    let in_pixel = |q: &Point| q.x >= px - EPS && q.x <= px + 1.0 + EPS && q.y >= py - EPS && q.y <= py + 1.0 + EPS;

    for q in arrangement_probes(&relevant, r, px, py) {
        if in_pixel(&q) && !covers(&q) {
            return Some(q);
        }
    }
    const SUB: usize = 64;
    for i in 0..=SUB {
        for j in 0..=SUB {
            let q = Point::new(px + i as f64 / SUB as f64, py + j as f64 / SUB as f64);
            if !covers(&q) {
                return Some(q);
            }
        }
    }
    None
}

/// Candidate vertices of the uncovered part of a pixel (pixel corners,
/// circle/edge and circle/circle intersections) plus nearby probe points
/// pushed away from the circles through them.
fn arrangement_probes(disks: &[Point], r: f64, px: f64, py: f64) -> Vec<Point> {
    const DELTA: f64 = 1e-6;
    let mut vertices: Vec<(Point, Vec<Point>)> = Vec::new();
    for c in rect_pts(px, py, px + 1.0, py + 1.0) {
        vertices.push((c, Vec::new()));
    }
    for &s in disks {
        for (fixed_x, v) in [(true, px), (true, px + 1.0), (false, py), (false, py + 1.0)] {
            let d = if fixed_x { v - s.x } else { v - s.y };
            let h2 = r * r - d * d;
            if h2 < 0.0 {
                continue;
            }
            let h = h2.sqrt();
            for sign in [-1.0, 1.0] {
                let q = if fixed_x { Point::new(v, s.y + sign * h) } else { Point::new(s.x + sign * h, v) };
                vertices.push((q, vec![s]));
            }
        }
    }
    for (i, &a) in disks.iter().enumerate() {
        for &b in &disks[i + 1..] {
            let d = a.dist(b);
            if d <= EPS || d > 2.0 * r {
                continue;
            }
            let mid = Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
            let h = (r * r - 0.25 * d * d).max(0.0).sqrt();
            let (ux, uy) = ((b.x - a.x) / d, (b.y - a.y) / d);
            for sign in [-1.0, 1.0] {
                vertices.push((Point::new(mid.x - sign * h * uy, mid.y + sign * h * ux), vec![a, b]));
            }
        }
    }
    let mut probes = Vec::new();
    for (v, through) in vertices {
        probes.push(v);
        let mut dirs: Vec<(f64, f64)> = (0..8)
            .map(|k| {
                let ang = k as f64 * std::f64::consts::FRAC_PI_4;
                (ang.cos(), ang.sin())
            })
            .collect();
        let (mut ox, mut oy) = (0.0, 0.0);
        for c in &through {
            let d = v.dist(*c).max(EPS);
            ox += (v.x - c.x) / d;
            oy += (v.y - c.y) / d;
        }
        let n = ox.hypot(oy);
        if n > EPS {
            dirs.push((ox / n, oy / n));
        }
        for (dx, dy) in dirs {
            probes.push(Point::new(v.x + DELTA * dx, v.y + DELTA * dy));
        }
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GridPoint, TourMetric};

    fn linf() -> CostModel {
        CostModel::rect(1.0)
    }

    fn l2() -> CostModel {
        CostModel { c: 1.0, r: 1.0, scan_metric: ScanMetric::L2, tour_metric: TourMetric::L1 }
    }

    #[test]
    fn single_pixel_covered_from_any_corner() {
        let p = Polyomino::rectangle(0, 0, 1, 1).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
            assert!(coverage_check(&p, &[Point::new(x, y)], &linf(), Mode::Milling).covered);
        }
    }

    #[test]
    fn l2_single_center_scan_misses_corner() {
        let p = Polyomino::rectangle(0, 0, 2, 2).unwrap();
        let cert = coverage_check(&p, &[Point::new(1.0, 1.0)], &l2(), Mode::Milling);
        assert!(!cert.covered);
        let w = cert.witness.unwrap();
        assert!(w.dist(Point::new(1.0, 1.0)) > 1.0);
    }

    #[test]
    fn l2_diagonal_grid_covers_2x2() {
        let p = Polyomino::rectangle(0, 0, 2, 2).unwrap();
        let scans: Vec<Point> =
            [(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)].iter().map(|&(x, y)| GridPoint::new(x, y).to_point()).collect();
        assert!(coverage_check(&p, &scans, &l2(), Mode::Milling).covered);
        // Dropping a corner scan opens a gap in that corner pixel.
        let cert = coverage_check(&p, &scans[1..], &l2(), Mode::Milling);
        assert!(!cert.covered);
    }

    #[test]
    fn linf_union_of_offgrid_squares() {
        // Two half-offset squares jointly cover the pixel, neither alone does.
        let p = Polyomino::rectangle(0, 0, 1, 1).unwrap();
        let scans = [Point::new(1.5, 0.5), Point::new(-0.5, 0.5)];
        assert!(coverage_check(&p, &scans, &linf(), Mode::Lawnmowing).covered);
        let gap = [Point::new(1.7, 0.5), Point::new(-0.7, 0.5)];
        let cert = coverage_check(&p, &gap, &linf(), Mode::Lawnmowing);
        assert!(!cert.covered);
        let w = cert.witness.unwrap();
        assert!(w.x > 0.3 && w.x < 0.7);
    }

    #[test]
    fn milling_visibility_blocks_reflex_corner() {
        // L-tromino; a scan outside the region sees nothing when milling.
        let p = Polyomino::new([GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(0, 1)]).unwrap();
        let s = [Point::new(1.5, 1.5)];
        assert!(!coverage_check(&p, &s, &CostModel { r: 2.0, ..linf() }, Mode::Milling).covered);
        assert!(coverage_check(&p, &s, &CostModel { r: 2.0, ..linf() }, Mode::Lawnmowing).covered);
    }

    #[test]
    fn segment_containment() {
        let p = Polyomino::new([GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(0, 1)]).unwrap();
        assert!(segment_in_polyomino(&p, Point::new(0.5, 0.5), Point::new(1.5, 0.5)));
        assert!(!segment_in_polyomino(&p, Point::new(0.5, 1.5), Point::new(1.5, 1.5)));
        // Passing exactly through the reflex corner stays in the closed region.
        assert!(segment_in_polyomino(&p, Point::new(0.5, 1.5), Point::new(1.5, 0.5)));
        assert!(segment_in_polyomino(&p, Point::new(1.0, 1.0), Point::new(0.2, 0.2)));
    }
}
