//! Simple rectilinear polygons with real coordinates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GridPoint, Point, Polyomino, EPS};

/// A simple axis-parallel polygon, counterclockwise, without holes and
/// without collinear consecutive vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct RectPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for RectPolygon {
    type Error = Error;

    fn try_from(v: Vec<Point>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RectPolygon> for Vec<Point> {
    fn from(p: RectPolygon) -> Self {
        p.vertices
    }
}

/// A closed inward offset loop. Degenerate loops (a segment walked both
/// ways, or a single point) have zero area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetLoop {
    pub depth: f64,
    pub vertices: Vec<Point>,
    pub length: f64,
    pub degenerate: bool,
}

impl OffsetLoop {
    /// The loop's edges, closing back to the first vertex.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).filter(|(a, b)| !a.approx_eq(*b)).collect()
    }

    pub fn polygon(&self) -> Option<RectPolygon> {
        (!self.degenerate).then(|| RectPolygon::new(self.vertices.clone()).ok()).flatten()
    }
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y).sum::<f64>() / 2.0
}

fn is_axis_parallel(a: Point, b: Point) -> bool {
    (a.x - b.x).abs() <= EPS || (a.y - b.y).abs() <= EPS
}

/// Drops repeated vertices and the middle of collinear runs.
fn simplify(mut v: Vec<Point>) -> Vec<Point> {
    if v.len() > 1 && v[0].approx_eq(*v.last().unwrap()) {
        v.pop();
    }
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let drop = (0..n).find(|&i| {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            a.approx_eq(b) || ((a.x - b.x).abs() <= EPS && (b.x - c.x).abs() <= EPS) || ((a.y - b.y).abs() <= EPS && (b.y - c.y).abs() <= EPS)
        });
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

/// Whether two closed segments share a point.
fn segments_touch(a: (Point, Point), b: (Point, Point)) -> bool {
    let (ax0, ax1) = (a.0.x.min(a.1.x), a.0.x.max(a.1.x));
    let (ay0, ay1) = (a.0.y.min(a.1.y), a.0.y.max(a.1.y));
    let (bx0, bx1) = (b.0.x.min(b.1.x), b.0.x.max(b.1.x));
    let (by0, by1) = (b.0.y.min(b.1.y), b.0.y.max(b.1.y));
    ax0 <= bx1 + EPS && bx0 <= ax1 + EPS && ay0 <= by1 + EPS && by0 <= ay1 + EPS
}

fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * dx, a.y + t * dy))
}

impl RectPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite coordinate".into()));
        }
        let v = simplify(vertices);
        let n = v.len();
        if n < 4 {
            return Err(Error::InvalidPolygon(format!("needs at least 4 corners, got {n}")));
        }
        if let Some(i) = (0..n).find(|&i| !is_axis_parallel(v[i], v[(i + 1) % n])) {
            return Err(Error::InvalidPolygon(format!("edge {i} is not axis-parallel")));
        }
        if signed_area(&v) <= 0.0 {
            return Err(Error::InvalidPolygon("vertices must run counterclockwise".into()));
        }
        let p = Self { vertices: v };
        if !p.is_simple() {
            return Err(Error::InvalidPolygon("boundary self-intersects".into()));
        }
        Ok(p)
    }

    pub fn rectangle(x0: f64, y0: f64, w: f64, h: f64) -> Result<Self> {
        Self::new(vec![Point::new(x0, y0), Point::new(x0 + w, y0), Point::new(x0 + w, y0 + h), Point::new(x0, y0 + h)])
    }

    /// Traces the boundary of a simply connected polyomino.
    pub fn from_polyomino(region: &Polyomino) -> Result<Self> {
        if !region.is_connected() || region.has_holes() {
            return Err(Error::InvalidPolygon("polyomino must be connected and hole-free".into()));
        }
        let mut next: BTreeMap<GridPoint, Vec<GridPoint>> = BTreeMap::new();
        for e in region.boundary_edges() {
            let (a, b) = (e.0, e.1);
            // Orient so the region lies on the left.
            let forward = if e.is_horizontal() { region.contains(a) } else { region.contains(a.offset(-1, 0)) };
            let (s, t) = if forward { (a, b) } else { (b, a) };
            next.entry(s).or_default().push(t);
        }
        if next.values().any(|o| o.len() != 1) {
            return Err(Error::InvalidPolygon("polyomino boundary touches itself at a corner".into()));
        }
        let start = *next.keys().next().unwrap();
        let mut loop_pts = vec![start];
        let mut cur = next[&start][0];
        while cur != start {
            loop_pts.push(cur);
            cur = next[&cur][0];
        }
        Self::new(loop_pts.into_iter().map(|g| g.to_point()).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Feature size `a`: the shortest edge.
    pub fn feature_size(&self) -> f64 {
        self.edges().map(|(a, b)| a.l1(b)).fold(f64::INFINITY, f64::min)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.l1(b)).sum()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bbox(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            Point::new(xs.clone().fold(f64::INFINITY, f64::min), ys.clone().fold(f64::INFINITY, f64::min)),
            Point::new(xs.fold(f64::NEG_INFINITY, f64::max), ys.fold(f64::NEG_INFINITY, f64::max)),
        )
    }

    /// Whether corner `i` turns left (interior angle 90°).
    pub fn is_convex(&self, i: usize) -> bool {
        let n = self.vertices.len();
        let (a, b, c) = (self.vertices[(i + n - 1) % n], self.vertices[i], self.vertices[(i + 1) % n]);
        (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) > 0.0
    }

    pub fn reflex_count(&self) -> usize {
        (0..self.len()).filter(|&i| !self.is_convex(i)).count()
    }

    fn is_simple(&self) -> bool {
        let edges: Vec<_> = self.edges().collect();
        let n = edges.len();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_touch(edges[i], edges[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        self.edges().any(|(a, b)| point_segment_dist(p, a, b) <= EPS)
    }

    /// Closed containment.
    pub fn contains(&self, p: Point) -> bool {
        if self.on_boundary(p) {
            return true;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.x - b.x).abs() <= EPS && a.x > p.x && (a.y > p.y) != (b.y > p.y) {
                inside = !inside;
            }
        }
        inside
    }

    /// Whether the closed segment `a b` lies in the closed polygon.
    pub fn contains_segment(&self, a: Point, b: Point) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let mut ts = vec![0.0, 1.0];
        for (p, q) in self.edges() {
            if (p.x - q.x).abs() <= EPS {
                let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
                if dx.abs() > EPS {
                    let t = (p.x - a.x) / dx;
                    let y = a.y + t * dy;
                    if (0.0..=1.0).contains(&t) && y >= y0 - EPS && y <= y1 + EPS {
                        ts.push(t);
                    }
                }
                if dy.abs() > EPS {
                    ts.extend([(y0 - a.y) / dy, (y1 - a.y) / dy].into_iter().filter(|t| (0.0..=1.0).contains(t)));
                }
            } else {
                let (x0, x1) = (p.x.min(q.x), p.x.max(q.x));
                if dy.abs() > EPS {
                    let t = (p.y - a.y) / dy;
                    let x = a.x + t * dx;
                    if (0.0..=1.0).contains(&t) && x >= x0 - EPS && x <= x1 + EPS {
                        ts.push(t);
                    }
                }
                if dx.abs() > EPS {
                    ts.extend([(x0 - a.x) / dx, (x1 - a.x) / dx].into_iter().filter(|t| (0.0..=1.0).contains(t)));
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.windows(2).filter(|w| w[1] - w[0] > 1e-12).all(|w| {
            let t = (w[0] + w[1]) / 2.0;
            self.contains(Point::new(a.x + t * dx, a.y + t * dy))
        })
    }

    /// Whether the closed axis-parallel rectangle lies in the polygon.
    pub fn contains_rect(&self, x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
        let crosses = self.edges().any(|(p, q)| {
            let (ex0, ex1) = (p.x.min(q.x), p.x.max(q.x));
            let (ey0, ey1) = (p.y.min(q.y), p.y.max(q.y));
            ex0.max(x0) < ex1.min(x1) - EPS && ey0.max(y0) < ey1.min(y1) - EPS
                || (ex1 - ex0 <= EPS && x0 + EPS < ex0 && ex0 < x1 - EPS && ey0.max(y0) < ey1.min(y1) - EPS)
                || (ey1 - ey0 <= EPS && y0 + EPS < ey0 && ey0 < y1 - EPS && ex0.max(x0) < ex1.min(x1) - EPS)
        });
        !crosses && self.contains(Point::new((x0 + x1) / 2.0, (y0 + y1) / 2.0))
    }

    /// Whether some axis-parallel square of half-width `h` fits inside.
    pub fn square_fits_somewhere(&self, h: f64) -> bool {
        let xs: Vec<f64> = self.vertices.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = self.vertices.iter().map(|p| p.y).collect();
        // A fitting square can slide left and then down until its sides
        // rest on vertex coordinates.
        xs.iter().any(|&x| ys.iter().any(|&y| self.contains_rect(x, y, x + 2.0 * h, y + 2.0 * h)))
    }

    /// Whether the square of half-width `h` centred at `c` fits inside.
    pub fn square_fits_at(&self, c: Point, h: f64) -> bool {
        self.contains_rect(c.x - h, c.y - h, c.x + h, c.y + h)
    }

    /// Sorted maximal x-intervals where the horizontal line at `y` lies in
    /// the closed polygon.
    pub fn horizontal_intervals(&self, y: f64) -> Vec<(f64, f64)> {
        let delta = 1e-7;
        let mut all = Vec::new();
        for yy in [y - delta, y + delta] {
            let mut xs: Vec<f64> = self
                .edges()
                .filter(|(a, b)| (a.x - b.x).abs() <= EPS && (a.y > yy) != (b.y > yy))
                .map(|(a, _)| a.x)
                .collect();
            xs.sort_by(f64::total_cmp);
            all.extend(xs.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0], c[1])));
        }
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (s, e) in all {
            match out.last_mut() {
                Some(last) if s <= last.1 + EPS => last.1 = last.1.max(e),
                _ => out.push((s, e)),
            }
        }
        out
    }

    /// The mitered inward offset at `depth`: each vertex moves along the sum
    /// of its two inward edge normals. Errors when nothing of that depth fits
    /// or when the offset stops being a simple loop.
    pub fn inward_offset(&self, depth: f64) -> Result<OffsetLoop> {
        let n = self.len();
        let dir = |i: usize| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let l = a.l1(b);
            ((b.x - a.x) / l, (b.y - a.y) / l)
        };
        let moved: Vec<Point> = (0..n)
            .map(|i| {
                let (px, py) = dir((i + n - 1) % n);
                let (cx, cy) = dir(i);
                let v = self.vertices[i];
                Point::new(v.x + depth * (-py - cy), v.y + depth * (px + cx))
            })
            .collect();
        let lengths: Vec<f64> = (0..n)
            .map(|i| {
                let (dx, dy) = dir(i);
                let (a, b) = (moved[i], moved[(i + 1) % n]);
                (b.x - a.x) * dx + (b.y - a.y) * dy
            })
            .collect();
        let scale = self.perimeter();
        if lengths.iter().any(|&l| l < -EPS * scale.max(1.0)) {
            return Err(if self.square_fits_somewhere(depth - EPS) { Error::TopologyChange { depth } } else { Error::OffsetCollapse { depth } });
        }
        let length = lengths.iter().map(|l| l.abs()).sum();
        let area = signed_area(&moved);
        if lengths.iter().any(|&l| l <= EPS * scale.max(1.0)) {
            if area.abs() > EPS * scale.max(1.0) {
                return Err(Error::TopologyChange { depth });
            }
            let mut v: Vec<Point> = Vec::new();
            for p in moved {
                if v.last().is_none_or(|q: &Point| !q.approx_eq(p)) {
                    v.push(p);
                }
            }
            while v.len() > 1 && v[0].approx_eq(*v.last().unwrap()) {
                v.pop();
            }
            return Ok(OffsetLoop { depth, vertices: v, length, degenerate: true });
        }
        let poly = Self { vertices: moved };
        if !poly.is_simple() {
            return Err(Error::TopologyChange { depth });
        }
        Ok(OffsetLoop { depth, vertices: poly.vertices, length, degenerate: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_shape() -> RectPolygon {
        RectPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(10.0, 4.0),
            Point::new(4.0, 4.0),
            Point::new(4.0, 10.0),
            Point::new(0.0, 10.0),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(RectPolygon::rectangle(0.0, 0.0, 2.0, 3.0).is_ok());
        let cw = vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0), Point::new(1.0, 0.0)];
        assert!(matches!(RectPolygon::new(cw), Err(Error::InvalidPolygon(_))));
        let diag = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 1.0), Point::new(0.0, 1.0)];
        assert!(RectPolygon::new(diag).is_err());
        // A collinear midpoint is dropped.
        let p = RectPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0), Point::new(2.0, 1.0), Point::new(0.0, 1.0)]).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(l_shape().reflex_count(), 1);
        assert_eq!(l_shape().feature_size(), 4.0);
    }

    #[test]
    fn from_polyomino() {
        let l = Polyomino::new([GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(0, 1)]).unwrap();
        let p = RectPolygon::from_polyomino(&l).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.area(), 3.0);
        let ring = Polyomino::new((0..3).flat_map(|x| (0..3).map(move |y| GridPoint::new(x, y))).filter(|g| *g != GridPoint::new(1, 1))).unwrap();
        assert!(RectPolygon::from_polyomino(&ring).is_err());
    }

    #[test]
    fn containment() {
        let l = l_shape();
        assert!(l.contains(Point::new(2.0, 8.0)));
        assert!(l.contains(Point::new(4.0, 7.0)));
        assert!(!l.contains(Point::new(6.0, 6.0)));
        assert!(l.contains_segment(Point::new(2.0, 6.0), Point::new(6.0, 2.0)));
        assert!(!l.contains_segment(Point::new(3.0, 9.0), Point::new(9.0, 3.0)));
        assert!(l.contains_segment(Point::new(4.0, 10.0), Point::new(4.0, 4.0)));
        assert!(l.contains_rect(0.0, 0.0, 4.0, 10.0));
        assert!(!l.contains_rect(0.0, 0.0, 5.0, 5.0));
        assert_eq!(l.horizontal_intervals(2.0), vec![(0.0, 10.0)]);
        assert_eq!(l.horizontal_intervals(4.0), vec![(0.0, 10.0)]);
        assert_eq!(l.horizontal_intervals(7.0), vec![(0.0, 4.0)]);
    }

    #[test]
    fn offsets() {
        let sq = RectPolygon::rectangle(0.0, 0.0, 10.0, 10.0).unwrap();
        for (d, len) in [(1.0, 32.0), (2.0, 24.0), (3.0, 16.0)] {
            let o = sq.inward_offset(d).unwrap();
            assert!((o.length - len).abs() < 1e-9);
            assert!(!o.degenerate);
        }
        let point = RectPolygon::rectangle(0.0, 0.0, 4.0, 4.0).unwrap().inward_offset(2.0).unwrap();
        assert!(point.degenerate);
        assert_eq!(point.vertices, vec![Point::new(2.0, 2.0)]);
        let seg = RectPolygon::rectangle(0.0, 0.0, 6.0, 2.0).unwrap().inward_offset(1.0).unwrap();
        assert!(seg.degenerate);
        assert!((seg.length - 8.0).abs() < 1e-9);
        assert!(matches!(sq.inward_offset(6.0), Err(Error::OffsetCollapse { .. })));
        assert!(matches!(l_shape().inward_offset(2.5), Err(Error::OffsetCollapse { .. })));
        // A thin chimney vanishes while the room below survives.
        let chimney = RectPolygon::new(
            [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (4.0, 10.0), (4.0, 14.0), (2.0, 14.0), (2.0, 10.0), (0.0, 10.0)].map(|(x, y)| Point::new(x, y)).to_vec(),
        )
        .unwrap();
        assert!(matches!(chimney.inward_offset(1.5), Err(Error::TopologyChange { .. })));
        let o = l_shape().inward_offset(1.0).unwrap();
        assert!((o.length - (l_shape().perimeter() - 8.0)).abs() < 1e-9);
    }

    #[test]
    fn neck_splits() {
        // Two 6x6 rooms joined by a corridor of width 2.
        let p = RectPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(6.0, 0.0),
            Point::new(6.0, 2.0),
            Point::new(10.0, 2.0),
            Point::new(10.0, 0.0),
            Point::new(16.0, 0.0),
            Point::new(16.0, 6.0),
            Point::new(10.0, 6.0),
            Point::new(10.0, 4.0),
            Point::new(6.0, 4.0),
            Point::new(6.0, 6.0),
            Point::new(0.0, 6.0),
        ])
        .unwrap();
        assert!(p.inward_offset(0.5).is_ok());
        assert!(matches!(p.inward_offset(1.5), Err(Error::TopologyChange { .. })));
    }
}
