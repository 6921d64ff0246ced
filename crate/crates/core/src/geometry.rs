//! Shared data model: lattice points, polyominoes, cost models and solutions.
//!
//! A pixel `(x, y)` is the closed unit square `[x, x+1] × [y, y+1]`; a
//! polyomino is the union of its pixels. Lattice points are the pixel corners.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for every floating-point comparison in the crate.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    pub fn l1(self, other: GridPoint) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    pub fn is_even(self) -> bool {
        (self.x + self.y).rem_euclid(2) == 0
    }

    /// The four lattice neighbours in a fixed order (east, north, west, south).
    pub fn neighbors(self) -> [GridPoint; 4] {
        [self.offset(1, 0), self.offset(0, 1), self.offset(-1, 0), self.offset(0, -1)]
    }

    pub fn to_point(self) -> Point {
        Point::new(self.x as f64, self.y as f64)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Pixels are addressed by their lower-left corner.
pub type Pixel = GridPoint;

pub type PixelSet = BTreeSet<Pixel>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist2(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn l1(self, other: Point) -> f64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    pub fn linf(self, other: Point) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn approx_eq(self, other: Point) -> bool {
        (self.x - other.x).abs() <= EPS && (self.y - other.y).abs() <= EPS
    }

    /// The lattice point this point coincides with, if any.
    pub fn as_grid(self) -> Option<GridPoint> {
        let gx = self.x.round();
        let gy = self.y.round();
        ((self.x - gx).abs() <= EPS && (self.y - gy).abs() <= EPS)
            .then(|| GridPoint::new(gx as i64, gy as i64))
    }
}

/// The four pixels incident to lattice point `g`, ordered
/// lower-left, lower-right, upper-left, upper-right.
pub fn cells_around(g: GridPoint) -> [Pixel; 4] {
    [g.offset(-1, -1), g.offset(0, -1), g.offset(-1, 0), g]
}

/// The four corners of a pixel.
pub fn pixel_corners(p: Pixel) -> [GridPoint; 4] {
    [p, p.offset(1, 0), p.offset(0, 1), p.offset(1, 1)]
}

/// Whether two pixels can be covered by one unit L∞ scan on a lattice point,
/// i.e. whether they share at least a corner.
pub fn share_corner(a: Pixel, b: Pixel) -> bool {
    a != b && (a.x - b.x).abs() <= 1 && (a.y - b.y).abs() <= 1
}

/// A unit lattice edge, stored with its endpoints in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnitEdge(pub GridPoint, pub GridPoint);

impl UnitEdge {
    pub fn new(a: GridPoint, b: GridPoint) -> Self {
        debug_assert_eq!(a.l1(b), 1, "unit edge endpoints must be lattice neighbours");
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }

    pub fn is_horizontal(self) -> bool {
        self.0.y == self.1.y
    }

    /// The two pixels sharing this edge.
    pub fn sides(self) -> [Pixel; 2] {
        let lo = self.0;
        if self.is_horizontal() {
            [lo.offset(0, -1), lo]
        } else {
            [lo.offset(-1, 0), lo]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyomino {
    pixels: PixelSet,
}

impl Polyomino {
    pub fn new<I: IntoIterator<Item = Pixel>>(pixels: I) -> Result<Self> {
        let pixels: PixelSet = pixels.into_iter().collect();
        if pixels.is_empty() {
            return Err(Error::EmptyPolyomino);
        }
        Ok(Self { pixels })
    }

    /// Axis-parallel `w × h` block with lower-left pixel `(x0, y0)`.
    pub fn rectangle(x0: i64, y0: i64, w: i64, h: i64) -> Result<Self> {
        Self::new((x0..x0 + w).flat_map(|x| (y0..y0 + h).map(move |y| GridPoint::new(x, y))))
    }

    pub fn from_set(pixels: PixelSet) -> Result<Self> {
        Self::new(pixels)
    }

    pub fn pixels(&self) -> &PixelSet {
        &self.pixels
    }

    /// N(P).
    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn contains(&self, p: Pixel) -> bool {
        self.pixels.contains(&p)
    }

    /// Inclusive pixel bounding box `(min, max)`.
    pub fn bbox(&self) -> (Pixel, Pixel) {
        let mut lo = *self.pixels.first().expect("non-empty");
        let mut hi = lo;
        for p in &self.pixels {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        Self { pixels: self.pixels.iter().map(|p| p.offset(dx, dy)).collect() }
    }

    /// Edge-connectivity (4-connectivity) of the pixels.
    pub fn is_connected(&self) -> bool {
        component_count(&self.pixels) == 1
    }

    /// Bounded components of the complement, with the complement taken
    /// 4-connected (a diagonal pinch of the closed region separates it).
    pub fn hole_count(&self) -> usize {
        let (lo, hi) = self.bbox();
        let mut outside = PixelSet::new();
        for x in lo.x - 1..=hi.x + 1 {
            for y in lo.y - 1..=hi.y + 1 {
                let p = GridPoint::new(x, y);
                if !self.contains(p) {
                    outside.insert(p);
                }
            }
        }
        component_count(&outside).saturating_sub(1)
    }

    pub fn has_holes(&self) -> bool {
        self.hole_count() > 0
    }

    /// Whether lattice point `g` belongs to the closed region.
    pub fn contains_lattice_point(&self, g: GridPoint) -> bool {
        cells_around(g).iter().any(|c| self.contains(*c))
    }

    /// All lattice points of the closed region (pixel corners), sorted.
    pub fn lattice_points(&self) -> BTreeSet<GridPoint> {
        self.pixels.iter().flat_map(|p| pixel_corners(*p)).collect()
    }

    pub fn is_boundary_point(&self, g: GridPoint) -> bool {
        let inside = cells_around(g).iter().filter(|c| self.contains(**c)).count();
        inside > 0 && inside < 4
    }

    pub fn is_interior_point(&self, g: GridPoint) -> bool {
        cells_around(g).iter().all(|c| self.contains(*c))
    }

    /// Pixels of the region inside the 2×2 window around `g`.
    pub fn footprint(&self, g: GridPoint) -> Vec<Pixel> {
        cells_around(g).into_iter().filter(|c| self.contains(*c)).collect()
    }

    /// A lattice edge lies in the closed region iff a pixel on either side does.
    pub fn contains_edge(&self, e: UnitEdge) -> bool {
        e.sides().iter().any(|c| self.contains(*c))
    }

    pub fn is_boundary_edge(&self, e: UnitEdge) -> bool {
        let [a, b] = e.sides();
        self.contains(a) != self.contains(b)
    }

    /// Unit edges with exactly one incident pixel in the region, sorted.
    pub fn boundary_edges(&self) -> Vec<UnitEdge> {
        let mut out = BTreeSet::new();
        for p in &self.pixels {
            let [c00, c10, c01, c11] = pixel_corners(*p);
            for e in [UnitEdge::new(c00, c10), UnitEdge::new(c01, c11), UnitEdge::new(c00, c01), UnitEdge::new(c10, c11)] {
                if self.is_boundary_edge(e) {
                    out.insert(e);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Perimeter length (outer boundary plus hole boundaries).
    pub fn perimeter(&self) -> i64 {
        self.boundary_edges().len() as i64
    }
}

fn component_count(cells: &PixelSet) -> usize {
    let mut seen = PixelSet::new();
    let mut count = 0;
    for &start in cells {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for q in p.neighbors() {
                if cells.contains(&q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMetric {
    Linf,
    L2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TourMetric {
    L1,
    L2,
}

/// Milling keeps tour, scan points and visibility inside the region;
/// lawn mowing lets all three leave it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Milling,
    Lawnmowing,
}

/// Objective `t(T) = c·|S(T)| + L(T)` together with the scan shape.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub c: f64,
    pub r: f64,
    pub scan_metric: ScanMetric,
    pub tour_metric: TourMetric,
}

impl CostModel {
    pub fn new(c: f64, r: f64, scan_metric: ScanMetric, tour_metric: TourMetric) -> Result<Self> {
        let model = Self { c, r, scan_metric, tour_metric };
        model.validate()?;
        Ok(model)
    }

    /// Unit L∞ scans with L1 travel, the rectilinear setting.
    pub fn rect(c: f64) -> Self {
        Self { c, r: 1.0, scan_metric: ScanMetric::Linf, tour_metric: TourMetric::L1 }
    }

    /// Unit circular scans with L1 travel, the grid-polygon circular setting.
    pub fn circ_unit(c: f64) -> Self {
        Self { c, r: 1.0, scan_metric: ScanMetric::L2, tour_metric: TourMetric::L1 }
    }

    /// Circular scans of radius `r` with Euclidean travel.
    pub fn circ(c: f64, r: f64) -> Self {
        Self { c, r, scan_metric: ScanMetric::L2, tour_metric: TourMetric::L2 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c >= 0.0) {
            return Err(Error::InvalidInput(format!("scan cost c must be finite and non-negative, got {}", self.c)));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::InvalidInput(format!("scan radius r must be positive, got {}", self.r)));
        }
        Ok(())
    }

    pub fn tour_distance(&self, a: Point, b: Point) -> f64 {
        match self.tour_metric {
            TourMetric::L1 => a.l1(b),
            TourMetric::L2 => a.dist(b),
        }
    }

    pub fn total_cost(&self, scan_count: usize, tour_length: f64) -> f64 {
        self.c * scan_count as f64 + tour_length
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub point: Point,
    /// Index of the tour vertex the scan is taken at.
    pub tour_index: usize,
}

/// A closed tour with the scans taken along it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Closed polyline, `tour[0] == tour[last]`. A single vertex denotes a
    /// tour of length zero.
    pub tour: Vec<Point>,
    pub scans: Vec<ScanPoint>,
    pub tour_length: f64,
    pub scan_count: usize,
    pub total_cost: f64,
}

impl Solution {
    /// Attaches each scan to the first tour vertex it coincides with and
    /// measures the tour under the model's tour metric.
    pub fn new(tour: Vec<Point>, scans: &[Point], model: &CostModel) -> Result<Self> {
        if tour.is_empty() {
            return Err(Error::InvalidInput("tour has no vertices".into()));
        }
        let closed = tour.len() == 1 || tour[0].approx_eq(*tour.last().unwrap());
        if !closed {
            return Err(Error::InvalidInput("tour is not closed".into()));
        }
        let scans = scans
            .iter()
            .map(|&s| {
                tour.iter()
                    .position(|v| v.approx_eq(s))
                    .map(|tour_index| ScanPoint { point: s, tour_index })
                    .ok_or(Error::ScanOffTour(s))
            })
            .collect::<Result<Vec<_>>>()?;
        // `+ 0.0` turns the empty sum's -0.0 into 0.0.
        let tour_length = tour.windows(2).map(|w| model.tour_distance(w[0], w[1])).sum::<f64>() + 0.0;
        let scan_count = scans.len();
        Ok(Self { total_cost: model.total_cost(scan_count, tour_length), tour, scans, tour_length, scan_count })
    }

    pub fn scan_points(&self) -> Vec<Point> {
        self.scans.iter().map(|s| s.point).collect()
    }

    /// Re-evaluates the objective, e.g. for a different scan cost.
    pub fn cost_with(&self, c: f64) -> f64 {
        c * self.scan_count as f64 + self.tour_length
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    #[test]
    fn empty_polyomino_is_rejected() {
        assert_eq!(Polyomino::new(Vec::new()), Err(Error::EmptyPolyomino));
    }

    #[test]
    fn connectivity_is_edge_based() {
        let diag = Polyomino::new([gp(0, 0), gp(1, 1)]).unwrap();
        assert!(!diag.is_connected());
        let domino = Polyomino::new([gp(0, 0), gp(1, 0)]).unwrap();
        assert!(domino.is_connected());
    }

    #[test]
    fn ring_has_one_hole() {
        let ring = Polyomino::new(Polyomino::rectangle(0, 0, 3, 3).unwrap().pixels().iter().copied().filter(|p| *p != gp(1, 1))).unwrap();
        assert_eq!(ring.hole_count(), 1);
        assert!(!Polyomino::rectangle(0, 0, 3, 3).unwrap().has_holes());
    }

    #[test]
    fn perimeter_of_rectangle() {
        assert_eq!(Polyomino::rectangle(0, 0, 4, 3).unwrap().perimeter(), 14);
        assert_eq!(Polyomino::rectangle(5, -2, 1, 1).unwrap().perimeter(), 4);
    }

    #[test]
    fn footprint_and_lattice_points() {
        let p = Polyomino::rectangle(0, 0, 2, 2).unwrap();
        assert_eq!(p.footprint(gp(1, 1)).len(), 4);
        assert_eq!(p.footprint(gp(0, 0)), vec![gp(0, 0)]);
        assert_eq!(p.lattice_points().len(), 9);
        assert!(p.is_interior_point(gp(1, 1)));
        assert!(p.is_boundary_point(gp(2, 1)));
    }

    #[test]
    fn solution_cost_identity() {
        let model = CostModel::rect(2.5);
        let tour = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 0.0)];
        let sol = Solution::new(tour, &[Point::new(1.0, 0.0)], &model).unwrap();
        assert_eq!(sol.tour_length, 4.0);
        assert_eq!(sol.total_cost, 2.5 + 4.0);
        assert_eq!(sol.scans[0].tour_index, 1);
    }

    #[test]
    fn scan_off_tour_is_an_error() {
        let model = CostModel::rect(1.0);
        let err = Solution::new(vec![Point::new(0.0, 0.0)], &[Point::new(1.0, 0.0)], &model).unwrap_err();
        assert!(matches!(err, Error::ScanOffTour(_)));
    }
}
