//! Tours for simple rectilinear polygons with circular scans of radius `r`.
//!
//! Two boundary tours run at inward depths `r/2` (TR1) and `3r/2` (TR2).
//! The interior beyond depth `2r` is swept by two families of horizontal
//! strips, `2r` apart and shifted by `r` against each other, each strip
//! extended sideways onto TR1. Strip ends on TR1 are paired up by the shorter
//! alternating half of TR1, which makes every degree even. Scans sit on every
//! carrier vertex and at most `√3·r` apart along each carrier, so that
//! neighbouring disks overlap in a band of width `r`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::coverage::CoverageCertificate;
use crate::error::{Error, Result};
use crate::euler::euler_circuit;
use crate::geometry::{CostModel, Point, ScanMetric, Solution, EPS};
use crate::rect_polygon::{OffsetLoop, RectPolygon};

/// Distance between consecutive scans along a carrier, in units of `r`.
pub const SCAN_SPACING: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTours {
    pub r: f64,
    pub tr1: OffsetLoop,
    /// Offset at depth `r`; `None` once it collapses.
    pub delta_b: Option<OffsetLoop>,
    /// Offset at depth `3r/2`; `None` once it collapses.
    pub tr2: Option<OffsetLoop>,
}

impl BoundaryTours {
    pub fn l_tr1(&self) -> f64 {
        self.tr1.length
    }

    pub fn l_tr2(&self) -> f64 {
        self.tr2.as_ref().map_or(0.0, |l| l.length)
    }

    pub fn l_delta_b(&self) -> f64 {
        self.delta_b.as_ref().map_or(0.0, |l| l.length)
    }

    /// `L_TR1 + L_TR2 - 2·L_δB`, defined while TR2 exists.
    pub fn identity_residual(&self) -> Option<f64> {
        self.tr2.as_ref().map(|_| self.l_tr1() + self.l_tr2() - 2.0 * self.l_delta_b())
    }
}

/// Offsets at `r/2`, `r` and `3r/2`. A collapse of the two inner ones is
/// tolerated; a collapse of TR1 or any change of topology is an error.
pub fn boundary_tours(region: &RectPolygon, r: f64) -> Result<BoundaryTours> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidInput(format!("scan radius must be positive, got {r}")));
    }
    let tr1 = region.inward_offset(r / 2.0)?;
    let inner = |d: f64| match region.inward_offset(d) {
        Ok(l) => Ok(Some(l)),
        Err(Error::OffsetCollapse { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let delta_b = inner(r)?;
    let tr2 = if delta_b.is_some() { inner(1.5 * r)? } else { None };
    Ok(BoundaryTours { r, tr1, delta_b, tr2 })
}

/// A horizontal strip clipped to the offset at depth `r`, with its
/// extension onto TR1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularStrip {
    pub y: f64,
    pub x_start: f64,
    pub x_end: f64,
    pub ext_start: f64,
    pub ext_end: f64,
}

impl CircularStrip {
    pub fn length(&self) -> f64 {
        self.x_end - self.x_start
    }

    pub fn extended_length(&self) -> f64 {
        self.ext_end - self.ext_start
    }

    pub fn endpoints(&self) -> (Point, Point) {
        (Point::new(self.ext_start, self.y), Point::new(self.ext_end, self.y))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ShiftedStrips {
    pub first: Vec<CircularStrip>,
    pub second: Vec<CircularStrip>,
}

impl ShiftedStrips {
    pub fn l_str1(&self) -> f64 {
        self.first.iter().map(|s| s.length()).sum()
    }

    pub fn l_str2(&self) -> f64 {
        self.second.iter().map(|s| s.length()).sum()
    }

    pub fn all(&self) -> impl Iterator<Item = &CircularStrip> {
        self.first.iter().chain(&self.second)
    }

    pub fn count(&self) -> usize {
        self.first.len() + self.second.len()
    }
}

/// Strip rows at `y0 + 2r + 2kr` and `y0 + 3r + 2kr`, where `y0` is the
/// polygon's lowest coordinate. A row piece inside the depth-`r` offset is
/// kept if its band of half-width `r/2` holds a point deeper than `2r`,
/// which the boundary tours leave uncovered.
pub fn shifted_strips(region: &RectPolygon, tours: &BoundaryTours) -> ShiftedStrips {
    let r = tours.r;
    let Some(b) = tours.delta_b.as_ref().and_then(|l| l.polygon()) else {
        return ShiftedStrips::default();
    };
    let (lo, hi) = region.bbox();
    let tr1 = tours.tr1.segments();
    let family = |phase: f64| {
        let mut out = Vec::new();
        let mut y = lo.y + phase;
        while y < hi.y {
            for (xs, xe) in b.horizontal_intervals(y) {
                if !band_reaches_depth(region, y, xs, xe, r, 2.0 * r) {
                    continue;
                }
                let ext_start = ray_to(&tr1, Point::new(xs, y), -1.0).unwrap_or(xs);
                let ext_end = ray_to(&tr1, Point::new(xe, y), 1.0).unwrap_or(xe);
                out.push(CircularStrip { y, x_start: xs, x_end: xe, ext_start, ext_end });
            }
            y += 2.0 * r;
        }
        out
    };
    ShiftedStrips { first: family(2.0 * r), second: family(3.0 * r) }
}

/// Whether the band of half-width `r/2` around the row piece holds a point
/// deeper than `depth`, i.e. one where an L∞ ball of that radius fits.
fn band_reaches_depth(region: &RectPolygon, y: f64, xs: f64, xe: f64, r: f64, depth: f64) -> bool {
    let h = depth + 1e-7;
    let (ylo, yhi) = (y - r / 2.0, y + r / 2.0);
    let mut cx = vec![xs, xe];
    let mut cy = vec![ylo, yhi];
    // Where the fitting set has a corner, the ball touches polygon edges.
    for v in region.vertices() {
        cx.extend([v.x + h, v.x - h]);
        cy.extend([v.y + h, v.y - h]);
    }
    cx.retain(|&x| x >= xs - EPS && x <= xe + EPS);
    cy.retain(|&y| y >= ylo - EPS && y <= yhi + EPS);
    cx.iter().any(|&x| cy.iter().any(|&y| region.square_fits_at(Point::new(x, y), h)))
}

/// First point of the given segments hit by the horizontal ray from `p`.
fn ray_to(segments: &[(Point, Point)], p: Point, dir: f64) -> Option<f64> {
    let mut best: Option<f64> = None;
    for &(a, b) in segments {
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
        if p.y < y0 - EPS || p.y > y1 + EPS {
            continue;
        }
        for x in [a.x, b.x] {
            let d = (x - p.x) * dir;
            if d >= -EPS && best.is_none_or(|bx| d < (bx - p.x) * dir) {
                best = Some(x);
            }
        }
    }
    best
}

/// Scan positions along open or closed polylines: every vertex, plus
/// `⌈ℓ/(√3·r)⌉ - 1` evenly spaced points inside each edge of length `ℓ`.
/// Points closer than 1e-9 to an earlier one are dropped.
pub fn place_circular_scans(carriers: &[Vec<Point>], r: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |p: Point, out: &mut Vec<Point>| {
        if seen.insert(key(p)) && !out.iter().rev().take(4).any(|q| q.approx_eq(p)) {
            out.push(p);
        }
    };
    for c in carriers {
        for (i, &v) in c.iter().enumerate() {
            push(v, &mut out);
            if let Some(&w) = c.get(i + 1) {
                let len = v.dist(w);
                let pieces = ((len / (SCAN_SPACING * r)) - 1e-9).ceil().max(1.0) as usize;
                for k in 1..pieces {
                    let t = k as f64 / pieces as f64;
                    push(Point::new(v.x + t * (w.x - v.x), v.y + t * (w.y - v.y)), &mut out);
                }
            }
        }
    }
    out
}

type Key = (i64, i64);

fn key(p: Point) -> Key {
    ((p.x * 1e7).round() as i64, (p.y * 1e7).round() as i64)
}

fn closed(l: &OffsetLoop) -> Vec<Point> {
    let mut v = l.vertices.clone();
    if v.len() > 1 {
        v.push(v[0]);
    }
    v
}

/// Point at arc length `s` along a closed loop with cumulative lengths `cum`.
fn loop_point(v: &[Point], cum: &[f64], s: f64) -> Point {
    let total = *cum.last().unwrap();
    let s = s.rem_euclid(total);
    let i = cum.partition_point(|&c| c <= s).saturating_sub(1).min(v.len() - 1);
    let (a, b) = (v[i], v[(i + 1) % v.len()]);
    let t = (s - cum[i]) / a.dist(b).max(f64::MIN_POSITIVE);
    Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

/// The shorter of the two alternating halves of TR1 between consecutive
/// strip ends, as polylines.
fn matching_arcs(tr1: &OffsetLoop, ends: &[Point]) -> Vec<Vec<Point>> {
    let v = &tr1.vertices;
    if ends.is_empty() || v.len() < 2 {
        return Vec::new();
    }
    let mut cum = vec![0.0];
    for i in 0..v.len() {
        cum.push(cum[i] + v[i].dist(v[(i + 1) % v.len()]));
    }
    let total = *cum.last().unwrap();
    let param = |q: Point| {
        (0..v.len())
            .filter_map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                let on = (a.x - b.x).abs() <= EPS && (q.x - a.x).abs() <= 1e-7 && q.y >= a.y.min(b.y) - 1e-7 && q.y <= a.y.max(b.y) + 1e-7
                    || (a.y - b.y).abs() <= EPS && (q.y - a.y).abs() <= 1e-7 && q.x >= a.x.min(b.x) - 1e-7 && q.x <= a.x.max(b.x) + 1e-7;
                on.then(|| cum[i] + a.dist(q))
            })
            .next()
            .unwrap_or(0.0)
    };
    let mut ts: Vec<f64> = ends.iter().map(|&q| param(q)).collect();
    ts.sort_by(f64::total_cmp);
    let m = ts.len();
    let halves: [Vec<(f64, f64)>; 2] = [0, 1].map(|h| (h..m).step_by(2).map(|i| if i + 1 < m { (ts[i], ts[i + 1]) } else { (ts[i], ts[0] + total) }).collect());
    let len = |arcs: &Vec<(f64, f64)>| arcs.iter().map(|(a, b)| b - a).sum::<f64>();
    let (l0, l1) = (len(&halves[0]), len(&halves[1]));
    let pick = if (l0 - l1).abs() > 1e-9 {
        usize::from(l1 < l0)
    } else {
        let smallest = (0..v.len()).min_by(|&i, &j| v[i].x.total_cmp(&v[j].x).then(v[i].y.total_cmp(&v[j].y))).unwrap();
        let s = cum[smallest];
        let inside = |(a, b): &(f64, f64)| (a..=b).contains(&&s) || (a..=b).contains(&&(s + total));
        usize::from(!halves[0].iter().any(inside))
    };
    halves[pick]
        .iter()
        .filter(|(a, b)| b - a > EPS)
        .map(|&(a, b)| {
            let mut arc = vec![loop_point(v, &cum, a)];
            for (i, &c) in cum.iter().enumerate().take(v.len()) {
                for shift in [0.0, total] {
                    if c + shift > a + EPS && c + shift < b - EPS {
                        arc.push(v[i]);
                    }
                }
            }
            arc.push(loop_point(v, &cum, b));
            arc
        })
        .collect()
}

/// Scan-count bounds charged against strip and boundary length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargingCheck {
    pub strip_scans: usize,
    /// `2·L_str/(√3·r) + #strips`.
    pub strip_bound: f64,
    pub boundary_scans: usize,
    /// `2·L_δB/a + 1 + L_δB/r`, checked only when `L_δB ≥ 1`.
    pub boundary_bound: Option<f64>,
}

impl ChargingCheck {
    pub fn holds(&self) -> bool {
        self.strip_scans as f64 <= self.strip_bound + 1e-9 && self.boundary_bound.is_none_or(|b| self.boundary_scans as f64 <= b + 1e-9)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularGeneralSolution {
    pub solution: Solution,
    pub tours: BoundaryTours,
    pub strips: ShiftedStrips,
    pub matching: Vec<Vec<Point>>,
    /// Segment from TR2 down to TR1, walked twice; present only when no strip
    /// already joins them.
    pub connector: Option<(Point, Point)>,
    pub feature_size: f64,
    pub charging: ChargingCheck,
}

impl CircularGeneralSolution {
    pub fn l_matching(&self) -> f64 {
        self.matching.iter().map(|a| polyline_length(a)).sum()
    }

    pub fn l_connector(&self) -> f64 {
        self.connector.map_or(0.0, |(a, b)| 2.0 * a.dist(b))
    }

    pub fn l_strips_extended(&self) -> f64 {
        self.strips.all().map(|s| s.extended_length()).sum()
    }

    /// Sum of the construction's parts; equals the tour length.
    pub fn parts_length(&self) -> f64 {
        self.tours.l_tr1() + self.tours.l_tr2() + self.l_strips_extended() + self.l_matching() + self.l_connector()
    }

    /// `max(L_δB, L¹_str, L²_str)`, each a lower bound on an optimal tour.
    pub fn lower_bound(&self) -> f64 {
        self.tours.l_delta_b().max(self.strips.l_str1()).max(self.strips.l_str2())
    }
}

fn polyline_length(p: &[Point]) -> f64 {
    p.windows(2).map(|w| w[0].dist(w[1])).sum()
}

fn on_segments(p: Point, segs: &[(Point, Point)]) -> bool {
    segs.iter().any(|&(a, b)| {
        p.x >= a.x.min(b.x) - EPS && p.x <= a.x.max(b.x) + EPS && p.y >= a.y.min(b.y) - EPS && p.y <= a.y.max(b.y) + EPS
    })
}

/// Builds the combined tour and its scans.
pub fn circular_general_solve(region: &RectPolygon, model: &CostModel) -> Result<CircularGeneralSolution> {
    model.validate()?;
    if model.scan_metric != ScanMetric::L2 {
        return Err(Error::InvalidInput("polygon tours need circular (L2) scans".into()));
    }
    let r = model.r;
    let tours = boundary_tours(region, r)?;
    let strips = shifted_strips(region, &tours);
    let ends: Vec<Point> = strips.all().flat_map(|s| <[Point; 2]>::from(s.endpoints())).collect();
    let matching = matching_arcs(&tours.tr1, &ends);

    let tr1_segs = tours.tr1.segments();
    let tr2_segs = tours.tr2.as_ref().map(|l| l.segments()).unwrap_or_default();
    let mut segments: Vec<(Point, Point)> = tr1_segs.clone();
    segments.extend(&tr2_segs);
    segments.extend(strips.all().map(|s| s.endpoints()));
    for arc in &matching {
        segments.extend(arc.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| !a.approx_eq(*b)));
    }

    let mut carriers = vec![closed(&tours.tr1)];
    if let Some(l) = &tours.tr2 {
        carriers.push(closed(l));
    }
    carriers.extend(strips.all().map(|s| {
        let (a, b) = s.endpoints();
        vec![a, b]
    }));
    let scans = place_circular_scans(&carriers, r);

    let mut connector = None;
    if let Some(tr2) = &tours.tr2 {
        let crossed = strips.all().any(|s| {
            let (a, b) = s.endpoints();
            tr2.vertices.iter().any(|v| (v.y - s.y).abs() <= EPS && v.x >= a.x - EPS && v.x <= b.x + EPS)
                || tr2_segs.iter().any(|&(p, q)| {
                    (p.x - q.x).abs() <= EPS && p.x >= a.x - EPS && p.x <= b.x + EPS && s.y >= p.y.min(q.y) - EPS && s.y <= p.y.max(q.y) + EPS
                })
        });
        if !crossed {
            let top = *tr2.vertices.iter().min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))).unwrap();
            let below = tr1_segs
                .iter()
                .filter(|(a, b)| top.x >= a.x.min(b.x) - EPS && top.x <= a.x.max(b.x) + EPS && a.y.min(b.y) <= top.y + EPS)
                .map(|(a, b)| a.y.max(b.y).min(top.y))
                .fold(f64::NEG_INFINITY, f64::max);
            let foot = Point::new(top.x, below);
            if below.is_finite() && !foot.approx_eq(top) {
                connector = Some((top, foot));
                segments.push((top, foot));
                segments.push((top, foot));
            }
        }
    }

    let mut reps: BTreeMap<Key, Point> = BTreeMap::new();
    let add = |p: Point, reps: &mut BTreeMap<Key, Point>| {
        reps.entry(key(p)).or_insert(p);
    };
    for &(a, b) in &segments {
        add(a, &mut reps);
        add(b, &mut reps);
    }
    for &s in &scans {
        add(s, &mut reps);
    }
    for (i, &(a, b)) in segments.iter().enumerate() {
        for &(c, d) in &segments[i + 1..] {
            if let Some(x) = crossing(a, b, c, d) {
                add(x, &mut reps);
            }
        }
    }
    let nodes: Vec<Point> = reps.values().copied().collect();
    let mut edges: Vec<(Key, Key)> = Vec::new();
    for &(a, b) in &segments {
        let len = a.dist(b);
        let mut on: Vec<(f64, Point)> = nodes
            .iter()
            .filter(|&&n| on_segments(n, &[(a, b)]))
            .map(|&n| (a.dist(n) / len, n))
            .collect();
        on.sort_by(|x, y| x.0.total_cmp(&y.0));
        on.dedup_by_key(|x| key(x.1));
        edges.extend(on.windows(2).map(|w| (key(w[0].1), key(w[1].1))).filter(|(p, q)| p != q));
    }

    let start = *tours.tr1.vertices.iter().min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))).unwrap();
    let walk = euler_circuit(&edges, Some(key(start)))?;
    let keep: BTreeSet<Key> = scans.iter().map(|&s| key(s)).collect();
    let pts: Vec<Point> = walk.iter().map(|k| reps[k]).collect();
    let tour = compress(&pts, &walk, &keep);
    let solution = Solution::new(tour, &scans, model)?;

    let boundary_segs: Vec<(Point, Point)> = tr1_segs.iter().chain(&tr2_segs).copied().collect();
    let mut boundary_pts: Vec<Point> = tours.tr1.vertices.clone();
    boundary_pts.extend(tours.tr2.iter().flat_map(|l| l.vertices.iter().copied()));
    let boundary_scans = scans.iter().filter(|&&s| on_segments(s, &boundary_segs) || boundary_pts.iter().any(|v| v.approx_eq(s))).count();
    let a = region.feature_size();
    let l_db = tours.l_delta_b();
    let l_str = strips.l_str1().max(strips.l_str2());
    let charging = ChargingCheck {
        strip_scans: scans.len() - boundary_scans,
        strip_bound: 2.0 * l_str / (SCAN_SPACING * r) + strips.count() as f64,
        boundary_scans,
        boundary_bound: (l_db >= 1.0).then(|| 2.0 * l_db / a + 1.0 + l_db / r),
    };
    Ok(CircularGeneralSolution { solution, tours, strips, matching, connector, feature_size: a, charging })
}

/// Intersection of two axis-parallel segments when they are perpendicular.
fn crossing(a: Point, b: Point, c: Point, d: Point) -> Option<Point> {
    let vertical = |p: Point, q: Point| (p.x - q.x).abs() <= EPS && (p.y - q.y).abs() > EPS;
    let horizontal = |p: Point, q: Point| (p.y - q.y).abs() <= EPS && (p.x - q.x).abs() > EPS;
    let (v, h) = if vertical(a, b) && horizontal(c, d) {
        ((a, b), (c, d))
    } else if horizontal(a, b) && vertical(c, d) {
        ((c, d), (a, b))
    } else {
        return None;
    };
    let x = Point::new(v.0.x, h.0.y);
    (on_segments(x, &[v]) && on_segments(x, &[h])).then_some(x)
}

fn compress(pts: &[Point], keys: &[Key], keep: &BTreeSet<Key>) -> Vec<Point> {
    let mut out = vec![pts[0]];
    for i in 1..pts.len().saturating_sub(1) {
        let (a, b, c) = (pts[i - 1], pts[i], pts[i + 1]);
        let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        let forward = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) > 0.0;
        if cross.abs() > EPS || !forward || keep.contains(&keys[i]) {
            out.push(b);
        }
    }
    if pts.len() > 1 {
        out.push(*pts.last().unwrap());
    }
    out
}

/// Whether every tour segment stays inside the polygon.
pub fn tour_inside(region: &RectPolygon, tour: &[Point]) -> bool {
    tour.iter().all(|&p| region.contains(p)) && tour.windows(2).all(|w| region.contains_segment(w[0], w[1]))
}

/// Checks coverage on a sample grid of spacing `step`: a sample is covered
/// when some scan lies within `r` and sees it inside the polygon. Returns
/// the first uncovered sample in row-major order.
pub fn sample_coverage(region: &RectPolygon, scans: &[Point], r: f64, step: f64) -> CoverageCertificate {
    let mut buckets: HashMap<(i64, i64), Vec<Point>> = HashMap::new();
    let cell = |p: Point| ((p.x / r).floor() as i64, (p.y / r).floor() as i64);
    for &s in scans {
        buckets.entry(cell(s)).or_default().push(s);
    }
    let (lo, hi) = region.bbox();
    let ny = ((hi.y - lo.y) / step).floor() as i64;
    let r2 = (r + EPS) * (r + EPS);
    for j in 0..=ny {
        let y = lo.y + j as f64 * step;
        for (xs, xe) in region.horizontal_intervals(y) {
            let i0 = ((xs - lo.x) / step - 1e-9).ceil() as i64;
            let i1 = ((xe - lo.x) / step + 1e-9).floor() as i64;
            for i in i0..=i1 {
                let q = Point::new(lo.x + i as f64 * step, y);
                let (cx, cy) = cell(q);
                let seen = (cx - 1..=cx + 1).flat_map(|x| (cy - 1..=cy + 1).map(move |y| (x, y))).filter_map(|c| buckets.get(&c)).flatten().any(|&s| {
                    s.dist2(q) <= r2
                        && (region.contains_rect(s.x.min(q.x), s.y.min(q.y), s.x.max(q.x), s.y.max(q.y)) || region.contains_segment(s, q))
                });
                if !seen {
                    return CoverageCertificate { covered: false, witness: Some(q) };
                }
            }
        }
    }
    CoverageCertificate { covered: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(side: f64) -> RectPolygon {
        RectPolygon::rectangle(0.0, 0.0, side, side).unwrap()
    }

    #[test]
    fn square_tours() {
        let t = boundary_tours(&sq(10.0), 2.0).unwrap();
        assert!((t.l_tr1() - 32.0).abs() < 1e-9);
        assert!((t.l_delta_b() - 24.0).abs() < 1e-9);
        assert!((t.l_tr2() - 16.0).abs() < 1e-9);
        assert!(t.identity_residual().unwrap().abs() < 1e-9);
        let small = boundary_tours(&sq(4.0), 2.0).unwrap();
        assert!((small.l_tr1() - 8.0).abs() < 1e-9);
        assert!(small.delta_b.as_ref().unwrap().degenerate);
        assert!(small.tr2.is_none());
        assert!(matches!(boundary_tours(&sq(4.0), 9.0), Err(Error::OffsetCollapse { .. })));
    }

    #[test]
    fn spacing() {
        let r = 1.0;
        let a = Point::new(0.0, 0.0);
        let seg = |l: f64| place_circular_scans(&[vec![a, Point::new(l, 0.0)]], r).len();
        assert_eq!(seg(SCAN_SPACING), 2);
        assert_eq!(seg(2.5 * SCAN_SPACING), 4);
        let s = 5.0;
        let square = vec![a, Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s), a];
        let per_side = (s / SCAN_SPACING).ceil() as usize - 1;
        assert_eq!(place_circular_scans(&[square], r).len(), 4 + 4 * per_side);
    }

    #[test]
    fn strips_of_square() {
        let p = sq(10.0);
        let t = boundary_tours(&p, 2.0).unwrap();
        let s = shifted_strips(&p, &t);
        // The centre, at depth 5 > 2r, lies in the band of both rows.
        let rows: Vec<_> = s.all().map(|st| (st.y, st.x_start, st.x_end, st.ext_start, st.ext_end)).collect();
        assert_eq!(rows, vec![(4.0, 2.0, 8.0, 1.0, 9.0), (6.0, 2.0, 8.0, 1.0, 9.0)]);
        // A polygon thinner than 2r everywhere has no strips.
        let thin = RectPolygon::rectangle(0.0, 0.0, 20.0, 3.0).unwrap();
        let tt = boundary_tours(&thin, 1.0).unwrap();
        assert_eq!(shifted_strips(&thin, &tt).count(), 0);
    }

    #[test]
    fn square_solution() {
        let p = sq(10.0);
        let model = CostModel::circ(0.0, 2.0);
        let s = circular_general_solve(&p, &model).unwrap();
        assert!((s.parts_length() - s.solution.tour_length).abs() < 1e-9);
        assert!(tour_inside(&p, &s.solution.tour));
        // With r < a the boundary scan charge is not claimed, and indeed fails.
        assert!(s.charging.strip_scans as f64 <= s.charging.strip_bound);
        assert!(!s.charging.holds());
        let cert = sample_coverage(&p, &s.solution.scan_points(), 2.0, 2.0 / 64.0);
        assert!(cert.covered, "{cert:?}");
    }

    #[test]
    fn tiny_square_is_one_loop() {
        let p = sq(2.0);
        let s = circular_general_solve(&p, &CostModel::circ(1.0, 1.0)).unwrap();
        assert!(s.tours.delta_b.as_ref().unwrap().degenerate);
        assert!((s.solution.tour_length - 4.0).abs() < 1e-9);
        assert!(sample_coverage(&p, &s.solution.scan_points(), 1.0, 1.0 / 64.0).covered);
    }

    #[test]
    fn sampler_finds_gaps() {
        let p = sq(4.0);
        let cert = sample_coverage(&p, &[Point::new(1.0, 1.0)], 1.0, 1.0 / 16.0);
        assert!(!cert.covered);
        assert!(cert.witness.is_some());
    }
}
