//! Milling tours for polyominoes with unit L∞ scans: the boundary/strip/
//! matching skeleton, extended so that it passes through every scan of the
//! four-phase scan cover.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coverage::{point_in_polyomino, segment_in_polyomino};
use crate::error::{Error, Result};
use crate::euler::euler_circuit;
use crate::geometry::{CostModel, GridPoint, Mode, Point, Polyomino, ScanMetric, Solution, UnitEdge};
use crate::milling::{connect_within_offset, edge_components, milling_decomposition, spanning_connectors, MillingDecomposition, OffsetComplex};
use crate::scan_cover::{even_quadruples, scan_cover, scan_cover_with, ScanCoverTrace};

/// Strip rows used by the tours here: even `y`, in absolute coordinates.
pub const STRIP_PHASE: i64 = 0;

/// The pure milling tour: boundary loops, strips for whatever the loops do
/// not sweep, and the shorter matching arcs, walked as one Euler circuit
/// from its smallest vertex. The returned solution has no scans.
pub fn afm_tour(region: &Polyomino) -> Result<(Solution, MillingDecomposition)> {
    if !region.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = OffsetComplex::new(region, 1)?;
    if b.is_empty() {
        return Err(Error::EmptyOffset);
    }
    if !b.is_connected() {
        return Err(Error::OffsetDisconnected);
    }
    let (mut d, unswept) = milling_decomposition(region, STRIP_PHASE, &BTreeSet::new())?;
    if let Some(p) = unswept.first() {
        return Err(Error::NarrowCorridor(*p));
    }
    connect_within_offset(&mut d)?;
    let edges = d.edges();
    let start = d.loops.iter().flat_map(|l| l.vertices.iter()).min().copied();
    let walk = euler_circuit(&edges, edges.iter().map(|e| e.0.min(e.1)).min().or(start))?;
    let tour = compress(&walk, &BTreeSet::new());
    let solution = Solution::new(tour, &[], &CostModel::rect(0.0))?;
    Ok((solution, d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectSolution {
    pub solution: Solution,
    pub trace: ScanCoverTrace,
    /// Skeleton plus the connectors that bring scans and separate pieces
    /// onto the tour; `L(T) = l_delta_b + l_str + l_m + l_conn`.
    pub decomposition: MillingDecomposition,
    /// Scans moved onto the tour by swapping a corner of the skeleton.
    pub reroutes: Vec<GridPoint>,
}

/// Scan cover plus a tour through all its scans.
///
/// The skeleton is the milling decomposition with strips on even rows, so
/// every even 2×2 centre lies on a loop or a strip. Double and single scans
/// pick a centre on the skeleton when one of their candidate corners is on
/// it. A scan `g` one diagonal step off the skeleton at a corner `a → u → b`
/// replaces that corner by `a → g → b` (same length). Anything still off the
/// tour, and any pieces the skeleton leaves apart, are joined by a minimum
/// spanning tree of shortest lattice paths, each traversed twice.
pub fn mwpdv_rect_solve(region: &Polyomino, model: &CostModel, mode: Mode) -> Result<RectSolution> {
    if model.scan_metric != ScanMetric::Linf || (model.r - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("the rectilinear solver needs unit L∞ scans".into()));
    }
    model.validate()?;
    if mode == Mode::Milling && !region.is_connected() {
        return Err(Error::Disconnected);
    }
    let s4e: BTreeSet<GridPoint> = even_quadruples(region).into_iter().collect();
    let (mut d, _) = milling_decomposition(region, STRIP_PHASE, &s4e)?;
    let mut edges = d.edges();
    let point_loops: BTreeSet<GridPoint> = d.loops.iter().filter(|l| l.vertices.len() == 1).map(|l| l.vertices[0]).collect();

    let on_graph: BTreeSet<GridPoint> = edges.iter().flat_map(|e| [e.0, e.1]).chain(point_loops.iter().copied()).collect();
    let step_ok = |a: GridPoint, b: GridPoint| mode == Mode::Lawnmowing || region.contains_edge(UnitEdge::new(a, b));
    // Flexible scans gravitate towards the skeleton and towards the fixed
    // block and triple centres, which the tour has to reach anyway.
    let fixed = scan_cover(region);
    let sources: BTreeSet<GridPoint> = on_graph.iter().chain(&fixed.s4e).chain(&fixed.s4o).chain(&fixed.s3).copied().collect();
    let dist = multi_source_distances(region, &sources, mode);
    let edge_count = edge_multiset(&edges);
    let rank = |g: GridPoint| -> (u8, i64) {
        if on_graph.contains(&g) {
            (0, 0)
        } else if reroute_corner(&edge_count, g, &step_ok).is_some() {
            (1, 0)
        } else {
            (2, dist.get(&g).copied().unwrap_or(i64::MAX))
        }
    };
    let trace = scan_cover_with(region, rank);
    let scans = trace.scans();
    let scan_set: BTreeSet<GridPoint> = scans.iter().copied().collect();

    let mut reroutes = Vec::new();
    for &g in &scan_set {
        let current: BTreeSet<GridPoint> = edges.iter().flat_map(|e| [e.0, e.1]).chain(point_loops.iter().copied()).collect();
        if current.contains(&g) {
            continue;
        }
        let counts = edge_multiset(&edges);
        let Some((a, u, b)) = reroute_corner(&counts, g, &step_ok) else {
            continue;
        };
        if scan_set.contains(&u) || point_loops.contains(&u) {
            continue;
        }
        let mut candidate = edges.clone();
        remove_edge(&mut candidate, a, u);
        remove_edge(&mut candidate, u, b);
        candidate.push((a, g));
        candidate.push((g, b));
        if edge_components(&candidate).len() == edge_components(&edges).len() {
            edges = candidate;
            reroutes.push(g);
        }
    }

    let mut required: BTreeSet<GridPoint> = scan_set.clone();
    required.extend(point_loops.iter().copied());
    let connectors = spanning_connectors(&edges, &required, step_ok, i64::MAX)?;
    for path in &connectors {
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
            edges.push((w[0], w[1]));
        }
    }
    d.l_conn = connectors.iter().map(|p| 2 * (p.len() as i64 - 1)).sum();
    d.connectors = connectors;

    let start = edges.iter().map(|e| e.0.min(e.1)).min().or_else(|| required.first().copied());
    let walk = euler_circuit(&edges, start)?;
    let tour = compress(&walk, &scan_set);
    let scan_points: Vec<Point> = scans.iter().map(|g| g.to_point()).collect();
    let solution = Solution::new(tour, &scan_points, model)?;
    Ok(RectSolution { solution, trace, decomposition: d, reroutes })
}

fn edge_key(a: GridPoint, b: GridPoint) -> (GridPoint, GridPoint) {
    (a.min(b), a.max(b))
}

fn edge_multiset(edges: &[(GridPoint, GridPoint)]) -> BTreeMap<(GridPoint, GridPoint), usize> {
    let mut out = BTreeMap::new();
    for &(a, b) in edges {
        *out.entry(edge_key(a, b)).or_insert(0) += 1;
    }
    out
}

fn remove_edge(edges: &mut Vec<(GridPoint, GridPoint)>, a: GridPoint, b: GridPoint) {
    let key = edge_key(a, b);
    if let Some(i) = edges.iter().position(|&(x, y)| edge_key(x, y) == key) {
        edges.remove(i);
    }
}

/// A skeleton corner `a → u → b` around `g`: `u` is diagonal to `g` and `a`,
/// `b` are the two lattice points adjacent to both. The first such corner in
/// the order of `g`'s diagonal neighbours is returned.
fn reroute_corner(
    counts: &BTreeMap<(GridPoint, GridPoint), usize>,
    g: GridPoint,
    step_ok: &impl Fn(GridPoint, GridPoint) -> bool,
) -> Option<(GridPoint, GridPoint, GridPoint)> {
    for (dx, dy) in [(-1, -1), (1, -1), (-1, 1), (1, 1)] {
        let u = g.offset(dx, dy);
        let a = GridPoint::new(u.x, g.y);
        let b = GridPoint::new(g.x, u.y);
        let has = |p: GridPoint, q: GridPoint| counts.get(&edge_key(p, q)).copied().unwrap_or(0) > 0;
        if has(a, u) && has(u, b) && step_ok(a, g) && step_ok(g, b) {
            return Some((a, u, b));
        }
    }
    None
}

/// Lattice distance from `sources` to every lattice point of the region (in
/// milling mode along edges inside it, otherwise L1).
fn multi_source_distances(region: &Polyomino, sources: &BTreeSet<GridPoint>, mode: Mode) -> HashMap<GridPoint, i64> {
    let points = region.lattice_points();
    let mut dist: HashMap<GridPoint, i64> = HashMap::new();
    if sources.is_empty() {
        return dist;
    }
    match mode {
        Mode::Milling => {
            let mut queue: VecDeque<GridPoint> = sources.iter().copied().collect();
            for s in sources {
                dist.insert(*s, 0);
            }
            while let Some(g) = queue.pop_front() {
                let dg = dist[&g];
                for n in g.neighbors() {
                    if !dist.contains_key(&n) && region.contains_edge(UnitEdge::new(g, n)) {
                        dist.insert(n, dg + 1);
                        queue.push_back(n);
                    }
                }
            }
        }
        Mode::Lawnmowing => {
            for g in points {
                dist.insert(g, sources.iter().map(|s| s.l1(g)).min().unwrap());
            }
        }
    }
    dist
}

/// Drops walk vertices in the middle of straight runs unless they are scans.
fn compress(walk: &[GridPoint], keep: &BTreeSet<GridPoint>) -> Vec<Point> {
    if walk.len() <= 2 {
        return walk.iter().map(|g| g.to_point()).collect();
    }
    let mut out = vec![walk[0]];
    for i in 1..walk.len() - 1 {
        let (a, b, c) = (walk[i - 1], walk[i], walk[i + 1]);
        let straight = (b.x - a.x, b.y - a.y) == (c.x - b.x, c.y - b.y);
        if !straight || keep.contains(&b) {
            out.push(b);
        }
    }
    out.push(*walk.last().unwrap());
    out.iter().map(|g| g.to_point()).collect()
}

/// Tour segments and scan points all lie in the closed region.
pub fn milling_containment(region: &Polyomino, solution: &Solution) -> bool {
    solution.tour.windows(2).all(|w| segment_in_polyomino(region, w[0], w[1]))
        && solution.tour.iter().all(|p| point_in_polyomino(region, *p))
        && solution.scans.iter().all(|s| point_in_polyomino(region, s.point))
}

/// Every lattice point the tour passes is a feasible centre of the 2×2
/// cutter, so the cutter stays inside the region along the whole tour.
pub fn cutter_containment(region: &Polyomino, tour: &[Point]) -> bool {
    let Ok(b) = OffsetComplex::new(region, 1) else {
        return false;
    };
    lattice_walk(tour).map(|pts| pts.iter().all(|g| b.contains(*g))).unwrap_or(false)
}

/// Pixels swept by the 2×2 cutter moving along the tour.
pub fn swept_by_cutter(tour: &[Point]) -> Option<BTreeSet<GridPoint>> {
    let pts = lattice_walk(tour)?;
    Some(pts.iter().flat_map(|g| crate::geometry::cells_around(*g)).collect())
}

/// Every lattice point visited by an axis-parallel lattice polyline.
pub fn lattice_walk(tour: &[Point]) -> Option<Vec<GridPoint>> {
    let pts: Vec<GridPoint> = tour.iter().map(|p| p.as_grid()).collect::<Option<_>>()?;
    let mut out = vec![*pts.first()?];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.x != b.x && a.y != b.y {
            return None;
        }
        let steps = a.l1(b);
        let (dx, dy) = ((b.x - a.x).signum(), (b.y - a.y).signum());
        for i in 1..=steps {
            out.push(a.offset(dx * i, dy * i));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::coverage_check;

    fn rect(w: i64, h: i64) -> Polyomino {
        Polyomino::rectangle(0, 0, w, h).unwrap()
    }

    #[test]
    fn afm_examples() {
        let (sol, d) = afm_tour(&rect(2, 2)).unwrap();
        assert_eq!(sol.tour, vec![Point::new(1.0, 1.0)]);
        assert_eq!(d.l_delta_b, 0);

        let (sol, d) = afm_tour(&rect(4, 4)).unwrap();
        assert_eq!(sol.tour_length, 8.0);
        assert!(d.strips.is_empty());

        let (sol, d) = afm_tour(&rect(6, 6)).unwrap();
        assert_eq!(d.l_delta_b, 16);
        assert_eq!(sol.tour_length, (d.l_delta_b + d.l_str + d.l_m) as f64);
        assert!(2 * d.l_m <= d.l_str);
        assert!(cutter_containment(&rect(6, 6), &sol.tour));
        assert_eq!(swept_by_cutter(&sol.tour).unwrap(), *rect(6, 6).pixels());
    }

    #[test]
    fn afm_errors() {
        assert_eq!(afm_tour(&rect(1, 3)).unwrap_err(), Error::EmptyOffset);
        let dumbbell = Polyomino::new(rect(2, 2).pixels().iter().copied().chain(rect(2, 2).translate(3, 0).pixels().iter().copied()).chain([GridPoint::new(2, 0)])).unwrap();
        assert_eq!(afm_tour(&dumbbell).unwrap_err(), Error::OffsetDisconnected);
        let tail = Polyomino::new(rect(2, 2).pixels().iter().copied().chain([GridPoint::new(2, 0)])).unwrap();
        assert_eq!(afm_tour(&tail).unwrap_err(), Error::NarrowCorridor(GridPoint::new(2, 0)));
    }

    #[test]
    fn solve_examples() {
        let sol = mwpdv_rect_solve(&rect(2, 2), &CostModel::rect(1.0), Mode::Milling).unwrap();
        assert_eq!(sol.solution.total_cost, 1.0);

        let four = rect(4, 4);
        let sol = mwpdv_rect_solve(&four, &CostModel::rect(1.0), Mode::Milling).unwrap();
        assert_eq!(sol.solution.scan_count, 5);
        let d = &sol.decomposition;
        assert_eq!(sol.solution.tour_length, (d.l_delta_b + d.l_str + d.l_m + d.l_conn) as f64);
        assert!(coverage_check(&four, &sol.solution.scan_points(), &CostModel::rect(1.0), Mode::Milling).covered);
        assert!(milling_containment(&four, &sol.solution));
    }

    #[test]
    fn solve_handles_corridors() {
        for region in [rect(1, 5), rect(3, 1), Polyomino::new([GridPoint::new(0, 0), GridPoint::new(1, 0), GridPoint::new(1, 1)]).unwrap()] {
            let sol = mwpdv_rect_solve(&region, &CostModel::rect(1.0), Mode::Milling).unwrap();
            assert!(coverage_check(&region, &sol.solution.scan_points(), &CostModel::rect(1.0), Mode::Milling).covered);
            assert!(milling_containment(&region, &sol.solution));
        }
    }
}
