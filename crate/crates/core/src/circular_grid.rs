//! Tours for polyominoes with unit circular scans and L1 travel.
//!
//! Scans sit on every lattice point of the region with `x + y` even (a
//! diagonal grid of spacing √2). The tour walks the region boundary once,
//! sweeps the interior lattice rows as strips linked in pairs to the left
//! boundary, and reaches scans on unpaired rows by out-and-back steps.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::euler_circuit;
use crate::geometry::{CostModel, GridPoint, Point, Polyomino, ScanMetric, Solution, TourMetric, UnitEdge};
use crate::milling::{boundary_loops, spanning_connectors, strip_decomposition, strips_length, OffsetComplex, Strip};
use crate::oracle::lattice_path;

/// Lattice points of the region with even coordinate sum, sorted.
pub fn diagonal_scan_points(region: &Polyomino) -> Vec<GridPoint> {
    region.lattice_points().into_iter().filter(|g| g.is_even()).collect()
}

/// `⌈(2√3/9) · N / r²⌉`, the disk-covering density lower bound on the number
/// of radius-`r` scans needed for `N` unit pixels.
pub fn kershner_lower_bound(n_pixels: usize, r: f64) -> usize {
    let v = 2.0 * 3f64.sqrt() / 9.0 * n_pixels as f64 / (r * r);
    // Guard against 6.999999… style rounding from below.
    (v - 1e-12).ceil().max(0.0) as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularGridTour {
    pub solution: Solution,
    /// Interior lattice rows (maximal runs of interior points on each row).
    pub runs: Vec<Strip>,
    /// Runs linked as pairs: upper run first.
    pub pairs: Vec<(Strip, Strip)>,
    /// Runs left without a partner.
    pub leftovers: Vec<Strip>,
    /// Out-and-back steps `(tour vertex, scan)`.
    pub excursions: Vec<(GridPoint, GridPoint)>,
    /// Shortest paths traversed twice to reach whatever is still apart.
    pub connectors: Vec<Vec<GridPoint>>,
}

/// The boundary circuit plus paired strips; see the module docs.
///
/// Runs sharing their left end column form chains when the boundary between
/// consecutive rows is a vertical edge of the region with the region on its
/// right. Chains are paired from the top: each pair is the upper strip from
/// its left boundary point to its right end, a shortest path to the lower
/// strip's right end, the lower strip back to the boundary, and the boundary
/// edge between them once more. A chain's last unpaired run reaches its
/// scans by length-2 excursions from a neighbouring tour vertex, and so do
/// both runs of a pair whenever those excursions are shorter than the link.
pub fn circular_grid_tour(region: &Polyomino, model: &CostModel) -> Result<CircularGridTour> {
    if model.scan_metric != ScanMetric::L2 || model.tour_metric != TourMetric::L1 || (model.r - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("the diagonal-grid tour needs unit L2 scans with L1 travel".into()));
    }
    model.validate()?;
    if !region.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<(GridPoint, GridPoint)> = region.boundary_edges().into_iter().map(|e| (e.0, e.1)).collect();

    let interior = OffsetComplex::new(region, 1)?;
    let runs = strip_decomposition(interior.vertices(), 1, 0)?;
    let mut by_start: BTreeMap<i64, Vec<Strip>> = BTreeMap::new();
    for r in &runs {
        by_start.entry(r.x_start).or_default().push(*r);
    }
    let mut pairs = Vec::new();
    let mut leftovers = Vec::new();
    for (xs, mut column) in by_start {
        column.sort_by_key(|r| std::cmp::Reverse(r.y));
        let mut chains: Vec<Vec<Strip>> = Vec::new();
        for r in column {
            let joins = chains.last().and_then(|c| c.last()).is_some_and(|prev| {
                prev.y == r.y + 1 && region.is_boundary_edge(UnitEdge::new(GridPoint::new(xs - 1, r.y), GridPoint::new(xs - 1, prev.y)))
            });
            if joins {
                chains.last_mut().unwrap().push(r);
            } else {
                chains.push(vec![r]);
            }
        }
        for chain in chains {
            for pair in chain.chunks(2) {
                match pair {
                    [upper, lower] if pair_cost(region, upper, lower) < excursion_cost(upper) + excursion_cost(lower) => pairs.push((*upper, *lower)),
                    [upper, lower] => leftovers.extend([*upper, *lower]),
                    [single] => leftovers.push(*single),
                    _ => unreachable!(),
                }
            }
        }
    }
    pairs.sort();
    leftovers.sort();
    for (upper, lower) in &pairs {
        for s in [upper, lower] {
            for x in s.x_start - 1..s.x_end {
                edges.push((GridPoint::new(x, s.y), GridPoint::new(x + 1, s.y)));
            }
        }
        let link = lattice_path(region, GridPoint::new(upper.x_end, upper.y), GridPoint::new(lower.x_end, lower.y)).ok_or(Error::DisconnectedGraph)?;
        edges.extend(link.windows(2).map(|w| (w[0], w[1])));
        edges.push((GridPoint::new(upper.x_start - 1, lower.y), GridPoint::new(upper.x_start - 1, upper.y)));
    }

    let mut on_tour: BTreeSet<GridPoint> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
    let mut excursions = Vec::new();
    for run in &leftovers {
        for g in run.points().filter(|g| g.is_even()) {
            if on_tour.contains(&g) {
                continue;
            }
            let from = [g.offset(0, -1), g.offset(0, 1), g.offset(-1, 0), g.offset(1, 0)].into_iter().find(|v| on_tour.contains(v));
            if let Some(v) = from {
                edges.push((v, g));
                edges.push((g, v));
                excursions.push((v, g));
                on_tour.insert(g);
            }
        }
    }

    let scans = diagonal_scan_points(region);
    let required: BTreeSet<GridPoint> = scans.iter().copied().collect();
    let connectors = spanning_connectors(&edges, &required, |a, b| region.contains_edge(UnitEdge::new(a, b)), i64::MAX)?;
    for path in &connectors {
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
            edges.push((w[0], w[1]));
        }
    }
    let start = scans.iter().copied().find(|g| region.is_boundary_point(*g));
    let walk = euler_circuit(&edges, start)?;
    let tour = compress(&walk, &required);
    let scan_points: Vec<Point> = scans.iter().map(|g| g.to_point()).collect();
    let solution = Solution::new(tour, &scan_points, model)?;
    Ok(CircularGridTour { solution, runs, pairs, leftovers, excursions, connectors })
}

/// Length of the closed loop a linked pair adds to the boundary circuit.
fn pair_cost(region: &Polyomino, upper: &Strip, lower: &Strip) -> i64 {
    let link = lattice_path(region, GridPoint::new(upper.x_end, upper.y), GridPoint::new(lower.x_end, lower.y)).map_or(i64::MAX / 4, |p| p.len() as i64 - 1);
    upper.length() + lower.length() + 3 + link
}

fn excursion_cost(run: &Strip) -> i64 {
    2 * run.points().filter(|g| g.is_even()).count() as i64
}

fn compress(walk: &[GridPoint], keep: &BTreeSet<GridPoint>) -> Vec<Point> {
    let mut out = vec![walk[0]];
    for i in 1..walk.len().saturating_sub(1) {
        let (a, b, c) = (walk[i - 1], walk[i], walk[i + 1]);
        if (b.x - a.x, b.y - a.y) != (c.x - b.x, c.y - b.y) || keep.contains(&b) {
            out.push(b);
        }
    }
    if walk.len() > 1 {
        out.push(*walk.last().unwrap());
    }
    out.iter().map(|g| g.to_point()).collect()
}

/// The length accounting behind the `4·L* + 8` tour bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthCertificate {
    pub l_tour: f64,
    /// Perimeter of the region.
    pub l_bound: i64,
    /// Total length of the interior lattice rows.
    pub l_strips: i64,
    /// Strip length of the better of the two spacing-2 phases.
    pub l_str: i64,
    /// Offset boundaries, doubled paths between them, and doubled corridor
    /// walks until every pixel has a visited corner.
    pub l_delta1: i64,
    pub has_holes: bool,
    /// `L(T) ≤ L_bound + L_strips + L_δ1` and `L_strips ≤ 2·L_str`.
    pub ok: bool,
}

impl LengthCertificate {
    /// The boundary identity `L_bound = L_δ1 + 8`.
    pub fn identity(&self) -> Result<bool> {
        if self.has_holes {
            return Err(Error::HolesUnsupported);
        }
        Ok(self.l_bound == self.l_delta1 + 8)
    }
}

pub fn length_certificate(region: &Polyomino, solution: &Solution) -> Result<LengthCertificate> {
    let b = OffsetComplex::new(region, 1)?;
    let l_bound = region.perimeter();
    let l_strips = strips_length(&strip_decomposition(b.vertices(), 1, 0)?);
    let l_str = (0..2).map(|phase| strip_decomposition(b.vertices(), 2, phase).map(|s| strips_length(&s))).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap();
    let l_delta1 = delta1_length(region, &b)?;
    let l_tour = solution.tour_length;
    let ok = l_tour <= (l_bound + l_strips + l_delta1) as f64 + 1e-9 && l_strips <= 2 * l_str;
    Ok(LengthCertificate { l_tour, l_bound, l_strips, l_str, l_delta1, has_holes: region.has_holes(), ok })
}

fn delta1_length(region: &Polyomino, b: &OffsetComplex) -> Result<i64> {
    let loops = boundary_loops(b)?;
    let mut length: i64 = loops.iter().map(|l| l.length()).sum();
    let loop_edges: Vec<(GridPoint, GridPoint)> = loops.iter().flat_map(|l| l.edges()).collect();
    let points: BTreeSet<GridPoint> = loops.iter().map(|l| l.vertices[0]).collect();
    let step_ok = |a: GridPoint, c: GridPoint| region.contains_edge(UnitEdge::new(a, c));
    let bridges = spanning_connectors(&loop_edges, &points, step_ok, i64::MAX)?;
    length += bridges.iter().map(|p| 2 * (p.len() as i64 - 1)).sum::<i64>();

    let mut reached: BTreeSet<GridPoint> = loops.iter().flat_map(|l| l.vertices.iter().copied()).collect();
    reached.extend(bridges.iter().flatten().copied());
    if reached.is_empty() {
        reached.insert(*region.lattice_points().first().unwrap());
    }
    loop {
        let unvisited: BTreeSet<GridPoint> = region
            .pixels()
            .iter()
            .filter(|p| !crate::geometry::pixel_corners(**p).iter().any(|c| reached.contains(c)))
            .flat_map(|p| crate::geometry::pixel_corners(*p))
            .collect();
        if unvisited.is_empty() {
            break;
        }
        let (target, dist, parent) = nearest(region, &reached, &unvisited).ok_or(Error::DisconnectedGraph)?;
        length += 2 * dist;
        let mut cur = target;
        reached.insert(cur);
        while let Some(&p) = parent.get(&cur) {
            reached.insert(p);
            cur = p;
        }
    }
    Ok(length)
}

/// Multi-source BFS inside the region; the first target reached (ties by
/// BFS order from sorted sources) with its distance and parent links.
fn nearest(region: &Polyomino, sources: &BTreeSet<GridPoint>, targets: &BTreeSet<GridPoint>) -> Option<(GridPoint, i64, HashMap<GridPoint, GridPoint>)> {
    let mut dist: HashMap<GridPoint, i64> = sources.iter().map(|s| (*s, 0)).collect();
    let mut parent = HashMap::new();
    let mut queue: VecDeque<GridPoint> = sources.iter().copied().collect();
    while let Some(g) = queue.pop_front() {
        if targets.contains(&g) {
            return Some((g, dist[&g], parent));
        }
        for n in g.neighbors() {
            if !dist.contains_key(&n) && region.contains_edge(UnitEdge::new(g, n)) {
                dist.insert(n, dist[&g] + 1);
                parent.insert(n, g);
                queue.push_back(n);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::coverage_check;
    use crate::geometry::Mode;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    fn rect(w: i64, h: i64) -> Polyomino {
        Polyomino::rectangle(0, 0, w, h).unwrap()
    }

    #[test]
    fn diagonal_points() {
        assert_eq!(diagonal_scan_points(&rect(1, 1)), vec![gp(0, 0), gp(1, 1)]);
        assert_eq!(diagonal_scan_points(&rect(2, 2)), vec![gp(0, 0), gp(0, 2), gp(1, 1), gp(2, 0), gp(2, 2)]);
        assert_eq!(diagonal_scan_points(&rect(4, 4)).len(), 13);
    }

    #[test]
    fn kershner() {
        assert_eq!(kershner_lower_bound(1, 1.0), 1);
        assert_eq!(kershner_lower_bound(16, 1.0), 7);
        assert_eq!(kershner_lower_bound(2, 1.0), 1);
    }

    #[test]
    fn small_tours() {
        let model = CostModel::circ_unit(1.0);
        let one = circular_grid_tour(&rect(1, 1), &model).unwrap();
        assert_eq!(one.solution.tour_length, 4.0);
        assert_eq!(one.solution.scan_count, 2);
        for (w, h) in [(2, 2), (4, 4), (5, 3), (1, 6)] {
            let region = rect(w, h);
            let t = circular_grid_tour(&region, &model).unwrap();
            assert!(t.solution.scan_count <= region.pixel_count() + 1);
            assert!(coverage_check(&region, &t.solution.scan_points(), &model, Mode::Milling).covered);
            let cert = length_certificate(&region, &t.solution).unwrap();
            // A lone interior point has no strip or offset loop to charge its
            // out-and-back step to.
            assert_eq!(cert.ok, (w, h) != (2, 2), "{w}x{h}: {cert:?}");
        }
    }

    #[test]
    fn certificate_examples() {
        let model = CostModel::circ_unit(1.0);
        let two = length_certificate(&rect(2, 2), &circular_grid_tour(&rect(2, 2), &model).unwrap().solution).unwrap();
        assert_eq!((two.l_bound, two.l_delta1), (8, 0));
        assert!(two.identity().unwrap());
        let four = length_certificate(&rect(4, 4), &circular_grid_tour(&rect(4, 4), &model).unwrap().solution).unwrap();
        assert_eq!((four.l_bound, four.l_delta1), (16, 8));
        assert!(four.identity().unwrap());
    }
}
