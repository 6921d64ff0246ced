//! Milling skeleton of a polyomino: feasible cutter centres, the boundary
//! loops of that region, horizontal strips and the matching arcs that make
//! the union Eulerian.
//!
//! The cutter is the axis-parallel square of half-width `h` (an integer), so
//! a lattice point `g` is a feasible centre iff the `2h × 2h` block of pixels
//! around it lies in the region. The offset region `B` is the cell complex on
//! the feasible centres: an edge when both endpoints are feasible, a face when
//! all four corners are. Its boundary is the multigraph in which each edge of
//! `B` appears `2 − (#faces of B on its sides)` times, plus isolated points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::euler_circuit;
use crate::geometry::{GridPoint, Pixel, PixelSet, Polyomino, UnitEdge};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetComplex {
    half_width: i64,
    vertices: BTreeSet<GridPoint>,
}

impl OffsetComplex {
    pub fn new(region: &Polyomino, half_width: i64) -> Result<Self> {
        if half_width < 1 {
            return Err(Error::InvalidInput(format!("cutter half-width must be a positive integer, got {half_width}")));
        }
        let h = half_width;
        let vertices = region
            .pixels()
            .iter()
            .map(|p| p.offset(h, h))
            .filter(|g| (-h..h).all(|dx| (-h..h).all(|dy| region.contains(g.offset(dx, dy)))))
            .collect();
        Ok(Self { half_width, vertices })
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn vertices(&self) -> &BTreeSet<GridPoint> {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, g: GridPoint) -> bool {
        self.vertices.contains(&g)
    }

    pub fn contains_edge(&self, e: UnitEdge) -> bool {
        self.contains(e.0) && self.contains(e.1)
    }

    /// Face with lower-left corner `g`.
    pub fn contains_face(&self, g: GridPoint) -> bool {
        [g, g.offset(1, 0), g.offset(0, 1), g.offset(1, 1)].iter().all(|v| self.contains(*v))
    }

    /// How often `e` appears on the boundary of `B` (0, 1 or 2).
    pub fn boundary_multiplicity(&self, e: UnitEdge) -> usize {
        if !self.contains_edge(e) {
            return 0;
        }
        let faces = if e.is_horizontal() { [e.0.offset(0, -1), e.0] } else { [e.0.offset(-1, 0), e.0] };
        2 - faces.iter().filter(|f| self.contains_face(**f)).count()
    }

    /// Unit edges of `B` between feasible lattice neighbours, sorted.
    pub fn edges(&self) -> Vec<UnitEdge> {
        let mut out = Vec::new();
        for &g in &self.vertices {
            for n in [g.offset(1, 0), g.offset(0, 1)] {
                if self.contains(n) {
                    out.push(UnitEdge::new(g, n));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for n in g.neighbors() {
                if self.contains(n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Pixels under the cutter centred at `g`.
    pub fn window(&self, g: GridPoint) -> Vec<Pixel> {
        let h = self.half_width;
        (-h..h).flat_map(|dx| (-h..h).map(move |dy| g.offset(dx, dy))).collect()
    }
}

/// One boundary piece δB_i as a closed lattice walk. The walk is stored
/// without repeating its first vertex; a single vertex is a point loop of
/// length zero and a walk `a, b` is the out-and-back segment of length two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLoop {
    pub vertices: Vec<GridPoint>,
}

impl BoundaryLoop {
    pub fn length(&self) -> i64 {
        if self.vertices.len() <= 1 {
            0
        } else {
            self.vertices.len() as i64
        }
    }

    /// The walk with its first vertex appended.
    pub fn closed(&self) -> Vec<GridPoint> {
        let mut out = self.vertices.clone();
        out.push(self.vertices[0]);
        out
    }

    pub fn contains(&self, g: GridPoint) -> bool {
        self.vertices.contains(&g)
    }

    /// Unit steps of the walk.
    pub fn edges(&self) -> Vec<(GridPoint, GridPoint)> {
        if self.vertices.len() <= 1 {
            return Vec::new();
        }
        self.closed().windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// `(corners, reflex corners)` of the walk read as an orthogonal polygon,
    /// orienting it counter-clockwise first. Straight steps and reversals are
    /// not corners.
    pub fn corner_counts(&self) -> (usize, usize) {
        let n = self.vertices.len();
        if n < 4 {
            return (0, 0);
        }
        let (mut left, mut right) = (0usize, 0usize);
        for i in 0..n {
            let a = self.vertices[(i + n - 1) % n];
            let b = self.vertices[i];
            let c = self.vertices[(i + 1) % n];
            let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
            match cross.signum() {
                1 => left += 1,
                -1 => right += 1,
                _ => {}
            }
        }
        let reflex = if left >= right { right } else { left };
        (left + right, reflex)
    }
}

/// Boundary pieces of the offset region for a cutter of half-width
/// `half_width`, ordered by their smallest vertex. Each piece is an Euler
/// circuit of one component of the boundary multigraph, starting at that
/// component's smallest vertex.
pub fn trace_offset_boundary(region: &Polyomino, half_width: i64) -> Result<Vec<BoundaryLoop>> {
    if !region.is_connected() {
        return Err(Error::Disconnected);
    }
    let b = OffsetComplex::new(region, half_width)?;
    if b.is_empty() {
        return Err(Error::EmptyOffset);
    }
    boundary_loops(&b)
}

/// Boundary loops of an already computed offset complex (may be empty).
pub fn boundary_loops(b: &OffsetComplex) -> Result<Vec<BoundaryLoop>> {
    let mut adjacency: BTreeMap<GridPoint, Vec<GridPoint>> = BTreeMap::new();
    let mut edges = Vec::new();
    for e in b.edges() {
        for _ in 0..b.boundary_multiplicity(e) {
            edges.push((e.0, e.1));
            adjacency.entry(e.0).or_default().push(e.1);
            adjacency.entry(e.1).or_default().push(e.0);
        }
    }
    let mut loops = Vec::new();
    let mut seen = BTreeSet::new();
    for &g in b.vertices() {
        let has_edge = g.neighbors().iter().any(|n| b.contains(*n));
        if !has_edge {
            loops.push(BoundaryLoop { vertices: vec![g] });
        }
    }
    for &start in adjacency.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[&v] {
                if comp.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        let comp_edges: Vec<_> = edges.iter().copied().filter(|(a, _)| comp.contains(a)).collect();
        let mut walk = euler_circuit(&comp_edges, Some(start))?;
        walk.pop();
        seen.extend(comp);
        loops.push(BoundaryLoop { vertices: walk });
    }
    loops.sort_by_key(|l| *l.vertices.iter().min().unwrap());
    Ok(loops)
}

/// Pixels swept by the cutter while it follows the given loops.
pub fn swept_pixels(b: &OffsetComplex, loops: &[BoundaryLoop]) -> PixelSet {
    loops.iter().flat_map(|l| l.vertices.iter()).flat_map(|g| b.window(*g)).collect()
}

/// A horizontal strip centre line from `(x_start, y)` to `(x_end, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Strip {
    pub y: i64,
    pub x_start: i64,
    pub x_end: i64,
}

impl Strip {
    pub fn length(&self) -> i64 {
        self.x_end - self.x_start
    }

    pub fn endpoints(&self) -> [GridPoint; 2] {
        [GridPoint::new(self.x_start, self.y), GridPoint::new(self.x_end, self.y)]
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (self.x_start..=self.x_end).map(move |x| GridPoint::new(x, self.y))
    }

    pub fn contains(&self, g: GridPoint) -> bool {
        g.y == self.y && g.x >= self.x_start && g.x <= self.x_end
    }

    pub fn edges(&self) -> Vec<(GridPoint, GridPoint)> {
        (self.x_start..self.x_end).map(|x| (GridPoint::new(x, self.y), GridPoint::new(x + 1, self.y))).collect()
    }
}

/// Maximal horizontal runs of `region` (a set of lattice points) on the rows
/// `y ≡ phase (mod spacing)`, sorted by `(y, x_start)`.
pub fn strip_decomposition(region: &BTreeSet<GridPoint>, spacing: i64, phase: i64) -> Result<Vec<Strip>> {
    if spacing <= 0 {
        return Err(Error::InvalidInput(format!("strip spacing must be positive, got {spacing}")));
    }
    let mut rows: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for g in region {
        if (g.y - phase).rem_euclid(spacing) == 0 {
            rows.entry(g.y).or_default().push(g.x);
        }
    }
    let mut strips = Vec::new();
    for (y, xs) in rows {
        // `region` iterates in (x, y) order, so each row is already sorted.
        let mut start = xs[0];
        let mut prev = xs[0];
        for &x in &xs[1..] {
            if x != prev + 1 {
                strips.push(Strip { y, x_start: start, x_end: prev });
                start = x;
            }
            prev = x;
        }
        strips.push(Strip { y, x_start: start, x_end: prev });
    }
    strips.sort();
    Ok(strips)
}

pub fn strips_length(strips: &[Strip]) -> i64 {
    strips.iter().map(Strip::length).sum()
}

/// The chosen alternating portion `M*(δB_i)` of one loop: sub-walks between
/// consecutive strip endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingPart {
    pub arcs: Vec<Vec<GridPoint>>,
    pub length: i64,
}

impl MatchingPart {
    pub fn edges(&self) -> Vec<(GridPoint, GridPoint)> {
        self.arcs.iter().flat_map(|a| a.windows(2).map(|w| (w[0], w[1]))).collect()
    }
}

/// For each loop, the shorter of the two alternating portions between the
/// strip endpoints lying on it. Ties go to the portion whose smallest vertex
/// is lexicographically smaller. Zero-length strips contribute no endpoints.
pub fn matching_parts(strips: &[Strip], loops: &[BoundaryLoop]) -> Result<Vec<MatchingPart>> {
    let mut per_loop: Vec<Vec<usize>> = vec![Vec::new(); loops.len()];
    for s in strips.iter().filter(|s| s.length() > 0) {
        for end in s.endpoints() {
            let hit = loops.iter().enumerate().find_map(|(i, l)| l.vertices.iter().position(|v| *v == end).map(|p| (i, p)));
            match hit {
                Some((i, pos)) => per_loop[i].push(pos),
                None => return Err(Error::InvalidInput(format!("strip endpoint {end} is not on a boundary loop"))),
            }
        }
    }
    let mut parts = Vec::with_capacity(loops.len());
    for (loop_index, (l, mut positions)) in loops.iter().zip(per_loop).enumerate() {
        if positions.len() % 2 == 1 {
            return Err(Error::ParityViolation { loop_index, count: positions.len() });
        }
        if positions.is_empty() {
            parts.push(MatchingPart::default());
            continue;
        }
        positions.sort_unstable();
        let n = l.vertices.len();
        let k = positions.len();
        let arc = |from: usize, to: usize| -> Vec<GridPoint> {
            let steps = (to + n - from) % n;
            (0..=steps).map(|i| l.vertices[(from + i) % n]).collect()
        };
        let portion = |offset: usize| -> Vec<Vec<GridPoint>> {
            (0..k / 2)
                .map(|j| arc(positions[(2 * j + offset) % k], positions[(2 * j + 1 + offset) % k]))
                .filter(|a| a.len() > 1)
                .collect()
        };
        let first = portion(0);
        let second = portion(1);
        let len = |p: &Vec<Vec<GridPoint>>| p.iter().map(|a| a.len() as i64 - 1).sum::<i64>();
        let min_vertex = |p: &Vec<Vec<GridPoint>>| p.iter().flatten().min().copied();
        let (l1, l2) = (len(&first), len(&second));
        let pick_first = l1 < l2 || (l1 == l2 && min_vertex(&first) <= min_vertex(&second));
        let (arcs, length) = if pick_first { (first, l1) } else { (second, l2) };
        parts.push(MatchingPart { arcs, length });
    }
    Ok(parts)
}

/// Everything `afm`-style tours are assembled from, with the lengths that
/// bound them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MillingDecomposition {
    pub offset: OffsetComplex,
    pub loops: Vec<BoundaryLoop>,
    pub strips: Vec<Strip>,
    pub matching: Vec<MatchingPart>,
    /// Shortest paths, each traversed twice, joining pieces the loops and
    /// strips leave apart.
    pub connectors: Vec<Vec<GridPoint>>,
    pub l_delta_b: i64,
    pub l_str: i64,
    pub l_m: i64,
    pub l_conn: i64,
}

impl MillingDecomposition {
    /// All tour-graph edges: loops, strips, matching arcs, connectors twice.
    pub fn edges(&self) -> Vec<(GridPoint, GridPoint)> {
        let mut out: Vec<_> = self.loops.iter().flat_map(BoundaryLoop::edges).collect();
        out.extend(self.strips.iter().flat_map(Strip::edges));
        out.extend(self.matching.iter().flat_map(MatchingPart::edges));
        for path in &self.connectors {
            for w in path.windows(2) {
                out.push((w[0], w[1]));
                out.push((w[0], w[1]));
            }
        }
        out
    }

    pub fn tour_length(&self) -> i64 {
        self.l_delta_b + self.l_str + self.l_m + self.l_conn
    }
}

/// Pixels of the region the boundary loops do not sweep (`P_int`).
pub fn interior_pixels(region: &Polyomino, b: &OffsetComplex, loops: &[BoundaryLoop]) -> PixelSet {
    let swept = swept_pixels(b, loops);
    region.pixels().iter().copied().filter(|p| !swept.contains(p)).collect()
}

/// Strips (from all rows of the given phase) that sweep at least one pixel
/// of `targets` or contain one of `must_visit`; the pixels no strip of the
/// phase can sweep are returned separately.
pub fn select_strips(
    b: &OffsetComplex,
    candidates: &[Strip],
    targets: &PixelSet,
    must_visit: &BTreeSet<GridPoint>,
) -> (Vec<Strip>, PixelSet) {
    let mut keep = BTreeSet::new();
    let mut unswept = PixelSet::new();
    for &p in targets {
        let hit = candidates.iter().position(|s| s.points().any(|g| b.window(g).contains(&p)));
        match hit {
            Some(i) => {
                keep.insert(i);
            }
            None => {
                unswept.insert(p);
            }
        }
    }
    for g in must_visit {
        if let Some(i) = candidates.iter().position(|s| s.contains(*g)) {
            keep.insert(i);
        }
    }
    (keep.into_iter().map(|i| candidates[i]).collect(), unswept)
}

/// Components of the multigraph `edges` (vertex sets, sorted by minimum).
pub fn edge_components(edges: &[(GridPoint, GridPoint)]) -> Vec<BTreeSet<GridPoint>> {
    let mut adjacency: BTreeMap<GridPoint, Vec<GridPoint>> = BTreeMap::new();
    for &(a, b) in edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let mut seen = BTreeSet::new();
    let mut comps = Vec::new();
    for &start in adjacency.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[&v] {
                if seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Shortest lattice path from any vertex of `from` to any vertex of `to`
/// using only steps allowed by `step_ok`. Ties resolve toward smaller
/// vertices, so the path is deterministic.
pub fn shortest_lattice_path(
    from: &BTreeSet<GridPoint>,
    to: &BTreeSet<GridPoint>,
    step_ok: impl Fn(GridPoint, GridPoint) -> bool,
    limit: i64,
) -> Option<Vec<GridPoint>> {
    let mut parent: BTreeMap<GridPoint, Option<GridPoint>> = from.iter().map(|g| (*g, None)).collect();
    let mut queue: VecDeque<(GridPoint, i64)> = from.iter().map(|g| (*g, 0)).collect();
    while let Some((g, d)) = queue.pop_front() {
        if to.contains(&g) {
            let mut path = vec![g];
            let mut cur = g;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(*p);
                cur = *p;
            }
            path.reverse();
            return Some(path);
        }
        if d >= limit {
            continue;
        }
        for n in g.neighbors() {
            if !parent.contains_key(&n) && step_ok(g, n) {
                parent.insert(n, Some(g));
                queue.push_back((n, d + 1));
            }
        }
    }
    None
}

/// Joins the components of `edges` (plus any extra isolated `points`) by a
/// minimum spanning tree of shortest connecting paths; every path is meant
/// to be traversed twice. Returns the paths in insertion order.
pub fn spanning_connectors(
    edges: &[(GridPoint, GridPoint)],
    points: &BTreeSet<GridPoint>,
    step_ok: impl Fn(GridPoint, GridPoint) -> bool,
    limit: i64,
) -> Result<Vec<Vec<GridPoint>>> {
    let mut comps = edge_components(edges);
    for p in points {
        if !comps.iter().any(|c| c.contains(p)) {
            comps.push(BTreeSet::from([*p]));
        }
    }
    comps.sort_by_key(|c| *c.first().unwrap());
    if comps.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut tree = comps[0].clone();
    let mut remaining: Vec<BTreeSet<GridPoint>> = comps[1..].to_vec();
    let mut paths = Vec::new();
    while !remaining.is_empty() {
        let target: BTreeSet<GridPoint> = remaining.iter().flatten().copied().collect();
        let path = shortest_lattice_path(&tree, &target, &step_ok, limit).ok_or(Error::DisconnectedGraph)?;
        let end = *path.last().unwrap();
        let idx = remaining.iter().position(|c| c.contains(&end)).unwrap();
        let comp = remaining.remove(idx);
        tree.extend(comp);
        tree.extend(path.iter().copied());
        // The path may have crossed other components; absorb them too.
        let mut i = 0;
        while i < remaining.len() {
            if path.iter().any(|g| remaining[i].contains(g)) {
                let c = remaining.remove(i);
                tree.extend(c);
            } else {
                i += 1;
            }
        }
        if path.len() > 1 {
            paths.push(path);
        }
    }
    Ok(paths)
}

/// The boundary/strip/matching skeleton of a milling tour with the cutter of
/// half-width 1 and strips on rows `y ≡ phase (mod 2)`. Only strips that
/// sweep pixels the boundary misses, or that carry a point of `must_visit`
/// not already on a loop, are used. No connectors are added; the second
/// value lists pixels no loop or strip of the phase sweeps.
pub fn milling_decomposition(region: &Polyomino, phase: i64, must_visit: &BTreeSet<GridPoint>) -> Result<(MillingDecomposition, PixelSet)> {
    let b = OffsetComplex::new(region, 1)?;
    let loops = boundary_loops(&b)?;
    let on_loops: BTreeSet<GridPoint> = loops.iter().flat_map(|l| l.vertices.iter().copied()).collect();
    let p_int = interior_pixels(region, &b, &loops);
    let candidates = strip_decomposition(b.vertices(), 2, phase)?;
    let visit: BTreeSet<GridPoint> = must_visit.iter().copied().filter(|g| !on_loops.contains(g)).collect();
    let (strips, unswept) = select_strips(&b, &candidates, &p_int, &visit);
    let matching = matching_parts(&strips, &loops)?;
    let decomposition = MillingDecomposition {
        l_delta_b: loops.iter().map(BoundaryLoop::length).sum(),
        l_str: strips_length(&strips),
        l_m: matching.iter().map(|m| m.length).sum(),
        offset: b,
        loops,
        strips,
        matching,
        connectors: Vec::new(),
        l_conn: 0,
    };
    Ok((decomposition, unswept))
}

/// Joins the pieces of the skeleton by doubled shortest paths inside `B`.
pub fn connect_within_offset(d: &mut MillingDecomposition) -> Result<()> {
    let base = d.edges();
    let points: BTreeSet<GridPoint> = d.loops.iter().map(|l| l.vertices[0]).collect();
    let b = &d.offset;
    let connectors = spanning_connectors(&base, &points, |u, v| b.contains(u) && b.contains(v), i64::MAX)?;
    d.l_conn += connectors.iter().map(|p| 2 * (p.len() as i64 - 1)).sum::<i64>();
    d.connectors.extend(connectors);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    fn rect(w: i64, h: i64) -> Polyomino {
        Polyomino::rectangle(0, 0, w, h).unwrap()
    }

    #[test]
    fn two_by_two_offset_is_a_point() {
        let loops = trace_offset_boundary(&rect(2, 2), 1).unwrap();
        assert_eq!(loops, vec![BoundaryLoop { vertices: vec![gp(1, 1)] }]);
        assert_eq!(loops[0].length(), 0);
    }

    #[test]
    fn four_by_four_offset_loop() {
        let loops = trace_offset_boundary(&rect(4, 4), 1).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].length(), 8);
        let corners: BTreeSet<_> = [gp(1, 1), gp(3, 1), gp(3, 3), gp(1, 3)].into();
        assert!(corners.iter().all(|c| loops[0].contains(*c)));
        // Every feasible centre except the middle one is on the loop.
        let b = OffsetComplex::new(&rect(4, 4), 1).unwrap();
        let off_loop: Vec<_> = b.vertices().iter().filter(|g| !loops[0].contains(**g)).collect();
        assert_eq!(off_loop, vec![&gp(2, 2)]);
    }

    #[test]
    fn corridor_has_empty_offset() {
        assert_eq!(trace_offset_boundary(&rect(1, 3), 1), Err(Error::EmptyOffset));
        let two = Polyomino::new([gp(0, 0), gp(5, 5)]).unwrap();
        assert_eq!(trace_offset_boundary(&two, 1), Err(Error::Disconnected));
    }

    #[test]
    fn width_two_corridor_is_doubled_segment() {
        let loops = trace_offset_boundary(&rect(5, 2), 1).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].length(), 6);
    }

    #[test]
    fn corner_identity_on_l_shape() {
        let mut pixels: PixelSet = rect(6, 6).pixels().clone();
        pixels.retain(|p| !(p.x >= 3 && p.y >= 3));
        let loops = trace_offset_boundary(&Polyomino::new(pixels).unwrap(), 1).unwrap();
        assert_eq!(loops.len(), 1);
        let (n, reflex) = loops[0].corner_counts();
        assert_eq!((n, reflex), (6, 1));
        assert_eq!(n, 2 * reflex + 4);
    }

    #[test]
    fn ring_has_two_loops() {
        let mut pixels: PixelSet = rect(8, 8).pixels().clone();
        pixels.retain(|p| !(p.x >= 3 && p.x < 5 && p.y >= 3 && p.y < 5));
        let loops = trace_offset_boundary(&Polyomino::new(pixels).unwrap(), 1).unwrap();
        assert_eq!(loops.len(), 2);
    }

    #[test]
    fn strips_on_offsets() {
        assert!(strip_decomposition(&BTreeSet::new(), 2, 0).unwrap().is_empty());
        let b4 = OffsetComplex::new(&rect(4, 4), 1).unwrap();
        assert_eq!(strip_decomposition(b4.vertices(), 2, 0).unwrap(), vec![Strip { y: 2, x_start: 1, x_end: 3 }]);
        let b64 = OffsetComplex::new(&rect(6, 4), 1).unwrap();
        let strips = strip_decomposition(b64.vertices(), 2, 1).unwrap();
        assert_eq!(strips.len(), 2);
        assert_eq!(strips_length(&strips), 8);
        assert!(strip_decomposition(b64.vertices(), 0, 0).is_err());
    }

    #[test]
    fn matching_tie_prefers_smallest_vertex() {
        let loops = trace_offset_boundary(&rect(4, 4), 1).unwrap();
        let strips = [Strip { y: 2, x_start: 1, x_end: 3 }];
        let parts = matching_parts(&strips, &loops).unwrap();
        assert_eq!(parts[0].length, 4);
        assert!(parts[0].arcs.iter().flatten().any(|g| *g == gp(1, 1)));
        assert!(matching_parts(&[], &loops).unwrap()[0].arcs.is_empty());
    }

    #[test]
    fn six_by_four_matching() {
        let region = rect(6, 4);
        let loops = trace_offset_boundary(&region, 1).unwrap();
        let b = OffsetComplex::new(&region, 1).unwrap();
        let strips = strip_decomposition(b.vertices(), 2, 1).unwrap();
        let parts = matching_parts(&strips, &loops).unwrap();
        let l_m: i64 = parts.iter().map(|p| p.length).sum();
        assert_eq!(l_m, 4);
        assert!(2 * l_m <= strips_length(&strips));
        let mut edges: Vec<_> = loops.iter().flat_map(BoundaryLoop::edges).collect();
        edges.extend(strips.iter().flat_map(Strip::edges));
        edges.extend(parts.iter().flat_map(MatchingPart::edges));
        let walk = euler_circuit(&edges, None).unwrap();
        assert_eq!(walk.len() as i64 - 1, 12 + 8 + 4);
    }

    #[test]
    fn odd_endpoint_count_is_a_parity_violation() {
        let mut pixels: PixelSet = rect(8, 8).pixels().clone();
        pixels.retain(|p| !(p.x >= 3 && p.x < 5 && p.y >= 3 && p.y < 5));
        let loops = trace_offset_boundary(&Polyomino::new(pixels).unwrap(), 1).unwrap();
        let strips = [Strip { y: 4, x_start: 1, x_end: 2 }];
        assert!(matches!(matching_parts(&strips, &loops), Err(Error::ParityViolation { count: 1, .. })));
        let off_loop = [Strip { y: 2, x_start: 2, x_end: 3 }];
        let square = trace_offset_boundary(&rect(4, 4), 1).unwrap();
        assert!(matches!(matching_parts(&off_loop, &square), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn six_by_six_decomposition_sweeps_everything() {
        let region = rect(6, 6);
        let (d, unswept) = milling_decomposition(&region, 0, &BTreeSet::new()).unwrap();
        assert!(unswept.is_empty());
        assert_eq!(d.l_delta_b, 16);
        assert_eq!(d.strips.len(), 2);
        assert!(d.l_m <= d.l_str / 2);
        let mut swept = swept_pixels(&d.offset, &d.loops);
        for s in &d.strips {
            for g in s.points() {
                swept.extend(d.offset.window(g));
            }
        }
        assert_eq!(&swept, region.pixels());
    }
}
