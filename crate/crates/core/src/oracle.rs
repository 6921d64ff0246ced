//! Exact baselines for small instances: minimum lattice scan covers, optimal
//! tours through a fixed scan set, and the optimal combined objective.
//!
//! Unit L∞ scans on a lattice point cover the (up to) four pixels around it.
//! Unit L2 scans on lattice points cover a pixel exactly when the scanned
//! corners of that pixel touch all four of its sides, so the L2 problem is a
//! cover of pixel sides by their endpoints. Both are solved as set cover by
//! branch and bound over lattice candidates. For L2 this is only optimal
//! among lattice placements.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cells_around, pixel_corners, CostModel, GridPoint, Mode, Point, Polyomino, ScanMetric, Solution, UnitEdge};
use crate::milling::{strip_decomposition, strips_length, OffsetComplex};

/// Candidate limit of [`exact_min_cover`].
pub const MAX_COVER_CANDIDATES: usize = 400;
/// Point limit of [`exact_tour`].
pub const MAX_TOUR_POINTS: usize = 15;
/// Candidate limit of [`exact_mwpdv`].
pub const MAX_MWPDV_CANDIDATES: usize = 40;
/// Default search-node budget, overridable through `MWPDV_ORACLE_BUDGET`.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

pub fn budget() -> u64 {
    std::env::var("MWPDV_ORACLE_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Set-cover view of a scan instance.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub candidates: Vec<GridPoint>,
    /// Elements covered by each candidate.
    pub covers: Vec<FixedBitSet>,
    /// Candidates covering each element.
    pub covered_by: Vec<Vec<usize>>,
    pub element_count: usize,
}

impl CoverInstance {
    pub fn new(region: &Polyomino, model: &CostModel) -> Result<Self> {
        if (model.r - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("exact covers are implemented for r = 1 only, got r = {}", model.r)));
        }
        let candidates: Vec<GridPoint> = region.lattice_points().into_iter().collect();
        let mut elements: BTreeMap<ElementKey, usize> = BTreeMap::new();
        let keys_of = |g: GridPoint| -> Vec<ElementKey> {
            match model.scan_metric {
                ScanMetric::Linf => cells_around(g).into_iter().filter(|c| region.contains(*c)).map(ElementKey::Pixel).collect(),
                ScanMetric::L2 => g
                    .neighbors()
                    .into_iter()
                    .map(|n| UnitEdge::new(g, n))
                    .filter(|e| region.contains_edge(*e))
                    .map(ElementKey::Side)
                    .collect(),
            }
        };
        let per_candidate: Vec<Vec<ElementKey>> = candidates.iter().map(|g| keys_of(*g)).collect();
        for keys in &per_candidate {
            for k in keys {
                let next = elements.len();
                elements.entry(*k).or_insert(next);
            }
        }
        let element_count = elements.len();
        let mut covers = Vec::with_capacity(candidates.len());
        let mut covered_by = vec![Vec::new(); element_count];
        for (ci, keys) in per_candidate.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(element_count);
            for k in keys {
                bits.insert(elements[k]);
                covered_by[elements[k]].push(ci);
            }
            covers.push(bits);
        }
        Ok(Self { candidates, covers, covered_by, element_count })
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut bits = FixedBitSet::with_capacity(self.element_count);
        for &c in chosen {
            bits.union_with(&self.covers[c]);
        }
        bits.count_ones(..) == self.element_count
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ElementKey {
    Pixel(GridPoint),
    Side(UnitEdge),
}

struct Search<'a> {
    inst: &'a CoverInstance,
    order: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn new(inst: &CoverInstance) -> Search<'_> {
        let order = inst
            .covered_by
            .iter()
            .map(|cands| {
                let mut c = cands.clone();
                c.sort_by_key(|&ci| (std::cmp::Reverse(inst.covers[ci].count_ones(..)), inst.candidates[ci]));
                c
            })
            .collect();
        Search { inst, order, nodes: 0, budget: budget() }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::InstanceTooLarge(format!("search budget of {} nodes exhausted", self.budget)));
        }
        Ok(())
    }

    /// Uncovered element with the fewest usable candidates, or `None` when
    /// everything is covered. `Some(None)` signals an element nobody can cover.
    fn branch_element(&self, covered: &FixedBitSet, excluded: &FixedBitSet) -> Option<Option<usize>> {
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.inst.element_count {
            if covered.contains(e) {
                continue;
            }
            let n = self.order[e].iter().filter(|c| !excluded.contains(**c)).count();
            if n == 0 {
                return Some(None);
            }
            if best.is_none_or(|(_, m)| n < m) {
                best = Some((e, n));
            }
        }
        best.map(|(e, _)| Some(e))
    }

    /// Uncovered elements pairwise sharing no usable candidate need distinct
    /// scans; a greedy packing of them is a lower bound.
    fn lower_bound(&self, covered: &FixedBitSet, excluded: &FixedBitSet) -> usize {
        let mut blocked = FixedBitSet::with_capacity(self.inst.candidates.len());
        let mut count = 0;
        for e in 0..self.inst.element_count {
            if covered.contains(e) {
                continue;
            }
            let usable: Vec<usize> = self.order[e].iter().copied().filter(|c| !excluded.contains(*c)).collect();
            if usable.iter().all(|c| !blocked.contains(*c)) {
                count += 1;
                for c in usable {
                    blocked.insert(c);
                }
            }
        }
        count
    }

    fn minimize(&mut self, covered: &mut FixedBitSet, excluded: &mut FixedBitSet, chosen: &mut Vec<usize>, best: &mut Vec<usize>, best_len: &mut usize) -> Result<()> {
        self.tick()?;
        let e = match self.branch_element(covered, excluded) {
            None => {
                if chosen.len() < *best_len {
                    *best_len = chosen.len();
                    *best = chosen.clone();
                }
                return Ok(());
            }
            Some(None) => return Ok(()),
            Some(Some(e)) => e,
        };
        if chosen.len() + self.lower_bound(covered, excluded).max(1) >= *best_len {
            return Ok(());
        }
        let cands: Vec<usize> = self.order[e].iter().copied().filter(|c| !excluded.contains(*c)).collect();
        let mut newly_excluded = Vec::new();
        for c in cands {
            let saved = covered.clone();
            covered.union_with(&self.inst.covers[c]);
            chosen.push(c);
            self.minimize(covered, excluded, chosen, best, best_len)?;
            chosen.pop();
            *covered = saved;
            excluded.insert(c);
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            excluded.set(c, false);
        }
        Ok(())
    }

    /// Calls `visit` on every cover reachable by element branching with at
    /// most `max_len` scans; each scan set is produced at most once.
    fn enumerate(&mut self, covered: &mut FixedBitSet, excluded: &mut FixedBitSet, chosen: &mut Vec<usize>, max_len: usize, visit: &mut dyn FnMut(&[usize])) -> Result<()> {
        self.tick()?;
        let e = match self.branch_element(covered, excluded) {
            None => {
                visit(chosen);
                return Ok(());
            }
            Some(None) => return Ok(()),
            Some(Some(e)) => e,
        };
        if chosen.len() + self.lower_bound(covered, excluded).max(1) > max_len {
            return Ok(());
        }
        let cands: Vec<usize> = self.order[e].iter().copied().filter(|c| !excluded.contains(*c)).collect();
        let mut newly_excluded = Vec::new();
        for c in cands {
            let saved = covered.clone();
            covered.union_with(&self.inst.covers[c]);
            chosen.push(c);
            self.enumerate(covered, excluded, chosen, max_len, visit)?;
            chosen.pop();
            *covered = saved;
            excluded.insert(c);
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            excluded.set(c, false);
        }
        Ok(())
    }
}

/// Minimum number of lattice scans covering the region, with a witness set
/// (sorted). Unit range only. Scans on lattice points see every pixel they
/// touch, so milling and lawn mowing have the same optimum here.
pub fn exact_min_cover(region: &Polyomino, model: &CostModel, _mode: Mode) -> Result<(usize, Vec<GridPoint>)> {
    exact_min_completion(region, model, &[])
}

/// Every minimum cover, each sorted, in lexicographic order.
pub fn all_min_covers(region: &Polyomino, model: &CostModel, _mode: Mode) -> Result<Vec<Vec<GridPoint>>> {
    all_min_completions(region, model, &[])
}

fn completion_start(region: &Polyomino, model: &CostModel, fixed: &[GridPoint]) -> Result<(CoverInstance, FixedBitSet)> {
    let inst = CoverInstance::new(region, model)?;
    if inst.candidates.len() > MAX_COVER_CANDIDATES {
        return Err(Error::InstanceTooLarge(format!("{} candidate scan points (limit {MAX_COVER_CANDIDATES})", inst.candidates.len())));
    }
    let mut covered = FixedBitSet::with_capacity(inst.element_count);
    for g in fixed {
        let ci = inst.candidates.binary_search(g).map_err(|_| Error::InvalidInput(format!("fixed scan {g} is not a lattice point of the region")))?;
        covered.union_with(&inst.covers[ci]);
    }
    Ok((inst, covered))
}

/// Fewest scans that, added to the `fixed` ones, cover the region; with a
/// sorted witness of the added scans.
pub fn exact_min_completion(region: &Polyomino, model: &CostModel, fixed: &[GridPoint]) -> Result<(usize, Vec<GridPoint>)> {
    let (inst, mut covered) = completion_start(region, model, fixed)?;
    let mut search = Search::new(&inst);
    let n = inst.candidates.len();
    let mut best = Vec::new();
    let mut best_len = n + 1;
    search.minimize(&mut covered, &mut FixedBitSet::with_capacity(n), &mut Vec::new(), &mut best, &mut best_len)?;
    let mut witness: Vec<GridPoint> = best.iter().map(|&c| inst.candidates[c]).collect();
    witness.sort();
    Ok((witness.len(), witness))
}

/// Every minimum completion of `fixed`, each sorted, in lexicographic order.
pub fn all_min_completions(region: &Polyomino, model: &CostModel, fixed: &[GridPoint]) -> Result<Vec<Vec<GridPoint>>> {
    let (s_min, _) = exact_min_completion(region, model, fixed)?;
    let (inst, mut covered) = completion_start(region, model, fixed)?;
    let mut search = Search::new(&inst);
    let n = inst.candidates.len();
    let mut out = Vec::new();
    search.enumerate(&mut covered, &mut FixedBitSet::with_capacity(n), &mut Vec::new(), s_min, &mut |chosen| {
        if chosen.len() == s_min {
            let mut v: Vec<GridPoint> = chosen.iter().map(|&c| inst.candidates[c]).collect();
            v.sort();
            out.push(v);
        }
    })?;
    out.sort();
    Ok(out)
}

pub fn tour_distances(points: &[GridPoint], model: &CostModel, containment: Option<&Polyomino>) -> Result<Vec<Vec<f64>>> {
    let n = points.len();
    let mut d = vec![vec![0.0; n]; n];
    match containment {
        None => {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = model.tour_distance(points[i].to_point(), points[j].to_point());
                }
            }
        }
        Some(region) => {
            for i in 0..n {
                let dist = lattice_bfs(region, points[i]);
                for j in 0..n {
                    d[i][j] = *dist.get(&points[j]).ok_or(Error::DisconnectedGraph)? as f64;
                }
            }
        }
    }
    Ok(d)
}

/// Unit-step distances from `from` to every lattice point of the region,
/// moving along edges that lie in the region.
pub fn lattice_bfs(region: &Polyomino, from: GridPoint) -> HashMap<GridPoint, i64> {
    let mut dist = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        for n in g.neighbors() {
            if !dist.contains_key(&n) && region.contains_edge(UnitEdge::new(g, n)) {
                dist.insert(n, d + 1);
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Shortest lattice path inside the region (deterministic among ties).
pub fn lattice_path(region: &Polyomino, from: GridPoint, to: GridPoint) -> Option<Vec<GridPoint>> {
    let mut parent: HashMap<GridPoint, GridPoint> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    parent.insert(from, from);
    while let Some(g) = queue.pop_front() {
        if g == to {
            let mut path = vec![g];
            let mut cur = g;
            while cur != from {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for n in g.neighbors() {
            if !parent.contains_key(&n) && region.contains_edge(UnitEdge::new(g, n)) {
                parent.insert(n, g);
                queue.push_back(n);
            }
        }
    }
    None
}

/// Held–Karp over a distance matrix: optimal closed-tour length and a
/// visiting order starting at index 0.
pub fn held_karp(d: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = d.len();
    if n <= 1 {
        return (0.0, (0..n).collect());
    }
    let m = n - 1;
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    let mut parent = vec![usize::MAX; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = d[0][j + 1];
    }
    for mask in 1..full {
        for j in 0..m {
            let cur = dp[mask * m + j];
            if mask & (1 << j) == 0 || !cur.is_finite() {
                continue;
            }
            for k in 0..m {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let next = mask | (1 << k);
                let cand = cur + d[j + 1][k + 1];
                if cand < dp[next * m + k] - 1e-12 {
                    dp[next * m + k] = cand;
                    parent[next * m + k] = j;
                }
            }
        }
    }
    let (mut best, mut last) = (f64::INFINITY, 0);
    for j in 0..m {
        let cand = dp[(full - 1) * m + j] + d[j + 1][0];
        if cand < best - 1e-12 {
            best = cand;
            last = j;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full - 1;
    let mut j = last;
    while j != usize::MAX {
        order.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        j = p;
    }
    order.push(0);
    order.reverse();
    (best, order)
}

/// Optimal closed tour length through `points`.
pub fn exact_tour(points: &[GridPoint], model: &CostModel, containment: Option<&Polyomino>) -> Result<f64> {
    if points.len() > MAX_TOUR_POINTS {
        return Err(Error::InstanceTooLarge(format!("{} tour points (limit {MAX_TOUR_POINTS})", points.len())));
    }
    let d = tour_distances(points, model, containment)?;
    Ok(held_karp(&d).0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MwpdvOptimum {
    pub t_star: f64,
    /// For each scan count `k` of some minimal cover, the shortest tour over
    /// minimal covers of that size; `t*(c) = min_k c·k + L_k`.
    pub frontier: Vec<(usize, f64)>,
    pub solution: Solution,
}

impl MwpdvOptimum {
    pub fn t_star_for(&self, c: f64) -> f64 {
        self.frontier.iter().map(|&(k, l)| c * k as f64 + l).fold(f64::INFINITY, f64::min)
    }

    /// Shortest tour over all covers (the `c = 0` optimum).
    pub fn min_length(&self) -> f64 {
        self.frontier.iter().map(|&(_, l)| l).fold(f64::INFINITY, f64::min)
    }
}

/// Optimal `c·|S| + L(T)` over lattice scan sets. Only inclusion-minimal
/// covers are examined: dropping a redundant scan never lengthens an optimal
/// tour under a shortest-path metric.
pub fn exact_mwpdv(region: &Polyomino, model: &CostModel, mode: Mode) -> Result<MwpdvOptimum> {
    let inst = CoverInstance::new(region, model)?;
    if inst.candidates.len() > MAX_MWPDV_CANDIDATES {
        return Err(Error::InstanceTooLarge(format!("{} candidate scan points (limit {MAX_MWPDV_CANDIDATES})", inst.candidates.len())));
    }
    let containment = match mode {
        Mode::Milling => {
            if !region.is_connected() {
                return Err(Error::Disconnected);
            }
            Some(region)
        }
        Mode::Lawnmowing => None,
    };
    let dist = tour_distances(&inst.candidates, model, containment)?;
    let n = inst.candidates.len();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let mut search = Search::new(&inst);
    search.enumerate(&mut FixedBitSet::with_capacity(inst.element_count), &mut FixedBitSet::with_capacity(n), &mut Vec::new(), n, &mut |chosen| {
        let minimal = (0..chosen.len()).all(|skip| {
            let rest: Vec<usize> = chosen.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| *c).collect();
            !inst.is_cover(&rest)
        });
        if minimal {
            let mut v = chosen.to_vec();
            v.sort_unstable();
            covers.push(v);
        }
    })?;
    covers.sort();
    let mut best_per_k: BTreeMap<usize, (f64, Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for cover in covers {
        if cover.len() > MAX_TOUR_POINTS + 1 {
            return Err(Error::InstanceTooLarge(format!("minimal cover with {} scans", cover.len())));
        }
        let sub: Vec<Vec<f64>> = cover.iter().map(|&i| cover.iter().map(|&j| dist[i][j]).collect()).collect();
        let (len, order) = held_karp(&sub);
        let entry = best_per_k.entry(cover.len()).or_insert((f64::INFINITY, Vec::new(), Vec::new()));
        if len < entry.0 - 1e-12 {
            *entry = (len, cover, order);
        }
    }
    let frontier: Vec<(usize, f64)> = best_per_k.iter().map(|(k, (l, _, _))| (*k, *l)).collect();
    let (_, (_, cover, order)) = best_per_k
        .iter()
        .min_by(|a, b| (model.c * *a.0 as f64 + a.1 .0).total_cmp(&(model.c * *b.0 as f64 + b.1 .0)).then(a.0.cmp(b.0)))
        .ok_or(Error::InvalidInput("no cover found".into()))?;
    let scans: Vec<GridPoint> = cover.iter().map(|&i| inst.candidates[i]).collect();
    let visit: Vec<GridPoint> = order.iter().map(|&i| scans[i]).collect();
    let tour = expand_tour(&visit, containment);
    let scan_points: Vec<Point> = scans.iter().map(|g| g.to_point()).collect();
    let solution = Solution::new(tour, &scan_points, model)?;
    Ok(MwpdvOptimum { t_star: solution.total_cost, frontier, solution })
}

/// Closed polyline through `visit` in order; inside a region each hop is a
/// shortest lattice path.
fn expand_tour(visit: &[GridPoint], containment: Option<&Polyomino>) -> Vec<Point> {
    if visit.len() <= 1 {
        return visit.iter().map(|g| g.to_point()).collect();
    }
    let mut out = vec![visit[0]];
    for i in 0..visit.len() {
        let (a, b) = (visit[i], visit[(i + 1) % visit.len()]);
        match containment {
            Some(region) => out.extend(lattice_path(region, a, b).expect("connected region").into_iter().skip(1)),
            None => {
                if a.x != b.x && a.y != b.y {
                    out.push(GridPoint::new(b.x, a.y));
                }
                out.push(b);
            }
        }
    }
    out.iter().map(|g| g.to_point()).collect()
}

/// The two milling lower bounds: the boundary length of the cutter offset
/// and the total length of the strips (rows `y ≡ 0 mod 2`) needed for the
/// pixels that boundary misses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MillingLowerBounds {
    pub l_delta_b: i64,
    pub l_str: i64,
}

pub fn milling_lower_bounds(region: &Polyomino) -> Result<MillingLowerBounds> {
    let loops = crate::milling::trace_offset_boundary(region, 1)?;
    let b = OffsetComplex::new(region, 1)?;
    let p_int = crate::milling::interior_pixels(region, &b, &loops);
    let candidates = strip_decomposition(b.vertices(), 2, 0)?;
    let (strips, _) = crate::milling::select_strips(&b, &candidates, &p_int, &BTreeSet::new());
    Ok(MillingLowerBounds { l_delta_b: loops.iter().map(|l| l.length()).sum(), l_str: strips_length(&strips) })
}

/// Lattice points of the region; the candidate scans of every oracle here.
pub fn candidate_points(region: &Polyomino) -> Vec<GridPoint> {
    region.lattice_points().into_iter().collect()
}

/// Pixels each lattice scan covers under unit L∞ range.
pub fn linf_footprints(region: &Polyomino) -> Vec<(GridPoint, Vec<GridPoint>)> {
    candidate_points(region).into_iter().map(|g| (g, region.footprint(g))).collect()
}

/// Whether L2 unit scans at `scans` (lattice points) cover the pixel under
/// the side criterion.
pub fn l2_lattice_covers_pixel(scans: &BTreeSet<GridPoint>, pixel: GridPoint) -> bool {
    let [a, b, c, d] = pixel_corners(pixel);
    // Corners in cyclic order a, b, d, c.
    let ring = [a, b, d, c];
    (0..4).all(|i| scans.contains(&ring[i]) || scans.contains(&ring[(i + 1) % 4]))
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
    fn min_cover_examples() {
        let m = CostModel::rect(1.0);
        assert_eq!(exact_min_cover(&rect(2, 2), &m, Mode::Milling).unwrap().0, 1);
        assert_eq!(exact_min_cover(&rect(4, 4), &m, Mode::Milling).unwrap().0, 4);
        assert_eq!(exact_min_cover(&rect(4, 1), &m, Mode::Milling).unwrap().0, 2);
    }

    #[test]
    fn l2_cover_is_a_vertex_cover() {
        let m = CostModel::circ_unit(1.0);
        // Pixel sides of a single pixel form a 4-cycle: two opposite corners.
        assert_eq!(exact_min_cover(&rect(1, 1), &m, Mode::Milling).unwrap().0, 2);
        // 2×2 block: the 3×3 lattice grid graph has vertex cover number 4.
        assert_eq!(exact_min_cover(&rect(2, 2), &m, Mode::Milling).unwrap().0, 4);
    }

    #[test]
    fn all_min_covers_of_a_domino() {
        let covers = all_min_covers(&rect(2, 1), &CostModel::rect(1.0), Mode::Milling).unwrap();
        assert_eq!(covers, vec![vec![gp(1, 0)], vec![gp(1, 1)]]);
    }

    #[test]
    fn tours() {
        let m = CostModel::rect(0.0);
        assert_eq!(exact_tour(&[gp(3, 3)], &m, None).unwrap(), 0.0);
        assert_eq!(exact_tour(&[gp(0, 0), gp(2, 3)], &m, None).unwrap(), 10.0);
        let four = [gp(1, 1), gp(1, 3), gp(3, 1), gp(3, 3)];
        assert_eq!(exact_tour(&four, &m, Some(&rect(4, 4))).unwrap(), 8.0);
        let many: Vec<GridPoint> = (0..16).map(|i| gp(i, 0)).collect();
        assert!(matches!(exact_tour(&many, &m, None), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn mwpdv_examples() {
        let m = CostModel::rect(1.0);
        assert_eq!(exact_mwpdv(&rect(1, 1), &m, Mode::Milling).unwrap().t_star, 1.0);
        assert_eq!(exact_mwpdv(&rect(4, 1), &m, Mode::Milling).unwrap().t_star, 6.0);
        let opt = exact_mwpdv(&rect(4, 4), &m, Mode::Milling).unwrap();
        assert_eq!(opt.t_star, 12.0);
        assert_eq!(opt.t_star_for(0.0), 8.0);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(milling_lower_bounds(&rect(4, 4)).unwrap(), MillingLowerBounds { l_delta_b: 8, l_str: 0 });
        assert_eq!(milling_lower_bounds(&rect(2, 2)).unwrap(), MillingLowerBounds { l_delta_b: 0, l_str: 0 });
        assert_eq!(milling_lower_bounds(&rect(6, 4)).unwrap().l_delta_b, 12);
    }
}
