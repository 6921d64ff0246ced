//! Scan sets for unit L∞ range on polyominoes in four phases: even 2×2
//! blocks, greedy odd 2×2 blocks, greedy triples, then a maximum matching on
//! what is left. The result is at most 2.5 times a minimum scan set.

use std::collections::BTreeSet;

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::coverage::coverage_check;
use crate::error::{Error, Result};
use crate::geometry::{cells_around, pixel_corners, share_corner, CostModel, GridPoint, Mode, Pixel, PixelSet, Point, Polyomino};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCoverTrace {
    pub s4e: Vec<GridPoint>,
    pub s4o: Vec<GridPoint>,
    pub s3: Vec<GridPoint>,
    pub s2: Vec<GridPoint>,
    pub s1: Vec<GridPoint>,
    /// The pixel pair behind each entry of `s2`.
    pub s2_pairs: Vec<(Pixel, Pixel)>,
    /// The pixel behind each entry of `s1`.
    pub s1_pixels: Vec<Pixel>,
    /// Residual after the even blocks.
    pub p_4e: PixelSet,
    /// Residual after the odd blocks.
    pub p_4e4o: PixelSet,
    /// Residual after the triples.
    pub p_4e4o3: PixelSet,
}

impl ScanCoverTrace {
    /// All scans in phase order.
    pub fn scans(&self) -> Vec<GridPoint> {
        [&self.s4e, &self.s4o, &self.s3, &self.s2, &self.s1].into_iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.s4e.len() + self.s4o.len() + self.s3.len() + self.s2.len() + self.s1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Lattice points with both coordinates even whose 2×2 block lies in `region`.
pub fn even_quadruples(region: &Polyomino) -> Vec<GridPoint> {
    let candidates: BTreeSet<GridPoint> = region.pixels().iter().map(|p| p.offset(1, 1)).collect();
    candidates
        .into_iter()
        .filter(|g| g.x.rem_euclid(2) == 0 && g.y.rem_euclid(2) == 0)
        .filter(|g| cells_around(*g).iter().all(|c| region.contains(*c)))
        .collect()
}

fn candidate_centers(residual: &PixelSet) -> BTreeSet<GridPoint> {
    residual.iter().flat_map(|p| pixel_corners(*p)).collect()
}

fn residual_footprint(residual: &PixelSet, g: GridPoint) -> Vec<Pixel> {
    cells_around(g).into_iter().filter(|c| residual.contains(c)).collect()
}

/// Disjoint 2×2 blocks inside `residual`, taken greedily in lexicographic
/// order of their centres.
pub fn greedy_odd_quadruples(residual: &PixelSet) -> Vec<GridPoint> {
    greedy_by_count(residual, 4)
}

/// Scans covering exactly three pixels of `residual`, taken greedily in
/// lexicographic order with the residual shrinking as scans are chosen.
pub fn greedy_triples(residual: &PixelSet) -> Vec<GridPoint> {
    greedy_by_count(residual, 3)
}

fn greedy_by_count(residual: &PixelSet, count: usize) -> Vec<GridPoint> {
    let mut left = residual.clone();
    let mut chosen = Vec::new();
    for g in candidate_centers(residual) {
        let cells = residual_footprint(&left, g);
        if cells.len() == count {
            for c in cells {
                left.remove(&c);
            }
            chosen.push(g);
        }
    }
    chosen
}

/// Maximum matching of a general undirected graph on `0..n`; pairs are
/// returned with the smaller index first, sorted.
pub fn max_matching(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut graph = UnGraph::<(), ()>::with_capacity(n, edges.len());
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for &(a, b) in edges {
        if a != b {
            graph.add_edge(nodes[a], nodes[b], ());
        }
    }
    let matching = maximum_matching(&graph);
    let mut pairs: Vec<(usize, usize)> = matching
        .edges()
        .map(|(a, b)| {
            let (a, b) = (a.index(), b.index());
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Maximum matching on the residual pixels, joining pixels one scan can
/// cover together (they share a corner). Returns matched pairs and the
/// unmatched pixels.
pub fn pixel_matching(residual: &PixelSet) -> (Vec<(Pixel, Pixel)>, Vec<Pixel>) {
    let pixels: Vec<Pixel> = residual.iter().copied().collect();
    let mut edges = Vec::new();
    for i in 0..pixels.len() {
        for j in i + 1..pixels.len() {
            if share_corner(pixels[i], pixels[j]) {
                edges.push((i, j));
            }
        }
    }
    let pairs = max_matching(pixels.len(), &edges);
    let mut matched = vec![false; pixels.len()];
    for &(a, b) in &pairs {
        matched[a] = true;
        matched[b] = true;
    }
    let singles = pixels.iter().zip(&matched).filter(|(_, m)| !**m).map(|(p, _)| *p).collect();
    (pairs.into_iter().map(|(a, b)| (pixels[a], pixels[b])).collect(), singles)
}

fn common_corners(a: Pixel, b: Pixel) -> Vec<GridPoint> {
    let cb: BTreeSet<GridPoint> = pixel_corners(b).into_iter().collect();
    let mut out: Vec<GridPoint> = pixel_corners(a).into_iter().filter(|g| cb.contains(g)).collect();
    out.sort();
    out
}

/// Double scans, single scans, the pixel pairs and the single pixels.
pub type MatchingCover = (Vec<GridPoint>, Vec<GridPoint>, Vec<(Pixel, Pixel)>, Vec<Pixel>);

/// Doubles and singles for the final residual; each scan centre is the
/// candidate corner minimising `rank` (ties: smallest point).
pub fn matching_cover<K: Ord>(residual: &PixelSet, rank: impl Fn(GridPoint) -> K) -> MatchingCover {
    let (pairs, singles) = pixel_matching(residual);
    let pick = |cands: Vec<GridPoint>| cands.into_iter().min_by(|a, b| rank(*a).cmp(&rank(*b)).then(a.cmp(b))).unwrap();
    let s2 = pairs.iter().map(|&(a, b)| pick(common_corners(a, b))).collect();
    let s1 = singles.iter().map(|&p| pick(pixel_corners(p).to_vec())).collect();
    (s2, s1, pairs, singles)
}

/// The four-phase scan set with lexicographically smallest centres for the
/// flexible doubles and singles.
pub fn scan_cover(region: &Polyomino) -> ScanCoverTrace {
    scan_cover_with(region, |_| ())
}

/// As [`scan_cover`], choosing double and single centres by `rank`.
pub fn scan_cover_with<K: Ord>(region: &Polyomino, rank: impl Fn(GridPoint) -> K) -> ScanCoverTrace {
    let remove = |set: &PixelSet, scans: &[GridPoint]| -> PixelSet {
        let mut out = set.clone();
        for g in scans {
            for c in cells_around(*g) {
                out.remove(&c);
            }
        }
        out
    };
    let s4e = even_quadruples(region);
    let p_4e = remove(region.pixels(), &s4e);
    let s4o = greedy_odd_quadruples(&p_4e);
    let p_4e4o = remove(&p_4e, &s4o);
    let s3 = greedy_triples(&p_4e4o);
    let p_4e4o3 = remove(&p_4e4o, &s3);
    let (s2, s1, s2_pairs, s1_pixels) = matching_cover(&p_4e4o3, rank);
    ScanCoverTrace { s4e, s4o, s3, s2, s1, s2_pairs, s1_pixels, p_4e, p_4e4o, p_4e4o3 }
}

/// Moves unit L∞ scans onto lattice points without losing coverage or
/// changing their number. Scans are shifted one at a time, first all
/// x-coordinates then all y-coordinates, each to its floor if that keeps the
/// region covered and otherwise to its ceiling. If neither keeps coverage for
/// some scan, the result is a minimum lattice cover padded to the input size.
pub fn snap_scans_to_grid(region: &Polyomino, scans: &[Point]) -> Result<Vec<GridPoint>> {
    let model = CostModel::rect(0.0);
    let covers = |s: &[Point]| coverage_check(region, s, &model, Mode::Lawnmowing);
    let cert = covers(scans);
    if !cert.covered {
        return Err(Error::NotCovering(cert.witness.unwrap()));
    }
    let mut current = scans.to_vec();
    let mut order: Vec<usize> = (0..current.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (current[a], current[b]);
        p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
    });
    let mut stuck = false;
    'axes: for axis in 0..2 {
        for &i in &order {
            let v = if axis == 0 { current[i].x } else { current[i].y };
            if (v - v.round()).abs() <= crate::geometry::EPS {
                let snapped = v.round();
                set_axis(&mut current[i], axis, snapped);
                continue;
            }
            let old = current[i];
            let mut moved = false;
            for target in [v.floor(), v.ceil()] {
                set_axis(&mut current[i], axis, target);
                if covers(&current).covered {
                    moved = true;
                    break;
                }
                current[i] = old;
            }
            if !moved {
                stuck = true;
                break 'axes;
            }
        }
    }
    if !stuck {
        return Ok(current.iter().map(|p| p.as_grid().expect("snapped")).collect());
    }
    let (_, mut witness) = crate::oracle::exact_min_cover(region, &model, Mode::Lawnmowing)?;
    let spare: Vec<GridPoint> = region.lattice_points().into_iter().filter(|g| !witness.contains(g)).collect();
    let mut spare = spare.into_iter();
    while witness.len() < scans.len() {
        witness.push(spare.next().unwrap_or(witness[0]));
    }
    Ok(witness)
}

fn set_axis(p: &mut Point, axis: usize, v: f64) {
    if axis == 0 {
        p.x = v;
    } else {
        p.y = v;
    }
}
