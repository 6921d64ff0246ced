use std::collections::BTreeSet;

use mwpdv_core::circular_general::{circular_general_solve, sample_coverage};
use mwpdv_core::circular_grid::{circular_grid_tour, kershner_lower_bound};
use mwpdv_core::coverage::coverage_check;
use mwpdv_core::euler::euler_circuit;
use mwpdv_core::oracle::{exact_min_cover, held_karp};
use mwpdv_core::rect_polygon::RectPolygon;
use mwpdv_core::rect_tour::{milling_containment, mwpdv_rect_solve};
use mwpdv_core::scan_cover::{max_matching, scan_cover};
use mwpdv_core::{CostModel, GridPoint, Mode, Point, Polyomino};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random connected polyomino grown pixel by pixel.
fn grown(seed: u64, n: usize) -> Polyomino {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = BTreeSet::from([GridPoint::new(0, 0)]);
    while cells.len() < n {
        let frontier: Vec<GridPoint> = cells.iter().flat_map(|p| p.neighbors()).filter(|q| !cells.contains(q)).collect::<BTreeSet<_>>().into_iter().collect();
        cells.insert(frontier[rng.random_range(0..frontier.len())]);
    }
    Polyomino::from_set(cells).unwrap()
}

fn brute_matching(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(i: usize, used: u32, edges: &[(usize, usize)]) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(i + 1, used, edges);
        let (a, b) = edges[i];
        if a != b && used & (1 << a) == 0 && used & (1 << b) == 0 {
            skip.max(1 + go(i + 1, used | 1 << a | 1 << b, edges))
        } else {
            skip
        }
    }
    assert!(n <= 32);
    go(0, 0, edges)
}

fn brute_tour(d: &[Vec<f64>]) -> f64 {
    fn go(cur: usize, left: &mut Vec<usize>, d: &[Vec<f64>]) -> f64 {
        if left.is_empty() {
            return d[cur][0];
        }
        let mut best = f64::INFINITY;
        for i in 0..left.len() {
            let k = left.remove(i);
            best = best.min(d[cur][k] + go(k, left, d));
            left.insert(i, k);
        }
        best
    }
    if d.len() <= 1 {
        return 0.0;
    }
    go(0, &mut (1..d.len()).collect(), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rect_solution_is_sound(seed in any::<u64>(), n in 1usize..36, c in 0.0f64..5.0) {
        let p = grown(seed, n);
        let model = CostModel::rect(c);
        let out = mwpdv_rect_solve(&p, &model, Mode::Milling).unwrap();
        let sol = &out.solution;
        prop_assert!(coverage_check(&p, &sol.scan_points(), &model, Mode::Milling).covered);
        prop_assert!(milling_containment(&p, sol));
        prop_assert!((sol.tour_length - out.decomposition.tour_length() as f64).abs() < 1e-9);
        prop_assert_eq!(sol.scan_count, out.trace.len());
        prop_assert!((sol.total_cost - (c * sol.scan_count as f64 + sol.tour_length)).abs() < 1e-9);
    }

    #[test]
    fn quadruple_blocks_are_disjoint_and_inside(seed in any::<u64>(), n in 1usize..40) {
        let p = grown(seed, n);
        let t = scan_cover(&p);
        let mut seen = BTreeSet::new();
        for g in t.s4e.iter().chain(&t.s4o) {
            for px in [g.offset(-1, -1), g.offset(0, -1), g.offset(-1, 0), *g] {
                prop_assert!(p.contains(px));
                prop_assert!(seen.insert(px));
            }
        }
    }

    #[test]
    fn scan_cover_within_two_and_a_half(seed in any::<u64>(), n in 1usize..14) {
        let p = grown(seed, n);
        let model = CostModel::rect(1.0);
        let (s_min, cover) = exact_min_cover(&p, &model, Mode::Milling).unwrap();
        let pts: Vec<Point> = cover.iter().map(|g| g.to_point()).collect();
        prop_assert!(coverage_check(&p, &pts, &model, Mode::Milling).covered);
        let s = scan_cover(&p).len();
        prop_assert!(s_min <= s);
        prop_assert!(s <= (2.5 * s_min as f64).ceil() as usize);
    }

    #[test]
    fn diagonal_tour_covers(seed in any::<u64>(), n in 1usize..40) {
        let p = grown(seed, n);
        let model = CostModel::circ_unit(1.0);
        let t = circular_grid_tour(&p, &model).unwrap();
        prop_assert!(coverage_check(&p, &t.solution.scan_points(), &model, Mode::Milling).covered);
        prop_assert!(milling_containment(&p, &t.solution));
        prop_assert!(t.solution.scan_count <= p.pixel_count() + 1);
        prop_assert!(t.solution.scan_count >= kershner_lower_bound(p.pixel_count(), 1.0));
    }

    #[test]
    fn polygon_outline_matches_pixels(seed in any::<u64>(), n in 1usize..30) {
        let p = grown(seed, n);
        prop_assume!(!p.has_holes());
        if let Ok(poly) = RectPolygon::from_polyomino(&p) {
            prop_assert!((poly.area() - p.pixel_count() as f64).abs() < 1e-9);
            prop_assert!((poly.perimeter() - p.perimeter() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn matching_is_maximum(n in 1usize..11, raw in prop::collection::vec((0usize..11, 0usize..11), 0..24)) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let m = max_matching(n, &edges);
        let mut used = BTreeSet::new();
        for &(a, b) in &m {
            prop_assert!(edges.contains(&(a, b)) || edges.contains(&(b, a)));
            prop_assert!(used.insert(a) && used.insert(b));
        }
        prop_assert_eq!(m.len(), brute_matching(n, &edges));
    }

    #[test]
    fn held_karp_matches_enumeration(pts in prop::collection::vec((-6i64..6, -6i64..6), 1..7)) {
        let d: Vec<Vec<f64>> = pts.iter().map(|a| pts.iter().map(|b| ((a.0 - b.0).abs() + (a.1 - b.1).abs()) as f64).collect()).collect();
        let (len, order) = held_karp(&d);
        prop_assert!((len - brute_tour(&d)).abs() < 1e-9);
        let walked: f64 = (0..order.len()).map(|i| d[order[i]][order[(i + 1) % order.len()]]).sum();
        prop_assert!((walked - len).abs() < 1e-9);
    }

    #[test]
    fn euler_circuit_uses_every_edge_once(cycles in prop::collection::vec(prop::collection::vec(0u8..6, 2..6), 1..5)) {
        // A union of closed walks through a shared hub has only even degrees
        // and is connected.
        let mut edges = Vec::new();
        for c in &cycles {
            let walk: Vec<u8> = std::iter::once(0).chain(c.iter().copied()).chain(std::iter::once(0)).collect();
            edges.extend(walk.windows(2).map(|w| (w[0], w[1])));
        }
        let circuit = euler_circuit(&edges, Some(0)).unwrap();
        prop_assert_eq!(circuit.len(), edges.len() + 1);
        prop_assert_eq!(circuit.first(), circuit.last());
        let mut left: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        left.sort();
        let mut walked: Vec<(u8, u8)> = circuit.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        walked.sort();
        prop_assert_eq!(left, walked);
    }
}

/// The polygon construction on a grid square and the lattice construction
/// solve the same covering problem; both must pass both coverage checks.
#[test]
fn square_four_by_both_circular_solvers() {
    let p = Polyomino::rectangle(0, 0, 4, 4).unwrap();
    let poly = RectPolygon::rectangle(0.0, 0.0, 4.0, 4.0).unwrap();
    let grid = circular_grid_tour(&p, &CostModel::circ_unit(1.0)).unwrap();
    let general = circular_general_solve(&poly, &CostModel::circ(1.0, 1.0)).unwrap();
    for scans in [grid.solution.scan_points(), general.solution.scan_points()] {
        assert!(coverage_check(&p, &scans, &CostModel::circ(1.0, 1.0), Mode::Milling).covered);
        assert!(sample_coverage(&poly, &scans, 1.0, 1.0 / 64.0).covered);
    }
    assert_eq!(grid.solution.scan_count, 13);
    assert!(general.tours.delta_b.is_some());
}

#[test]
fn lawn_mowing_rect_solution_covers() {
    for n in [5, 12, 25] {
        let p = grown(n as u64, n);
        let model = CostModel::rect(1.0);
        let out = mwpdv_rect_solve(&p, &model, Mode::Lawnmowing).unwrap();
        assert!(coverage_check(&p, &out.solution.scan_points(), &model, Mode::Lawnmowing).covered);
    }
}

/// Without a skeleton the single scan must still sit next to the triple.
#[test]
fn l_tetromino_tour_is_short() {
    let p = Polyomino::new([(-2, 0), (-1, 0), (0, 0), (0, 1)].map(|(x, y)| GridPoint::new(x, y))).unwrap();
    let out = mwpdv_rect_solve(&p, &CostModel::rect(1.0), Mode::Milling).unwrap();
    assert_eq!((out.solution.scan_count, out.solution.tour_length), (2, 2.0));
}
