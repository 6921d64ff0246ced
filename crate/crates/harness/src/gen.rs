//! Instance generators: seeded random polyominoes, exhaustive enumeration of
//! small free polyominoes, and the hardness gadget fixtures.

use std::collections::BTreeSet;

use mwpdv_core::rect_polygon::RectPolygon;
use mwpdv_core::{GridPoint, PixelSet, Point, Polyomino};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use rand_chacha::ChaCha8Rng;

/// Grows a connected polyomino of exactly `n_pixels` pixels from the origin,
/// adding one random neighbouring pixel at a time. With probability
/// `shape_bias` the new pixel is drawn only from candidates touching a single
/// existing pixel, which favours corridors and branches.
pub fn gen_random_polyomino(seed: u64, n_pixels: usize, shape_bias: f64) -> Polyomino {
    let n_pixels = n_pixels.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: PixelSet = BTreeSet::from([GridPoint::new(0, 0)]);
    while cells.len() < n_pixels {
        let frontier: BTreeSet<GridPoint> = cells.iter().flat_map(|p| p.neighbors()).filter(|q| !cells.contains(q)).collect();
        let thin: Vec<GridPoint> = frontier.iter().copied().filter(|q| q.neighbors().iter().filter(|r| cells.contains(r)).count() == 1).collect();
        let pool: Vec<GridPoint> = if !thin.is_empty() && rng.random::<f64>() < shape_bias { thin } else { frontier.into_iter().collect() };
        let pick = pool[rng.random_range(0..pool.len())];
        cells.insert(pick);
    }
    Polyomino::new(cells).expect("non-empty")
}

fn normalize(cells: &[GridPoint]) -> Vec<GridPoint> {
    let min_x = cells.iter().map(|p| p.x).min().unwrap();
    let min_y = cells.iter().map(|p| p.y).min().unwrap();
    let mut out: Vec<GridPoint> = cells.iter().map(|p| GridPoint::new(p.x - min_x, p.y - min_y)).collect();
    out.sort();
    out
}

/// Canonical representative under the eight symmetries of the square.
fn canonical(cells: &[GridPoint]) -> Vec<GridPoint> {
    let transforms: [fn(GridPoint) -> GridPoint; 8] = [
        |p| p,
        |p| GridPoint::new(-p.y, p.x),
        |p| GridPoint::new(-p.x, -p.y),
        |p| GridPoint::new(p.y, -p.x),
        |p| GridPoint::new(-p.x, p.y),
        |p| GridPoint::new(p.x, -p.y),
        |p| GridPoint::new(p.y, p.x),
        |p| GridPoint::new(-p.y, -p.x),
    ];
    transforms.iter().map(|t| normalize(&cells.iter().map(|p| t(*p)).collect::<Vec<_>>())).min().unwrap()
}

/// All free polyominoes (one per congruence class, in canonical placement)
/// with `1..=max_pixels` pixels, ordered by size and then by pixel list.
pub fn free_polyominoes(max_pixels: usize) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let mut level: BTreeSet<Vec<GridPoint>> = BTreeSet::from([vec![GridPoint::new(0, 0)]]);
    for size in 1..=max_pixels {
        out.extend(level.iter().map(|c| Polyomino::new(c.iter().copied()).unwrap()));
        if size == max_pixels {
            break;
        }
        let mut next = BTreeSet::new();
        for cells in &level {
            let set: BTreeSet<GridPoint> = cells.iter().copied().collect();
            for q in cells.iter().flat_map(|p| p.neighbors()) {
                if !set.contains(&q) {
                    let mut grown = cells.clone();
                    grown.push(q);
                    next.insert(canonical(&grown));
                }
            }
        }
        level = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Variable,
    VariableTrue,
    VariableFalse,
    Clause,
    ClauseSat,
    ClauseUnsat,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 6] =
        [GadgetKind::Variable, GadgetKind::VariableTrue, GadgetKind::VariableFalse, GadgetKind::Clause, GadgetKind::ClauseSat, GadgetKind::ClauseUnsat];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Variable => "variable",
            GadgetKind::VariableTrue => "variable_true",
            GadgetKind::VariableFalse => "variable_false",
            GadgetKind::Clause => "clause",
            GadgetKind::ClauseSat => "clause_sat",
            GadgetKind::ClauseUnsat => "clause_unsat",
        }
    }
}

impl std::str::FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GadgetKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown gadget kind `{s}`"))
    }
}

/// A hardness fixture: the region plus scans already fixed by a truth
/// setting (empty for the bare pieces).
#[derive(Clone, Debug, PartialEq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub polyomino: Polyomino,
    pub fixed_scans: Vec<GridPoint>,
}

fn cells(list: &[(i64, i64)]) -> Polyomino {
    Polyomino::new(list.iter().map(|&(x, y)| GridPoint::new(x, y))).expect("non-empty")
}

/// Variable piece: a plus-shaped hub, coverable by two scans in exactly two
/// ways (one diagonal pair or the other), with a hooked corridor on the west
/// whose scan is the same in both.
pub fn variable_piece() -> Polyomino {
    cells(&[(0, 0), (0, 1), (1, 1), (2, 1), (3, 0), (3, 1), (3, 2), (4, 1)])
}

/// The two optimal placements on the variable piece: `true` then `false`.
pub fn variable_placements() -> [Vec<GridPoint>; 2] {
    let g = GridPoint::new;
    [vec![g(1, 1), g(3, 1), g(4, 2)], vec![g(1, 1), g(3, 2), g(4, 1)]]
}

/// Clause piece: an eight-pixel tripod of width 1 whose three arm ends each
/// meet a one-pixel stub of an incoming literal corridor (west, north, east).
pub fn clause_piece() -> Polyomino {
    cells(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (1, 4), (2, 3), (3, 3), (-1, 0), (1, 5), (4, 3)])
}

/// Corridor scans for the three literals. A true literal's scan is pushed
/// into the clause and also covers the arm end; a false one covers only its
/// stub.
pub fn clause_literal_scans(literals: [bool; 3]) -> Vec<GridPoint> {
    let g = GridPoint::new;
    let choices = [(g(0, 0), g(-1, 0)), (g(1, 5), g(1, 6)), (g(4, 3), g(5, 3))];
    let mut out: Vec<GridPoint> = literals.iter().zip(choices).map(|(&t, (yes, no))| if t { yes } else { no }).collect();
    out.sort();
    out
}

pub fn gen_gadget(kind: GadgetKind) -> Gadget {
    let (polyomino, fixed_scans) = match kind {
        GadgetKind::Variable => (variable_piece(), Vec::new()),
        GadgetKind::VariableTrue => (variable_piece(), variable_placements()[0].clone()),
        GadgetKind::VariableFalse => (variable_piece(), variable_placements()[1].clone()),
        GadgetKind::Clause => (clause_piece(), Vec::new()),
        GadgetKind::ClauseSat => (clause_piece(), clause_literal_scans([true, false, false])),
        GadgetKind::ClauseUnsat => (clause_piece(), clause_literal_scans([false, false, false])),
    };
    Gadget { kind, polyomino, fixed_scans }
}

/// Radius-to-feature-size ratios of the polygon fixtures.
pub const FIXTURE_RATIOS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// A named rectilinear polygon with its scan radius.
#[derive(Clone, Debug)]
pub struct PolygonFixture {
    pub name: String,
    pub polygon: RectPolygon,
    pub r: f64,
}

fn poly(points: &[(f64, f64)]) -> RectPolygon {
    RectPolygon::new(points.iter().map(|&(x, y)| Point::new(x, y)).collect()).expect("fixture polygon is valid")
}

/// Square, L, U, comb and staircase outlines with `r = 1`, each with one
/// corner notched by an `a × a` step so that the shortest edge is exactly
/// `a = r / ratio`. Every part is wide enough that the offsets at `r/2`,
/// `r` and `3r/2` keep the outline's shape.
pub fn polygon_fixtures() -> Vec<PolygonFixture> {
    let mut out = Vec::new();
    for ratio in FIXTURE_RATIOS {
        let a = 1.0 / ratio;
        let shapes: [(&str, Vec<(f64, f64)>); 5] = [
            ("square", vec![(0.0, 0.0), (8.0 - a, 0.0), (8.0 - a, a), (8.0, a), (8.0, 8.0), (0.0, 8.0)]),
            ("l", vec![(0.0, 0.0), (12.0 - a, 0.0), (12.0 - a, a), (12.0, a), (12.0, 6.0), (6.0, 6.0), (6.0, 12.0), (0.0, 12.0)]),
            (
                "u",
                vec![(0.0, 0.0), (15.0 - a, 0.0), (15.0 - a, a), (15.0, a), (15.0, 13.0), (10.0, 13.0), (10.0, 6.0), (5.0, 6.0), (5.0, 13.0), (0.0, 13.0)],
            ),
            (
                "comb",
                vec![
                    (0.0, 0.0),
                    (22.0 - a, 0.0),
                    (22.0 - a, a),
                    (22.0, a),
                    (22.0, 16.0),
                    (17.0, 16.0),
                    (17.0, 6.0),
                    (14.0, 6.0),
                    (14.0, 16.0),
                    (9.0, 16.0),
                    (9.0, 6.0),
                    (6.0, 6.0),
                    (6.0, 16.0),
                    (0.0, 16.0),
                ],
            ),
            ("staircase", {
                let mut v = vec![(0.0, 0.0), (12.0, 0.0), (12.0, 6.0)];
                for k in 1..=4 {
                    let k = k as f64;
                    v.push((12.0 - k * a, 6.0 + (k - 1.0) * a));
                    v.push((12.0 - k * a, 6.0 + k * a));
                }
                v.push((0.0, 6.0 + 4.0 * a));
                v
            }),
        ];
        for (name, pts) in shapes {
            out.push(PolygonFixture { name: format!("{name}-r/a={ratio}"), polygon: poly(&pts), r: 1.0 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mwpdv_core::oracle::{all_min_completions, all_min_covers, exact_min_completion};
    use mwpdv_core::{CostModel, Mode};

    #[test]
    fn variable_has_two_optima() {
        let m = CostModel::rect(1.0);
        let covers = all_min_covers(&variable_piece(), &m, Mode::Milling).unwrap();
        let mut expected = variable_placements().to_vec();
        expected.sort();
        assert_eq!(covers, expected);
    }

    #[test]
    fn clause_needs_three_iff_satisfied() {
        let m = CostModel::rect(1.0);
        let p = clause_piece();
        for bits in 0..8u8 {
            let lits = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
            let (k, _) = exact_min_completion(&p, &m, &clause_literal_scans(lits)).unwrap();
            assert_eq!(k, if bits == 0 { 4 } else { 3 }, "{lits:?}");
        }
        assert!(!all_min_completions(&p, &m, &clause_literal_scans([false; 3])).unwrap().is_empty());
    }

    #[test]
    fn free_polyomino_counts() {
        let all = free_polyominoes(8);
        let mut counts = [0usize; 9];
        for p in &all {
            counts[p.pixel_count()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 5, 12, 35, 108, 369]);
    }

    #[test]
    fn random_generator_basics() {
        assert_eq!(gen_random_polyomino(1, 1, 0.0).pixels().iter().copied().collect::<Vec<_>>(), vec![GridPoint::new(0, 0)]);
        let a = gen_random_polyomino(7, 30, 0.5);
        assert_eq!(a, gen_random_polyomino(7, 30, 0.5));
        assert_eq!(a.pixel_count(), 30);
        assert!(a.is_connected());
    }
}
