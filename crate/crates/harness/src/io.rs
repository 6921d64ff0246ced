//! Instance and solution files.
//!
//! Both are JSON documents whose keys follow struct declaration order, so the
//! same value always serializes to the same bytes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use mwpdv_core::circular_general::{circular_general_solve, sample_coverage, tour_inside};
use mwpdv_core::circular_grid::{circular_grid_tour, length_certificate};
use mwpdv_core::coverage::{coverage_check, CoverageCertificate};
use mwpdv_core::oracle::{exact_min_completion, exact_mwpdv};
use mwpdv_core::rect_polygon::RectPolygon;
use mwpdv_core::rect_tour::{milling_containment, mwpdv_rect_solve};
use mwpdv_core::{CostModel, Error, GridPoint, Mode, Point, Polyomino, Result, ScanMetric, Solution};
use serde::{Deserialize, Serialize};

use crate::gen::Gadget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Polyomino,
    RectPolygon,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub kind: InstanceKind,
    /// Lower-left corners, for `kind = polyomino`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pixels: Option<Vec<[i64; 2]>>,
    /// Counter-clockwise outline, for `kind = rect_polygon`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 2]>>,
    pub cost: CostModel,
    pub mode: Mode,
    /// Scans imposed from outside the region, as for gadget pieces whose
    /// corridors already hold scans.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixed_scans: Vec<[i64; 2]>,
}

/// The geometry an instance file describes, validated.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Polyomino(Polyomino),
    Polygon(RectPolygon),
}

impl InstanceFile {
    pub fn from_polyomino(name: &str, p: &Polyomino, cost: CostModel, mode: Mode) -> Self {
        Self {
            name: name.into(),
            kind: InstanceKind::Polyomino,
            pixels: Some(p.pixels().iter().map(|g| [g.x, g.y]).collect()),
            vertices: None,
            cost,
            mode,
            fixed_scans: Vec::new(),
        }
    }

    pub fn from_polygon(name: &str, p: &RectPolygon, cost: CostModel, mode: Mode) -> Self {
        Self {
            name: name.into(),
            kind: InstanceKind::RectPolygon,
            pixels: None,
            vertices: Some(p.vertices().iter().map(|v| [v.x, v.y]).collect()),
            cost,
            mode,
            fixed_scans: Vec::new(),
        }
    }

    pub fn from_gadget(g: &Gadget) -> Self {
        let mut f = Self::from_polyomino(g.kind.name(), &g.polyomino, CostModel::rect(1.0), Mode::Milling);
        f.fixed_scans = g.fixed_scans.iter().map(|s| [s.x, s.y]).collect();
        f
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("instance file: {e}")))?;
        f.region()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Checks the schema invariants and builds the region.
    pub fn region(&self) -> Result<Region> {
        self.cost.validate()?;
        match (self.kind, &self.pixels, &self.vertices) {
            (InstanceKind::Polyomino, Some(pixels), None) => {
                let set: BTreeSet<GridPoint> = pixels.iter().map(|&[x, y]| GridPoint::new(x, y)).collect();
                if set.len() != pixels.len() {
                    return Err(Error::InvalidInput("polyomino pixels are not unique".into()));
                }
                Ok(Region::Polyomino(Polyomino::from_set(set)?))
            }
            (InstanceKind::RectPolygon, None, Some(vertices)) => {
                if !self.fixed_scans.is_empty() {
                    return Err(Error::InvalidInput("fixed scans are only supported on polyominoes".into()));
                }
                Ok(Region::Polygon(RectPolygon::new(vertices.iter().map(|&[x, y]| Point::new(x, y)).collect())?))
            }
            (InstanceKind::Polyomino, _, _) => Err(Error::InvalidInput("a polyomino instance needs `pixels` and no `vertices`".into())),
            (InstanceKind::RectPolygon, _, _) => Err(Error::InvalidInput("a rect_polygon instance needs `vertices` and no `pixels`".into())),
        }
    }

    pub fn fixed(&self) -> Vec<GridPoint> {
        self.fixed_scans.iter().map(|&[x, y]| GridPoint::new(x, y)).collect()
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    /// Unit L∞ scans on polyominoes.
    #[serde(rename = "rect")]
    Rect,
    /// Unit disks on the diagonal lattice of a polyomino.
    #[serde(rename = "circ1")]
    Circ1,
    /// Disks of radius r inside a rectilinear polygon.
    #[serde(rename = "circ-r")]
    CircR,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Rect, Algorithm::Circ1, Algorithm::CircR];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Rect => "rect",
            Algorithm::Circ1 => "circ1",
            Algorithm::CircR => "circ-r",
        }
    }

    /// The algorithm that matches an instance's region and scan shape.
    pub fn default_for(instance: &InstanceFile) -> Self {
        match (instance.kind, instance.cost.scan_metric) {
            (InstanceKind::RectPolygon, _) => Algorithm::CircR,
            (InstanceKind::Polyomino, ScanMetric::Linf) => Algorithm::Rect,
            (InstanceKind::Polyomino, ScanMetric::L2) => Algorithm::Circ1,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown algorithm `{s}` (expected rect, circ1 or circ-r)"))
    }
}

/// One inequality or identity a solver guarantees, evaluated on its output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, holds: value <= bound + 1e-9 }
    }

    fn equal(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, holds: (value - bound).abs() <= 1e-9 }
    }
}

/// Exact optimum of a small polyomino and the solver's ratios against it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRatios {
    pub s_min: usize,
    pub l_star: f64,
    pub t_star: f64,
    pub ratio_scans: f64,
    pub ratio_length: f64,
    pub ratio_cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub coverage: CoverageCertificate,
    /// Tour and scans stay inside the region; `None` in lawn-mowing mode.
    pub contained: Option<bool>,
    pub checks: Vec<BoundCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRatios>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub algorithm: Algorithm,
    pub version: String,
    pub instance: String,
    pub cost: CostModel,
    pub mode: Mode,
    pub tour: Vec<[f64; 2]>,
    pub scans: Vec<[f64; 2]>,
    pub tour_length: f64,
    pub scan_count: usize,
    pub total_cost: f64,
    pub certificate: Certificate,
}

impl SolutionFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("solution file: {e}")))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn tour_points(&self) -> Vec<Point> {
        self.tour.iter().map(|&[x, y]| Point::new(x, y)).collect()
    }

    pub fn scan_points(&self) -> Vec<Point> {
        self.scans.iter().map(|&[x, y]| Point::new(x, y)).collect()
    }

    /// Rebuilds the in-memory solution, re-measuring the tour.
    pub fn solution(&self) -> Result<Solution> {
        Solution::new(self.tour_points(), &self.scan_points(), &self.cost)
    }
}

/// Settings of one `solve` run.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    /// Overrides the instance's scan cost.
    pub c: Option<f64>,
    /// Overrides the instance's mode.
    pub mode: Option<Mode>,
    /// Also run the exact oracle and store ratios.
    pub with_oracle: bool,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        Self { algorithm, c: None, mode: None, with_oracle: false }
    }
}

fn effective(instance: &InstanceFile, opts: &SolveOptions) -> Result<(CostModel, Mode)> {
    let mut cost = instance.cost;
    if let Some(c) = opts.c {
        cost.c = c;
    }
    cost.validate()?;
    Ok((cost, opts.mode.unwrap_or(instance.mode)))
}

fn polyomino_of(region: &Region, alg: Algorithm) -> Result<Polyomino> {
    match region {
        Region::Polyomino(p) => Ok(p.clone()),
        Region::Polygon(_) => Err(Error::InvalidInput(format!("algorithm {alg} needs a polyomino instance"))),
    }
}

fn polygon_of(region: &Region) -> Result<RectPolygon> {
    match region {
        Region::Polygon(p) => Ok(p.clone()),
        Region::Polyomino(p) => RectPolygon::from_polyomino(p),
    }
}

/// Runs the solver and returns its solution with the solver-specific checks.
fn run_solver(region: &Region, alg: Algorithm, cost: &CostModel, mode: Mode) -> Result<(Solution, Vec<BoundCheck>)> {
    match alg {
        Algorithm::Rect => {
            let p = polyomino_of(region, alg)?;
            let out = mwpdv_rect_solve(&p, cost, mode)?;
            let d = &out.decomposition;
            let checks = vec![BoundCheck::equal(
                "tour_length = l_delta_b + l_str + l_m + l_conn",
                out.solution.tour_length,
                d.tour_length() as f64,
            )];
            Ok((out.solution, checks))
        }
        Algorithm::Circ1 => {
            let p = polyomino_of(region, alg)?;
            if mode != Mode::Milling {
                return Err(Error::InvalidInput("circ1 supports milling mode only".into()));
            }
            let out = circular_grid_tour(&p, cost)?;
            let cert = length_certificate(&p, &out.solution)?;
            let mut checks = vec![
                BoundCheck::at_most("scan_count <= N + 1", out.solution.scan_count as f64, p.pixel_count() as f64 + 1.0),
                BoundCheck::at_most("tour_length <= l_bound + l_strips + l_delta1", cert.l_tour, (cert.l_bound + cert.l_strips + cert.l_delta1) as f64),
                BoundCheck::at_most("l_strips <= 2 l_str", cert.l_strips as f64, 2.0 * cert.l_str as f64),
            ];
            if !cert.has_holes {
                checks.push(BoundCheck::equal("l_bound = l_delta1 + 8", cert.l_bound as f64, (cert.l_delta1 + 8) as f64));
            }
            Ok((out.solution, checks))
        }
        Algorithm::CircR => {
            let poly = polygon_of(region)?;
            if mode != Mode::Milling {
                return Err(Error::InvalidInput("circ-r supports milling mode only".into()));
            }
            let out = circular_general_solve(&poly, cost)?;
            let mut checks = vec![BoundCheck::equal("tour_length = sum of parts", out.solution.tour_length, out.parts_length())];
            if let Some(res) = out.tours.identity_residual() {
                checks.push(BoundCheck::at_most("|l_tr1 + l_tr2 - 2 l_delta_b|", res.abs(), 0.0));
            }
            let ch = &out.charging;
            checks.push(BoundCheck::at_most("strip scans <= 2 l_str / (sqrt3 r) + #strips", ch.strip_scans as f64, ch.strip_bound));
            if let Some(b) = ch.boundary_bound {
                checks.push(BoundCheck::at_most("boundary scans <= 2 l_delta_b / a + 1 + l_delta_b / r", ch.boundary_scans as f64, b));
            }
            Ok((out.solution, checks))
        }
    }
}

/// Coverage and containment of a finished solution, recomputed from scratch.
pub fn verify(region: &Region, solution: &Solution, cost: &CostModel, mode: Mode) -> Result<(CoverageCertificate, Option<bool>)> {
    let scans = solution.scan_points();
    Ok(match region {
        Region::Polyomino(p) => {
            let contained = (mode == Mode::Milling).then(|| milling_containment(p, solution));
            (coverage_check(p, &scans, cost, mode), contained)
        }
        Region::Polygon(poly) => {
            if mode != Mode::Milling || cost.scan_metric != ScanMetric::L2 {
                return Err(Error::InvalidInput("polygon instances are checked for circular scans in milling mode".into()));
            }
            let step = poly.feature_size().min(cost.r) / 64.0;
            let inside = tour_inside(poly, &solution.tour) && scans.iter().all(|&s| poly.contains(s));
            (sample_coverage(poly, &scans, cost.r, step), Some(inside))
        }
    })
}

/// Exact optimum for the instance and the solution's ratios against it.
pub fn oracle_ratios(instance: &InstanceFile, solution: &Solution, cost: &CostModel, mode: Mode) -> Result<OracleRatios> {
    let p = match instance.region()? {
        Region::Polyomino(p) => p,
        Region::Polygon(_) => return Err(Error::InvalidInput("the exact oracle works on polyominoes".into())),
    };
    let opt = exact_mwpdv(&p, cost, mode)?;
    let s_min = opt.frontier.iter().map(|&(k, _)| k).min().unwrap_or(0);
    let l_star = opt.min_length();
    let t_star = opt.t_star_for(cost.c);
    let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else if a > 0.0 { f64::INFINITY } else { 1.0 };
    Ok(OracleRatios {
        s_min,
        l_star,
        t_star,
        ratio_scans: ratio(solution.scan_count as f64, s_min as f64),
        ratio_length: ratio(solution.tour_length, l_star),
        ratio_cost: ratio(solution.total_cost, t_star),
    })
}

/// Solves an instance and certifies the result.
pub fn solve(instance: &InstanceFile, opts: &SolveOptions) -> Result<SolutionFile> {
    let region = instance.region()?;
    if !instance.fixed_scans.is_empty() {
        return Err(Error::InvalidInput("instances with fixed scans are for the oracle only".into()));
    }
    let (cost, mode) = effective(instance, opts)?;
    let (solution, checks) = run_solver(&region, opts.algorithm, &cost, mode)?;
    let (coverage, contained) = verify(&region, &solution, &cost, mode)?;
    let oracle = if opts.with_oracle { Some(oracle_ratios(instance, &solution, &cost, mode)?) } else { None };
    Ok(SolutionFile {
        algorithm: opts.algorithm,
        version: env!("CARGO_PKG_VERSION").into(),
        instance: instance.name.clone(),
        cost,
        mode,
        tour: solution.tour.iter().map(|p| [p.x, p.y]).collect(),
        scans: solution.scans.iter().map(|s| [s.point.x, s.point.y]).collect(),
        tour_length: solution.tour_length,
        scan_count: solution.scan_count,
        total_cost: solution.total_cost,
        certificate: Certificate { coverage, contained, checks, oracle },
    })
}

/// Recomputes a stored certificate: coverage and containment from the
/// file's own tour and scans, solver checks by re-running the algorithm.
pub fn recompute_certificate(instance: &InstanceFile, file: &SolutionFile) -> Result<Certificate> {
    let region = instance.region()?;
    let solution = file.solution()?;
    let (coverage, contained) = verify(&region, &solution, &file.cost, file.mode)?;
    let (_, checks) = run_solver(&region, file.algorithm, &file.cost, file.mode)?;
    let oracle = match file.certificate.oracle {
        Some(_) => Some(oracle_ratios(instance, &solution, &file.cost, file.mode)?),
        None => None,
    };
    Ok(Certificate { coverage, contained, checks, oracle })
}

/// Answer of the `oracle` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub instance: String,
    pub c: f64,
    /// Minimum number of scans inside the region, on top of any fixed ones.
    pub s_min: usize,
    pub cover: Vec<[i64; 2]>,
    /// Tour optimum; absent for instances with fixed scans.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_star: Option<f64>,
}

pub fn run_oracle(instance: &InstanceFile, c: Option<f64>) -> Result<OracleReport> {
    let p = match instance.region()? {
        Region::Polyomino(p) => p,
        Region::Polygon(_) => return Err(Error::InvalidInput("the exact oracle works on polyominoes".into())),
    };
    let mut cost = instance.cost;
    if let Some(c) = c {
        cost.c = c;
    }
    cost.validate()?;
    let (s_min, cover) = exact_min_completion(&p, &cost, &instance.fixed())?;
    let (l_star, t_star) = if instance.fixed_scans.is_empty() {
        let opt = exact_mwpdv(&p, &cost, instance.mode)?;
        (Some(opt.min_length()), Some(opt.t_star_for(cost.c)))
    } else {
        (None, None)
    };
    Ok(OracleReport { instance: instance.name.clone(), c: cost.c, s_min, cover: cover.iter().map(|g| [g.x, g.y]).collect(), l_star, t_star })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square4() -> InstanceFile {
        InstanceFile::from_polyomino("square-4", &Polyomino::rectangle(0, 0, 4, 4).unwrap(), CostModel::rect(1.0), Mode::Milling)
    }

    #[test]
    fn instance_round_trip() {
        let f = square4();
        let text = f.to_json();
        assert_eq!(InstanceFile::parse(&text).unwrap(), f);
        assert!(!text.contains("vertices"));
    }

    #[test]
    fn duplicate_pixels_rejected() {
        let mut f = square4();
        f.pixels.as_mut().unwrap().push([0, 0]);
        assert!(matches!(f.region(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn non_rectilinear_polygon_rejected() {
        let text = r#"{"name":"tri","kind":"rect_polygon","vertices":[[0,0],[2,0],[0,2]],
            "cost":{"c":1,"r":1,"scan_metric":"l2","tour_metric":"l2"},"mode":"milling"}"#;
        assert!(InstanceFile::parse(text).is_err());
    }

    #[test]
    fn rect_solution_on_square() {
        let f = square4();
        let s = solve(&f, &SolveOptions::new(Algorithm::Rect)).unwrap();
        assert_eq!(s.scan_count, 5);
        assert!(s.certificate.coverage.covered);
        assert_eq!(s.certificate.contained, Some(true));
        assert!(s.certificate.checks.iter().all(|c| c.holds));
        assert_eq!(SolutionFile::parse(&s.to_json()).unwrap(), s);
        assert_eq!(recompute_certificate(&f, &s).unwrap(), s.certificate);
    }

    #[test]
    fn oracle_on_square() {
        let r = run_oracle(&square4(), Some(1.0)).unwrap();
        assert_eq!((r.s_min, r.t_star), (4, Some(12.0)));
    }
}
