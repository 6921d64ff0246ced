//! Ratio benchmark over a directory of instance files.

use std::fs;
use std::path::Path;

use mwpdv_core::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::{oracle_ratios, solve, Algorithm, InstanceFile, OracleRatios, SolveOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub name: String,
    pub algorithm: Algorithm,
    pub scan_count: usize,
    pub tour_length: f64,
    pub total_cost: f64,
    pub covered: bool,
    pub contained: Option<bool>,
    /// Every solver-specific check in the certificate holds.
    pub checks_hold: bool,
    pub oracle: Option<OracleRatios>,
    /// Coverage, containment and the proven ratio bounds all hold.
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchError {
    pub name: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub version: String,
    pub entries: Vec<BenchEntry>,
    pub errors: Vec<BenchError>,
    /// Names of entries with `within_bound == false`.
    pub failures: Vec<String>,
}

/// Proven approximation bound of an algorithm against an exact optimum.
pub fn within_ratio_bound(alg: Algorithm, scans: usize, length: f64, cost: f64, o: &OracleRatios) -> bool {
    const TOL: f64 = 1e-9;
    match alg {
        Algorithm::Rect => {
            scans <= (2.5 * o.s_min as f64).ceil() as usize && length <= 2.5 * o.l_star + TOL && cost <= 2.5 * o.t_star + TOL
        }
        Algorithm::Circ1 => {
            (o.s_min < 2 || scans <= 4 * o.s_min) && length <= 4.0 * o.l_star + 8.0 + TOL && cost <= 4.0 * o.t_star + 8.0 + TOL
        }
        // No exact optimum exists for continuous polygons.
        Algorithm::CircR => true,
    }
}

/// Solves one instance with the algorithm matching it and compares with
/// the exact oracle when the instance is small enough.
pub fn bench_instance(instance: &InstanceFile) -> Result<BenchEntry> {
    let alg = Algorithm::default_for(instance);
    let sol = solve(instance, &SolveOptions::new(alg))?;
    let solution = sol.solution()?;
    let oracle = match oracle_ratios(instance, &solution, &sol.cost, sol.mode) {
        Ok(o) => Some(o),
        Err(Error::InstanceTooLarge(_)) => None,
        Err(Error::InvalidInput(_)) if alg == Algorithm::CircR => None,
        Err(e) => return Err(e),
    };
    let cert = &sol.certificate;
    let ratios_ok = oracle.as_ref().is_none_or(|o| within_ratio_bound(alg, sol.scan_count, sol.tour_length, sol.total_cost, o));
    Ok(BenchEntry {
        name: instance.name.clone(),
        algorithm: alg,
        scan_count: sol.scan_count,
        tour_length: sol.tour_length,
        total_cost: sol.total_cost,
        covered: cert.coverage.covered,
        contained: cert.contained,
        checks_hold: cert.checks.iter().all(|c| c.holds),
        within_bound: cert.coverage.covered && cert.contained != Some(false) && ratios_ok,
        oracle,
    })
}

/// Runs every instance in parallel; the report is sorted by instance name.
pub fn run_bench(instances: &[InstanceFile]) -> BenchReport {
    let results: Vec<(String, Result<BenchEntry>)> = instances.par_iter().map(|i| (i.name.clone(), bench_instance(i))).collect();
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (name, r) in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(BenchError { name, error: e.to_string() }),
        }
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    errors.sort_by(|a, b| a.name.cmp(&b.name));
    let failures = entries.iter().filter(|e| !e.within_bound).map(|e| e.name.clone()).collect();
    BenchReport { version: env!("CARGO_PKG_VERSION").into(), entries, errors, failures }
}

/// Every `*.json` instance file directly inside `dir`, in file-name order.
pub fn load_suite(dir: &Path) -> Result<Vec<InstanceFile>> {
    let io_err = |e: std::io::Error| Error::InvalidInput(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(io_err)?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            InstanceFile::parse(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use mwpdv_core::{CostModel, Mode, Polyomino};

    #[test]
    fn report_is_sorted_and_within_bounds() {
        let insts: Vec<InstanceFile> = [("b", 3, 2), ("a", 2, 2), ("c", 1, 4)]
            .iter()
            .map(|&(n, w, h)| InstanceFile::from_polyomino(n, &Polyomino::rectangle(0, 0, w, h).unwrap(), CostModel::rect(1.0), Mode::Milling))
            .collect();
        let rep = run_bench(&insts);
        let names: Vec<&str> = rep.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert!(rep.failures.is_empty() && rep.errors.is_empty());
        assert!(rep.entries.iter().all(|e| e.oracle.is_some()));
    }
}
