use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mwpdv_core::{CostModel, Mode, Polyomino};
use mwpdv_harness::gen::GadgetKind;
use mwpdv_harness::io::{recompute_certificate, InstanceFile, OracleReport, SolutionFile};
use tempfile::tempdir;

fn mwpdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwpdv")).args(args).output().expect("binary runs")
}

fn write_square(dir: &Path) -> String {
    let f = InstanceFile::from_polyomino("square-4", &Polyomino::rectangle(0, 0, 4, 4).unwrap(), CostModel::rect(1.0), Mode::Milling);
    let path = dir.join("square.json");
    fs::write(&path, f.to_json()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_rect_on_square() {
    let dir = tempdir().unwrap();
    let input = write_square(dir.path());
    let out = dir.path().join("s.json");
    let svg = dir.path().join("s.svg");
    let o = mwpdv(&["solve", "--alg", "rect", "--input", &input, "--c", "1", "--out", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sol = SolutionFile::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(sol.scan_count, 5);
    assert!(sol.certificate.coverage.covered);
    let inst = InstanceFile::parse(&fs::read_to_string(&input).unwrap()).unwrap();
    assert_eq!(recompute_certificate(&inst, &sol).unwrap(), sol.certificate);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<?xml"));
}

#[test]
fn oracle_on_square() {
    let dir = tempdir().unwrap();
    let input = write_square(dir.path());
    let o = mwpdv(&["oracle", "--input", &input, "--c", "1"]);
    assert!(o.status.success());
    let rep: OracleReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep.s_min, 4);
    assert_eq!(rep.t_star, Some(12.0));
}

#[test]
fn gadget_files_match_frozen_fixtures() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/gadgets");
    for kind in GadgetKind::ALL {
        let o = mwpdv(&["gen", "--kind", "gadget", "--name", kind.name()]);
        assert!(o.status.success());
        let frozen = fs::read(fixtures.join(format!("{}.json", kind.name()))).unwrap();
        assert_eq!(o.stdout, frozen, "{}", kind.name());
    }
}

#[test]
fn random_generation_is_stable() {
    let a = mwpdv(&["gen", "--kind", "random", "--seed", "7", "--pixels", "20"]);
    let b = mwpdv(&["gen", "--kind", "random", "--seed", "7", "--pixels", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let f = InstanceFile::parse(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(f.pixels.unwrap().len(), 20);
}

#[test]
fn exit_codes_and_error_json() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"name":"x","kind":"polyomino","pixels":[[0,0],[5,5]],"cost":{"c":1,"r":1,"scan_metric":"linf","tour_metric":"l1"},"mode":"milling"}"#).unwrap();
    let o = mwpdv(&["solve", "--alg", "rect", "--input", bad.to_str().unwrap(), "--out", dir.path().join("o.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "validation");

    let big = dir.path().join("big.json");
    let p = Polyomino::rectangle(0, 0, 8, 8).unwrap();
    fs::write(&big, InstanceFile::from_polyomino("big", &p, CostModel::rect(1.0), Mode::Milling).to_json()).unwrap();
    let o = mwpdv(&["oracle", "--input", big.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "instance_too_large");
}

#[test]
fn bench_writes_sorted_report() {
    let dir = tempdir().unwrap();
    let suite = dir.path().join("suite");
    fs::create_dir(&suite).unwrap();
    for (name, w, h) in [("z-strip", 1, 5), ("a-square", 3, 3)] {
        let f = InstanceFile::from_polyomino(name, &Polyomino::rectangle(0, 0, w, h).unwrap(), CostModel::rect(1.0), Mode::Milling);
        fs::write(suite.join(format!("{name}.json")), f.to_json()).unwrap();
    }
    let circ = InstanceFile::from_polyomino("m-circ", &Polyomino::rectangle(0, 0, 3, 2).unwrap(), CostModel::circ_unit(1.0), Mode::Milling);
    fs::write(suite.join("m.json"), circ.to_json()).unwrap();
    let report = dir.path().join("r.json");
    let o = mwpdv(&["bench", "--suite", suite.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let names: Vec<&str> = rep["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a-square", "m-circ", "z-strip"]);
    assert_eq!(rep["entries"][1]["algorithm"], "circ1");
    assert!(rep["entries"][0]["oracle"]["ratio_cost"].as_f64().unwrap() <= 2.5);
}
