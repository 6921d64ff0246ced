use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mwpdv_core::{CostModel, Error, Mode};
use mwpdv_harness::bench::{load_suite, run_bench};
use mwpdv_harness::gen::{gen_gadget, gen_random_polyomino, polygon_fixtures, GadgetKind};
use mwpdv_harness::io::{run_oracle, solve, to_json, Algorithm, InstanceFile, SolveOptions};
use mwpdv_harness::svg::render_svg;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mwpdv", version, about = "Watchman tours with discrete, limited-range scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Milling,
    Lawnmowing,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Gadget,
    /// One of the rectilinear polygon fixtures.
    Polygon,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write a certified solution file.
    Solve {
        #[arg(long)]
        alg: Algorithm,
        #[arg(long)]
        input: PathBuf,
        /// Scan cost; defaults to the instance's.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also compare against the exact optimum (small polyominoes only).
        #[arg(long)]
        with_oracle: bool,
    },
    /// Exact minimum scan count and optimum cost of a small polyomino.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        c: Option<f64>,
    },
    /// Write a generated instance file to stdout or `--out`.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        pixels: usize,
        /// Probability of growing corridors instead of blobs.
        #[arg(long, default_value_t = 0.3)]
        bias: f64,
        /// Gadget or polygon fixture name; instance name for random ones.
        #[arg(long)]
        name: Option<String>,
        /// Scan cost written into the instance.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve every instance of a directory and report ratios.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

/// Failure with its exit code: 2 for invalid input, 3 for oversized
/// oracle instances, 1 when a benchmark bound is violated.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::InstanceTooLarge(_) => (3, "instance_too_large"),
            _ => (2, "validation"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, kind: "io", message: format!("{}: {e}", path.display()) }
}

fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(InstanceFile::parse(&text)?)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { alg, input, c, mode, out, svg, with_oracle } => {
            let instance = read_instance(&input)?;
            let mode = mode.map(|m| match m {
                ModeArg::Milling => Mode::Milling,
                ModeArg::Lawnmowing => Mode::Lawnmowing,
            });
            let sol = solve(&instance, &SolveOptions { algorithm: alg, c, mode, with_oracle })?;
            write(&out, &sol.to_json())?;
            if let Some(svg) = svg {
                write(&svg, &render_svg(&instance, Some(&sol))?)?;
            }
        }
        Command::Oracle { input, c } => {
            let instance = read_instance(&input)?;
            print!("{}", to_json(&run_oracle(&instance, c)?));
        }
        Command::Gen { kind, seed, pixels, bias, name, c, out } => {
            let instance = match kind {
                GenKind::Random => {
                    if pixels == 0 {
                        return Err(Error::InvalidInput("--pixels must be at least 1".into()).into());
                    }
                    let p = gen_random_polyomino(seed, pixels, bias);
                    let name = name.unwrap_or_else(|| format!("random-s{seed}-n{pixels}"));
                    InstanceFile::from_polyomino(&name, &p, CostModel::rect(c), Mode::Milling)
                }
                GenKind::Gadget => {
                    let name = name.ok_or_else(|| Failure::from(Error::InvalidInput("--name is required for gadgets".into())))?;
                    let k: GadgetKind = name.parse().map_err(|e: String| Failure::from(Error::InvalidInput(e)))?;
                    InstanceFile::from_gadget(&gen_gadget(k))
                }
                GenKind::Polygon => {
                    let name = name.ok_or_else(|| Failure::from(Error::InvalidInput("--name is required for polygon fixtures".into())))?;
                    let f = polygon_fixtures()
                        .into_iter()
                        .find(|f| f.name == name)
                        .ok_or_else(|| Failure::from(Error::InvalidInput(format!("unknown polygon fixture `{name}`"))))?;
                    InstanceFile::from_polygon(&f.name, &f.polygon, CostModel::circ(c, f.r), Mode::Milling)
                }
            };
            match out {
                Some(path) => write(&path, &instance.to_json())?,
                None => print!("{}", instance.to_json()),
            }
        }
        Command::Bench { suite, report } => {
            let instances = load_suite(&suite)?;
            let rep = run_bench(&instances);
            write(&report, &to_json(&rep))?;
            if !rep.failures.is_empty() {
                return Err(Failure { code: 1, kind: "bound_violated", message: format!("bound violated on: {}", rep.failures.join(", ")) });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            ExitCode::from(f.code)
        }
    }
}
