//! Command-line front end: thin dispatch over the library. Exit codes:
//! 0 success / all checks pass, 1 verification failure, 2 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use vecmeasure::convergence::{
    run_diagnostics, verdicts, DEFAULT_DIRECTION_GRID, DEFAULT_WIDE_RESOLUTION,
};
use vecmeasure::io::{MeasureJson, PolygonJson, ScenarioJson, SetJson, ZonalJson};
use vecmeasure::norms::{validate_zonal, zonal_approx_2d, zonal_euclidean, zonal_from_polygonal_2d};
use vecmeasure::verify::{run_suite, SUITES, VERDICT_TOL, VERDICT_WINDOW};
use vecmeasure::zonotopes::vertices_2d;
use vecmeasure::geometry::hausdorff_distance;
use vecmeasure::{MeasurableSet, Seminorm, VectorMeasure};

#[derive(Parser)]
#[command(name = "vecmeasure", version, about = "Exact computation with finitely-atomic vector measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct NormArg {
    /// seminorm as inline JSON, a JSON file path, or a shorthand
    /// (euclidean, l1, l2, l4, linf, lp:<p>, sum_of_circles)
    #[arg(long, default_value = "euclidean")]
    norm: String,
}

#[derive(Args, Clone)]
struct OutArg {
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Total variation of a measure over a set
    Tv {
        /// measure JSON file
        measure: PathBuf,
        #[command(flatten)]
        norm: NormArg,
        /// measurable set as inline JSON or a file; defaults to all of X
        #[arg(long)]
        set: Option<String>,
        /// also run the brute-force partition oracle (atoms <= 10)
        #[arg(long)]
        oracle: bool,
    },
    /// Range of a measure: generators, offset, and vertices for d = 2
    Range {
        measure: PathBuf,
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Perimeter of a polygon, or of the range of a measure
    Perimeter {
        /// measure or polygon JSON file (detected by its fields)
        input: PathBuf,
        #[command(flatten)]
        norm: NormArg,
    },
    /// Zonal representation of a seminorm
    Zonal {
        #[command(flatten)]
        norm: NormArg,
        /// certification slack for the 2-D approximation
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// quadrature nodes for the Euclidean representation
        #[arg(long, default_value_t = 10_000)]
        nodes: usize,
        /// value dimension for the Euclidean representation
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// validate on a direction grid of this size before emitting
        #[arg(long)]
        validate_grid: Option<usize>,
        /// tolerance for --validate-grid
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hausdorff distance between the ranges of two measures
    Hausdorff {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Convergence diagnostics for a scenario file
    Scenario {
        scenario: PathBuf,
        /// report format
        #[arg(long, default_value = "json")]
        format: String,
        /// verdict window length
        #[arg(long, default_value_t = VERDICT_WINDOW)]
        window: usize,
        /// verdict tolerance
        #[arg(long, default_value_t = VERDICT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a randomized verification suite
    Verify {
        /// suite name, or "all"
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// override the suite's headline tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_norm(spec: &str) -> Result<Seminorm, String> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if std::path::Path::new(spec).is_file() {
        fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?
    } else {
        return match spec {
            "euclidean" => Ok(Seminorm::Euclidean),
            "l1" => Ok(Seminorm::lp(1.0)),
            "l2" => Ok(Seminorm::lp(2.0)),
            "l4" => Ok(Seminorm::lp(4.0)),
            "linf" => Ok(Seminorm::lp(f64::INFINITY)),
            "sum_of_circles" => Ok(Seminorm::SumOfCircles),
            other => other
                .strip_prefix("lp:")
                .and_then(|p| p.parse::<f64>().ok())
                .map(Seminorm::lp)
                .ok_or_else(|| format!("unknown norm shorthand: {other}")),
        };
    };
    let n: Seminorm = serde_json::from_str(&text).map_err(|e| format!("bad norm spec: {e}"))?;
    n.validate().map_err(|e| e.to_string())?;
    Ok(n)
}

fn parse_set(spec: Option<&str>) -> Result<MeasurableSet, String> {
    let Some(spec) = spec else { return Ok(MeasurableSet::All) };
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?
    };
    let s: SetJson = serde_json::from_str(&text).map_err(|e| format!("bad set spec: {e}"))?;
    s.to_set().map_err(|e| e.to_string())
}

fn load_measure(path: &PathBuf) -> Result<VectorMeasure, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let m: MeasureJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    m.to_measure().map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            // ignore EPIPE so `vecmeasure ... | head` exits quietly
            let _ = writeln!(std::io::stdout(), "{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Tv { measure, norm, set, oracle } => {
            let mu = load_measure(&measure)?;
            let n = parse_norm(&norm.norm)?;
            let set = parse_set(set.as_deref())?;
            let tv = mu.total_variation(&set, &n).map_err(|e| e.to_string())?;
            println!("{tv:?}");
            if oracle {
                let o = mu.tv_bruteforce_oracle(&set, &n).map_err(|e| e.to_string())?;
                println!("oracle {o:?}");
                println!("gap {:?}", (tv - o).abs());
            }
            Ok(0)
        }
        Command::Range { measure, set, out } => {
            let mu = load_measure(&measure)?;
            let set = parse_set(set.as_deref())?;
            let z = mu.range(&set).map_err(|e| e.to_string())?;
            let gens: Vec<&[f64]> = z.generators().iter().map(|g| g.coords()).collect();
            let mut report = json!({
                "dim": z.dim(),
                "generators": gens,
                "offset": z.offset().coords(),
            });
            if z.dim() == 2 {
                let poly = vertices_2d(&z).map_err(|e| e.to_string())?;
                let verts: Vec<&[f64]> = poly.vertices().iter().map(|v| v.coords()).collect();
                report["vertices"] = json!(verts);
            }
            emit(&out.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(0)
        }
        Command::Perimeter { input, norm } => {
            let n = parse_norm(&norm.norm)?;
            let text =
                fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
            let poly = if value.get("atoms").is_some() {
                let m: MeasureJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                let mu = m.to_measure().map_err(|e| e.to_string())?;
                let z = mu.range(&MeasurableSet::All).map_err(|e| e.to_string())?;
                vertices_2d(&z).map_err(|e| e.to_string())?
            } else if value.get("vertices").is_some() {
                let p: PolygonJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                p.to_polygon().map_err(|e| e.to_string())?
            } else {
                return Err(format!(
                    "{}: expected a measure (\"atoms\") or a polygon (\"vertices\")",
                    input.display()
                ));
            };
            let per = vecmeasure::zonotopes::perimeter(&poly, &n).map_err(|e| e.to_string())?;
            println!("{per:?}");
            Ok(0)
        }
        Command::Zonal { norm, eps, nodes, dim, validate_grid, tol, out } => {
            let n = parse_norm(&norm.norm)?;
            let sigma = match &n {
                Seminorm::Euclidean => zonal_euclidean(dim, nodes).map_err(|e| e.to_string())?.0,
                Seminorm::Polygonal { .. } => {
                    zonal_from_polygonal_2d(&n).map_err(|e| e.to_string())?
                }
                _ => zonal_approx_2d(&n, eps).map_err(|e| e.to_string())?,
            };
            if let Some(grid) = validate_grid {
                let rep = validate_zonal(&n, &sigma, grid, tol).map_err(|e| e.to_string())?;
                eprintln!(
                    "validation: max rel error {:?} on {} directions ({})",
                    rep.max_rel_error,
                    rep.grid,
                    if rep.pass { "pass" } else { "FAIL" }
                );
                if !rep.pass {
                    return Ok(1);
                }
            }
            let report = ZonalJson::from_zonal(&sigma);
            emit(&out.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(0)
        }
        Command::Hausdorff { file_a, file_b } => {
            let a = load_measure(&file_a)?;
            let b = load_measure(&file_b)?;
            let pa = vertices_2d(&a.range(&MeasurableSet::All).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let pb = vertices_2d(&b.range(&MeasurableSet::All).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            println!("{:?}", hausdorff_distance(&pa, &pb));
            Ok(0)
        }
        Command::Scenario { scenario, format, window, tol, out } => {
            let text =
                fs::read_to_string(&scenario).map_err(|e| format!("{}: {e}", scenario.display()))?;
            let sj: ScenarioJson =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", scenario.display()))?;
            let s = sj.to_scenario().map_err(|e| e.to_string())?;
            let report = run_diagnostics(&s).map_err(|e| e.to_string())?;
            let v = verdicts(&report, window, tol);
            match format.as_str() {
                "json" => {
                    let body = json!({
                        "report": report,
                        "verdicts": v,
                        "window": window,
                        "tol": tol,
                        "direction_grid": DEFAULT_DIRECTION_GRID,
                        "wide_resolution": DEFAULT_WIDE_RESOLUTION,
                    });
                    emit(&out.out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                "csv" => emit(&out.out, report.to_csv().trim_end())?,
                other => return Err(format!("unknown format: {other}")),
            }
            Ok(0)
        }
        Command::Verify { suite, seed, trials, tol, out } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(format!(
                    "unknown suite: {suite} (expected one of {} or all)",
                    SUITES.join(", ")
                ));
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for name in names {
                let rep = run_suite(name, seed, trials, tol).map_err(|e| e.to_string())?;
                println!(
                    "{}: {} ({} checks, {} failures, seed {seed}, tol {:?})",
                    rep.suite,
                    if rep.passed { "pass" } else { "FAIL" },
                    rep.checks_run,
                    rep.failures.len(),
                    rep.tol,
                );
                for f in rep.failures.iter().take(3) {
                    eprintln!("  trial {}: {}", f.trial, f.description);
                    eprintln!("  instance: {}", serde_json::to_string(&f.instance).unwrap());
                }
                all_pass &= rep.passed;
                reports.push(rep);
            }
            if let Some(path) = out.out {
                let body = serde_json::to_string_pretty(&reports).unwrap();
                fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("VECMEASURE_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
