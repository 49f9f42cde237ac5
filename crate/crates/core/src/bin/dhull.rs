use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dhull::appsol::{run_appsol, run_appsol2};
use dhull::certify::{auto_certify, certify_at, default_eps_min, min_distance, SearchMode, StartMode, TraceEntry};
use dhull::certify::{CertificationReport, DEFAULT_MAX_ITER};
use dhull::io::{load_polygon, write_report, write_svg, Loaded, Report};
use dhull::optsol::run_optsol;
use dhull::{BoundaryPoint, GeometryError, StationSolution};

#[derive(Parser)]
#[command(name = "dhull", version, about = "Base-station placement for range-limited drones around a coastline")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Appsol,
    Appsol2,
    Optsol,
}

#[derive(Subcommand)]
enum Cmd {
    /// Place stations for a fixed flight range.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Flight range in meters.
        #[arg(long)]
        d: f64,
        /// Grid pitch in meters, or `auto` to shrink it until certified.
        #[arg(long, default_value = "auto")]
        epsilon: String,
        /// Vertex index (file order), arc length in meters from vertex 0, or `auto`.
        #[arg(long, default_value = "auto")]
        start: String,
        #[arg(long, value_enum, default_value = "appsol")]
        algo: Algo,
        /// Bracket the optimum and exit with 2 if it does not close.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Smallest flight range that fits a station budget.
    Mindist {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        /// Fix the first station at this vertex (file order); free otherwise.
        #[arg(long)]
        fixed_start: Option<usize>,
        /// Search over grid distances instead of bisecting.
        #[arg(long)]
        discrete: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Polygon diagnostics.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
}

type AnyErr = Box<dyn std::error::Error>;

fn vertex_start(l: &Loaded, i: usize) -> Result<BoundaryPoint, AnyErr> {
    let p = *l.raw.get(i).ok_or_else(|| format!("vertex index {i} out of range (n = {})", l.raw.len()))?;
    let tol = l.polygon.tolerance() * 10.0;
    Ok(l.polygon.locate(p, tol).ok_or("vertex was removed during validation")?)
}

fn parse_start(l: &Loaded, s: &str) -> Result<BoundaryPoint, AnyErr> {
    let poly = &l.polygon;
    if s == "auto" {
        return Ok(poly.vertex_point(poly.hull()[0]));
    }
    if let Ok(i) = s.parse::<usize>() {
        return vertex_start(l, i);
    }
    let arc: f64 = s.parse().map_err(|_| format!("bad --start value {s:?}"))?;
    if !(0.0..poly.perimeter()).contains(&arc) {
        return Err(GeometryError::OutOfRange {
            arc,
            perimeter: poly.perimeter(),
        }
        .into());
    }
    Ok(poly.point_at(arc))
}

fn emit(report: &Report, path: Option<&Path>) -> Result<(), AnyErr> {
    match path {
        Some(p) => {
            write_report(report, p)?;
            let verdict = match report.certified {
                Some(true) => " certified",
                Some(false) => " uncertified",
                None => "",
            };
            println!("k = {}{verdict}, d = {} m", report.k, report.d_m);
        }
        None => println!("{}", report.to_json()),
    }
    Ok(())
}

fn solve(
    l: &Loaded,
    d: f64,
    epsilon: &str,
    start: &str,
    algo: Algo,
    certify: bool,
) -> Result<(StationSolution, Report), AnyErr> {
    let poly = &l.polygon;
    let s0 = parse_start(l, start)?;
    let explicit: Option<f64> = match epsilon {
        "auto" => None,
        v => Some(v.parse().map_err(|_| format!("bad --epsilon value {v:?}"))?),
    };
    // A certificate is needed both for --certify and to choose eps=auto.
    let cert: Option<CertificationReport> = match (certify, explicit) {
        (true, Some(eps)) => {
            let t = Instant::now();
            let b = certify_at(poly, &s0, d, eps)?;
            Some(CertificationReport {
                d,
                epsilon_trace: vec![TraceEntry {
                    eps,
                    alpha_d: b.k_high,
                    alpha_d_plus_eps: b.k_low,
                    seconds: t.elapsed().as_secs_f64(),
                }],
                k_certified: b.certified.then_some(b.k_high),
                k_low: b.k_low,
                k_high: b.k_high,
                iterations: 1,
            })
        }
        (_, None) if certify || !matches!(algo, Algo::Optsol) => {
            Some(auto_certify(poly, &s0, d, default_eps_min(d), DEFAULT_MAX_ITER)?)
        }
        _ => None,
    };
    let eps = explicit.or(cert.as_ref().map(|c| c.last_eps()));
    let (sol, name) = match algo {
        Algo::Optsol => (run_optsol(poly, &s0, d)?, "optsol"),
        Algo::Appsol => (run_appsol(poly, &s0, d, eps.expect("pitch chosen"))?, "appsol"),
        Algo::Appsol2 => (run_appsol2(poly, &s0, d, eps.expect("pitch chosen"))?, "appsol2"),
    };
    let eps = if matches!(algo, Algo::Optsol) { None } else { eps };
    let mut rep = Report::from_solution(name, &sol, eps, l.projection.as_ref());
    if let (true, Some(c)) = (certify, &cert) {
        rep = rep.with_certification(c);
    }
    Ok((sol, rep))
}

#[derive(Serialize)]
struct LidInfo {
    start_vertex: usize,
    end_vertex: usize,
    length_m: f64,
    pocket_vertices: usize,
}

#[derive(Serialize)]
struct Diagnostics {
    n: usize,
    perimeter_m: f64,
    area_m2: f64,
    hull: Vec<usize>,
    lids: Vec<LidInfo>,
    pockets: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection: Option<String>,
}

fn run(cli: Cli) -> Result<ExitCode, AnyErr> {
    let t = Instant::now();
    match cli.cmd {
        Cmd::Solve {
            input,
            d,
            epsilon,
            start,
            algo,
            certify,
            report,
            svg,
        } => {
            let l = load_polygon(&input)?;
            let (sol, rep) = solve(&l, d, &epsilon, &start, algo, certify)?;
            let rep = rep.with_seconds(t.elapsed().as_secs_f64());
            if let Some(p) = &svg {
                write_svg(&l.polygon, &sol, p)?;
            }
            emit(&rep, report.as_deref())?;
            Ok(if rep.certified == Some(false) { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Cmd::Mindist {
            input,
            k,
            epsilon,
            fixed_start,
            discrete,
            report,
            svg,
        } => {
            let l = load_polygon(&input)?;
            let mode = match fixed_start {
                Some(i) => StartMode::Fixed(vertex_start(&l, i)?),
                None => StartMode::Free,
            };
            let search = if discrete { SearchMode::Discrete } else { SearchMode::Continuous };
            let r = min_distance(&l.polygon, k, epsilon, mode, search)?;
            if let Some(p) = &svg {
                write_svg(&l.polygon, &r.stations, p)?;
            }
            let rep = Report::from_min_distance(&r, l.projection.as_ref()).with_seconds(t.elapsed().as_secs_f64());
            emit(&rep, report.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { input } => {
            let l = load_polygon(&input)?;
            let p = &l.polygon;
            let diag = Diagnostics {
                n: p.len(),
                perimeter_m: p.perimeter(),
                area_m2: p.area(),
                hull: p.hull().to_vec(),
                lids: p
                    .lids()
                    .iter()
                    .map(|lid| LidInfo {
                        start_vertex: lid.start_vertex,
                        end_vertex: lid.end_vertex,
                        length_m: lid.length(),
                        pocket_vertices: lid.pocket.len(),
                    })
                    .collect(),
                pockets: p.lids().len(),
                projection: l.projection.map(|q| q.describe()),
            };
            println!("{}", serde_json::to_string_pretty(&diag)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("DHULL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    // Exit code 2 is reserved for uncertified runs, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
