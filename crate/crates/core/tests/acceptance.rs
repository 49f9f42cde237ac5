//! Acceptance run: one PASS/FAIL/SKIPPED line per criterion. Exits non-zero
//! if any criterion fails. Set DHULL_SALAMIS to a GeoJSON file of the
//! Salamis coastline to enable criterion 8.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{notch, random_convex, random_hull_start, random_star, sq, star_gadget};
use dhull::appsol::{build_reach_graph, discretize, run_appsol, run_appsol2, shortest_cycle};
use dhull::certify::{alpha, auto_certify, certify_at, default_eps_min, min_distance, SearchMode, StartMode, DEFAULT_MAX_ITER};
use dhull::io::load_polygon;
use dhull::optsol::run_optsol;
use dhull::oracle::{brute_enclosure, brute_geodesic, brute_min_cycle};
use dhull::{BoundaryPoint, GeodesicEngine, Point2, Polygon, StationSolution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Absolute tolerance for length equalities.
const LEN_TOL: f64 = 1e-9;
/// Hop-length slack for solution validity.
const HOP_TOL: f64 = 1e-9;
const C1_LIMIT: Duration = Duration::from_secs(60);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C3_LIMIT: Duration = Duration::from_secs(300);
const C6_LIMIT: Duration = Duration::from_secs(30);
/// Criterion 7: tip spacing factor and required station ratio.
const STAR_TIPS: usize = 19;
const STAR_SPACING: f64 = 0.51;
const STAR_WALL_DEG: f64 = 15.0;
const STAR_RATIO: f64 = 1.8;
/// Criterion 8 targets `(d, k)`; one station off is a pass with a note.
const SALAMIS: [(f64, usize); 2] = [(2000.0, 36), (2400.0, 26)];
const SALAMIS_PERIMETER: f64 = 113_639.9;

enum Verdict {
    Pass(String),
    Note(String),
    Fail(String),
    Skipped(String),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let t = Instant::now();
    let v = f();
    let el = t.elapsed();
    match (v, limit) {
        (Verdict::Pass(s) | Verdict::Note(s), Some(l)) if el > l => (Verdict::Fail(format!("{s}; took {el:.1?} > {l:?}")), el),
        (v, _) => (v, el),
    }
}

fn at(p: &Polygon, x: f64, y: f64) -> BoundaryPoint {
    p.locate(Point2::new(x, y), 1e-9).unwrap()
}

fn solution_ok(p: &Polygon, sol: &StationSolution) -> Result<(), String> {
    sol.check()?;
    if sol.max_hop() > sol.d + HOP_TOL {
        return Err(format!("hop {} > d {}", sol.max_hop(), sol.d));
    }
    if !brute_enclosure(p, sol) {
        return Err("oracle enclosure test failed".into());
    }
    Ok(())
}

fn criterion1() -> Verdict {
    let rows: Vec<Result<(), String>> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(1000 + i);
            let n = r.gen_range(3..=40);
            let p = random_convex(&mut r, n);
            let s0 = random_hull_start(&mut r, &p);
            for _ in 0..5 {
                let q = r.gen_range(2..=12) as f64;
                let d = p.perimeter() / (q + r.gen_range(0.1..0.9));
                let want = (p.perimeter() / d).ceil() as usize;
                let cert = auto_certify(&p, &s0, d, default_eps_min(d), DEFAULT_MAX_ITER).map_err(|e| e.to_string())?;
                let opt = run_optsol(&p, &s0, d).map_err(|e| e.to_string())?;
                if cert.k_certified != Some(want) || opt.k != want {
                    return Err(format!(
                        "polygon {i} n={n} d={d}: want {want}, certified {:?} [{}, {}], optsol {}",
                        cert.k_certified, cert.k_low, cert.k_high, opt.k
                    ));
                }
            }
            Ok(())
        })
        .collect();
    match rows.into_iter().find_map(Result::err) {
        None => Verdict::Pass("250/250 instances certify ceil(L/d), optsol agrees".into()),
        Some(e) => Verdict::Fail(e),
    }
}

fn criterion2() -> Verdict {
    let p = notch();
    let len = dhull::exterior::shortest_d_path(&p, &at(&p, 0., 4.), &at(&p, 4., 4.), 1.0).total_length;
    if (len - 4.0).abs() > LEN_TOL {
        return Verdict::Fail(format!("geodesic {len}"));
    }
    let sol = run_optsol(&p, &p.vertex_point(0), 4.0).unwrap();
    let corners = [(0., 0.), (0., 4.), (4., 4.), (4., 0.)];
    let on_corners = sol
        .stations
        .iter()
        .all(|s| corners.iter().any(|&(x, y)| s.point.dist(Point2::new(x, y)) < LEN_TOL));
    if sol.k != 4 || !on_corners {
        return Verdict::Fail(format!("optsol k={} stations {:?}", sol.k, sol.stations));
    }
    let b = certify_at(&p, &p.vertex_point(0), 4.0, 0.5).unwrap();
    if !(b.certified && b.k_high == 4) {
        return Verdict::Fail(format!("bracket {b:?}"));
    }
    Verdict::Pass("geodesic 4.0, optsol k=4 on the hull corners, certified k=4 at eps=0.5".into())
}

/// A criterion-3 cycle instance, reused by criteria 4 and 5.
struct Instance {
    poly: Polygon,
    s0: BoundaryPoint,
    d: f64,
    eps: f64,
}

fn cycle_instances() -> Vec<Instance> {
    (0..30u64)
        .map(|i| {
            let mut r = rng(3000 + i);
            loop {
                let n = r.gen_range(4..=20);
                let poly = random_star(&mut r, n);
                let s0 = random_hull_start(&mut r, &poly);
                let d: f64 = r.gen_range(2.0..12.0);
                let eps = (d * r.gen_range(0.05f64..0.5)).max(poly.perimeter() / 250.0);
                if discretize(&poly, &s0, eps).unwrap().len() <= 300 {
                    return Instance { poly, s0, d, eps };
                }
            }
        })
        .collect()
}

fn criterion3(cases: &[Instance]) -> Verdict {
    // Geodesics: 100 polygons x 200 pairs against the vertex-graph oracle, and
    // 20 pairs per polygon against a dense grid in the regime <= d.
    let rows: Vec<(usize, usize, usize, Option<String>)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(2000 + i);
            let n = r.gen_range(4..=20);
            let p = random_star(&mut r, n);
            let s0 = random_hull_start(&mut r, &p);
            let q = p.anchored_at(&s0);
            let l = q.perimeter();
            let d = r.gen_range(1.5..12.0);
            let eng = GeodesicEngine::new(&q);
            let (mut dense_checked, mut dense_gaps) = (0, 0);
            for j in 0..200 {
                let (mut ta, mut tb) = (r.gen_range(0.0..l), r.gen_range(0.0..l));
                if ta > tb {
                    std::mem::swap(&mut ta, &mut tb);
                }
                let a = q.point_at(ta);
                let b = if j % 50 == 0 { q.sentinel() } else { q.point_at(tb) };
                let got = eng.shortest_d_path(&a, &b, d).total_length;
                let want = brute_geodesic(&q, &a, &b, d, f64::INFINITY);
                if (got - want).abs() > LEN_TOL {
                    return (0, 0, 0, Some(format!("polygon {i} pair {j}: engine {got} vs oracle {want}")));
                }
                if j % 10 == 0 {
                    let dense = brute_geodesic(&q, &a, &b, d, l / 150.0);
                    dense_checked += 1;
                    if got <= d || dense <= d {
                        if (got - dense).abs() > LEN_TOL {
                            return (0, 0, 0, Some(format!("polygon {i} pair {j}: engine {got} vs dense {dense} (d={d})")));
                        }
                    } else if dense < got - LEN_TOL {
                        dense_gaps += 1;
                    } else if got > dense + LEN_TOL {
                        return (0, 0, 0, Some(format!("polygon {i} pair {j}: engine {got} > dense {dense}")));
                    }
                }
            }
            (200, dense_checked, dense_gaps, None)
        })
        .collect();
    if let Some(e) = rows.iter().find_map(|r| r.3.clone()) {
        return Verdict::Fail(e);
    }
    let pairs: usize = rows.iter().map(|r| r.0).sum();
    let dense: usize = rows.iter().map(|r| r.1).sum();
    let gaps: usize = rows.iter().map(|r| r.2).sum();

    let cyc: Vec<Option<String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let disc = discretize(&c.poly, &c.s0, c.eps).unwrap();
            let k = shortest_cycle(&build_reach_graph(&disc, c.d)).map(|v| v.len()).ok();
            let brute = brute_min_cycle(&disc.polygon, &disc.points, c.d);
            (k != brute).then(|| format!("cycle instance {i} (|X|={}): shortest_cycle {k:?} vs oracle {brute:?}", disc.len()))
        })
        .collect();
    if let Some(e) = cyc.into_iter().flatten().next() {
        return Verdict::Fail(e);
    }
    let msg = format!("{pairs} pairs equal the vertex-graph oracle; {dense} dense-grid pairs agree at or below d");
    if gaps > 0 {
        Verdict::Note(format!(
            "{msg}; {gaps} pairs above d where corner-cutting bridges beat the vertex-only program; 30/30 cycle counts match"
        ))
    } else {
        Verdict::Pass(format!("{msg}; 30/30 cycle counts match"))
    }
}

fn criterion4(cases: &[Instance]) -> Verdict {
    let bad: Vec<String> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let k = run_optsol(&c.poly, &c.s0, c.d).unwrap().k;
            let lo = alpha(&c.poly, &c.s0, c.d + c.eps, c.eps).unwrap();
            let hi = alpha(&c.poly, &c.s0, c.d, c.eps).unwrap();
            (!(lo <= k && k <= hi)).then(|| format!("instance {i}: {lo} <= {k} <= {hi} violated"))
        })
        .collect();
    match bad.first() {
        None => Verdict::Pass(format!("{} instances, zero violations", cases.len())),
        Some(e) => Verdict::Fail(e.clone()),
    }
}

fn criterion5(cases: &[Instance]) -> Verdict {
    let mut fixtures: Vec<(Polygon, BoundaryPoint, f64, f64)> = cases.iter().map(|c| (c.poly.clone(), c.s0, c.d, c.eps)).collect();
    let (s, n) = (sq(), notch());
    fixtures.push((s.clone(), s.vertex_point(0), 1.5, 0.25));
    fixtures.push((n.clone(), n.vertex_point(0), 4.0, 0.5));
    fixtures.push((n.clone(), n.vertex_point(0), 1.0, 0.25));
    let bad: Vec<String> = fixtures
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (p, s0, d, eps))| {
            let sols = [
                ("optsol", run_optsol(p, s0, *d)),
                ("appsol", run_appsol(p, s0, *d, *eps)),
                ("appsol2", run_appsol2(p, s0, *d, *eps)),
            ];
            sols.into_iter()
                .filter_map(move |(name, s)| match s {
                    Ok(sol) => solution_ok(p, &sol).err().map(|e| format!("{name} on instance {i}: {e}")),
                    Err(e) => Some(format!("{name} on instance {i}: {e}")),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    match bad.first() {
        None => Verdict::Pass(format!("{} solutions monotone, within d and enclosing", 3 * fixtures.len())),
        Some(e) => Verdict::Fail(e.clone()),
    }
}

fn criterion6() -> Verdict {
    let s = sq();
    let r1 = min_distance(&s, 4, 0.01, StartMode::Fixed(s.vertex_point(0)), SearchMode::Continuous).unwrap();
    let n = notch();
    let r2 = min_distance(&n, 4, 0.05, StartMode::Fixed(n.vertex_point(0)), SearchMode::Continuous).unwrap();
    let ok1 = r1.d_star >= 1.0 - LEN_TOL && r1.d_star <= 1.0 + 0.01;
    let ok2 = r2.d_star >= 4.0 - LEN_TOL && r2.d_star <= 4.0 + 0.05;
    let msg = format!("SQ d*={:.6}, NOTCH d*={:.6}", r1.d_star, r2.d_star);
    if ok1 && ok2 {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(msg)
    }
}

fn criterion7() -> Verdict {
    let d = 100.0;
    let p = star_gadget(STAR_TIPS, STAR_SPACING * d, STAR_WALL_DEG);
    let s0 = p.vertex_point(p.hull()[0]);
    let q = p.anchored_at(&s0);
    let mut tips: Vec<BoundaryPoint> = q.hull().iter().map(|&h| q.vertex_point(h)).collect();
    tips.sort_by(|a, b| a.arc.total_cmp(&b.arc));
    if tips.len() != STAR_TIPS || tips[0].arc != 0.0 {
        return Verdict::Fail(format!("gadget has {} hull vertices", tips.len()));
    }
    let on_hull = match brute_min_cycle(&q, &tips, d) {
        Some(k) => k,
        None => return Verdict::Fail("tips-only cycle infeasible".into()),
    };
    let cert = auto_certify(&p, &s0, d, default_eps_min(d), DEFAULT_MAX_ITER).unwrap();
    let Some(k) = cert.k_certified else {
        return Verdict::Fail(format!("not certified, bracket [{}, {}]", cert.k_low, cert.k_high));
    };
    let ratio = on_hull as f64 / k as f64;
    let msg = format!("{STAR_TIPS} tips at {STAR_SPACING}d: hull-only stations {on_hull}, certified k={k}, ratio {ratio:.2}");
    if ratio >= STAR_RATIO {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(msg)
    }
}

fn criterion8() -> Verdict {
    let Some(path) = std::env::var_os("DHULL_SALAMIS").map(PathBuf::from) else {
        return Verdict::Skipped("set DHULL_SALAMIS to a Salamis coastline GeoJSON to run".into());
    };
    let loaded = match load_polygon(&path) {
        Ok(l) => l,
        Err(e) => return Verdict::Fail(format!("{}: {e}", path.display())),
    };
    let p = &loaded.polygon;
    let s0 = p.vertex_point(p.hull()[0]);
    let mut notes = vec![format!(
        "n={} L={:.1} m ({:+.2}% vs {SALAMIS_PERIMETER})",
        p.len(),
        p.perimeter(),
        100.0 * (p.perimeter() / SALAMIS_PERIMETER - 1.0)
    )];
    let mut worst = 0usize;
    for (d, want) in SALAMIS {
        let r = match auto_certify(p, &s0, d, default_eps_min(d), DEFAULT_MAX_ITER) {
            Ok(r) => r,
            Err(e) => return Verdict::Fail(format!("d={d}: {e}")),
        };
        match r.k_certified {
            Some(k) => {
                notes.push(format!("d={d}: k={k} (want {want}, eps={:.3})", r.last_eps()));
                worst = worst.max(k.abs_diff(want));
            }
            None => {
                notes.push(format!("d={d}: uncertified [{}, {}]", r.k_low, r.k_high));
                worst = usize::MAX;
            }
        }
    }
    let msg = notes.join("; ");
    match worst {
        0 => Verdict::Pass(msg),
        1 => Verdict::Note(format!("{msg}; within one station, attributed to the projection")),
        _ => Verdict::Fail(msg),
    }
}

fn criterion9() -> Verdict {
    let mut r = rng(9000);
    let mut found = 0usize;
    let mut polys = 0usize;
    while found < 1000 {
        polys += 1;
        let n = r.gen_range(5..=16);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let q = p.anchored_at(&s0);
        let l = q.perimeter();
        let d = r.gen_range(2.0..10.0);
        let eng = GeodesicEngine::new(&q);
        let pt = |t: f64| if t >= l { q.sentinel() } else { q.point_at(t) };
        for _ in 0..25 {
            let tw = r.gen_range(0.0..l);
            let w = pt(tw);
            let reach_w = eng.max_reach(&w, d).arc;
            let ty = r.gen_range(tw..=reach_w.max(tw));
            let y = pt(ty);
            if !eng.drone_reachable(&w, &y, d) {
                continue;
            }
            let tx = r.gen_range(tw..=ty);
            let x = pt(tx);
            let reach_x = eng.max_reach(&x, d).arc;
            if reach_x < ty {
                continue;
            }
            let z = pt(r.gen_range(ty..=reach_x));
            if !eng.drone_reachable(&x, &z, d) {
                continue;
            }
            found += 1;
            let tz = z.arc;
            let mut cands = vec![x, y];
            cands.extend((1..64).map(|k| pt(tw + (tz - tw) * k as f64 / 64.0)));
            let mid = cands.into_iter().find(|m| eng.drone_reachable(&w, m, d) && eng.drone_reachable(m, &z, d));
            let Some(m) = mid else {
                return Verdict::Fail(format!("no 2-hop midpoint for w={tw} x={tx} y={ty} z={tz}, d={d}"));
            };
            let (h1, h2) = (brute_geodesic(&q, &w, &m, d, f64::INFINITY), brute_geodesic(&q, &m, &z, d, f64::INFINITY));
            if h1 > d + HOP_TOL || h2 > d + HOP_TOL {
                return Verdict::Fail(format!("oracle rejects midpoint hops {h1}, {h2} (d={d})"));
            }
            if found == 1000 {
                break;
            }
        }
    }
    Verdict::Pass(format!("1000 quadruples on {polys} polygons, every one has an oracle-verified 2-hop midpoint"))
}

fn main() {
    let cases = cycle_instances();
    let runs: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("convex exactness", Some(C1_LIMIT), Box::new(criterion1)),
        ("NOTCH fixture", Some(C2_LIMIT), Box::new(criterion2)),
        ("oracle equivalence", Some(C3_LIMIT), Box::new(|| criterion3(&cases))),
        ("certificate bracket", None, Box::new(|| criterion4(&cases))),
        ("forward progress + enclosure", None, Box::new(|| criterion5(&cases))),
        ("MinDistance", Some(C6_LIMIT), Box::new(criterion6)),
        ("star gadget", None, Box::new(criterion7)),
        ("Salamis table", None, Box::new(criterion8)),
        ("two-hop sandwich", None, Box::new(criterion9)),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in runs.iter().enumerate() {
        let (v, el) = timed(*limit, f);
        let (tag, msg) = match v {
            Verdict::Pass(m) => ("PASS", m),
            Verdict::Note(m) => ("PASS (note)", m),
            Verdict::Skipped(m) => ("SKIPPED", m),
            Verdict::Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {} {tag}: {name}: {msg} [{:.2}s]", i + 1, el.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
