//! Optimality certificates from two discretized runs, the shrinking-pitch
//! loop, and bisection for the smallest range that fits a station budget.

use std::time::Instant;

use serde::Serialize;

use crate::appsol::{appsol_k, build_reach_graph, discretize, run_appsol, run_appsol2};
use crate::error::{Result, SolveError};
use crate::exterior::GeodesicEngine;
use crate::geometry::{BoundaryPoint, Polygon};
use crate::solution::StationSolution;

/// Station count of the discretized solver at range `d` and pitch `eps`.
pub fn alpha(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps: f64) -> Result<usize> {
    appsol_k(poly, s0, d, eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub certified: bool,
    pub k_low: usize,
    pub k_high: usize,
}

/// `alpha(d + eps, eps) <= k* <= alpha(d, eps)`; certified when equal.
pub fn certify_at(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps: f64) -> Result<Bracket> {
    let (low, high) = rayon::join(|| alpha(poly, s0, d + eps, eps), || alpha(poly, s0, d, eps));
    let (k_low, k_high) = (low?, high?);
    Ok(Bracket {
        certified: k_low == k_high,
        k_low,
        k_high,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub eps: f64,
    pub alpha_d: usize,
    pub alpha_d_plus_eps: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub d: f64,
    pub epsilon_trace: Vec<TraceEntry>,
    pub k_certified: Option<usize>,
    pub k_low: usize,
    pub k_high: usize,
    pub iterations: usize,
}

impl CertificationReport {
    pub fn certified(&self) -> bool {
        self.k_certified.is_some()
    }

    /// Pitch of the last evaluated bracket.
    pub fn last_eps(&self) -> f64 {
        self.epsilon_trace.last().map_or(f64::NAN, |e| e.eps)
    }
}

/// Default lower limit on the pitch for [`auto_certify`].
pub fn default_eps_min(d: f64) -> f64 {
    d * 1e-4
}

pub const DEFAULT_MAX_ITER: usize = 60;

/// Starts at `eps = d` and divides by 1.2 until the bracket closes, `eps`
/// would drop below `eps_min`, or `max_iter` brackets were evaluated. An
/// uncertified outcome is still a report, with `k_certified = None`.
pub fn auto_certify(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps_min: f64, max_iter: usize) -> Result<CertificationReport> {
    if !(d > 0.0) {
        return Err(SolveError::RangeNonPositive(d));
    }
    let mut eps = d;
    let mut trace = Vec::new();
    loop {
        let t = Instant::now();
        let b = certify_at(poly, s0, d, eps)?;
        trace.push(TraceEntry {
            eps,
            alpha_d: b.k_high,
            alpha_d_plus_eps: b.k_low,
            seconds: t.elapsed().as_secs_f64(),
        });
        let done = b.certified || trace.len() >= max_iter || eps / 1.2 < eps_min;
        if done {
            return Ok(CertificationReport {
                d,
                k_certified: b.certified.then_some(b.k_high),
                k_low: b.k_low,
                k_high: b.k_high,
                iterations: trace.len(),
                epsilon_trace: trace,
            });
        }
        eps /= 1.2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartMode {
    Fixed(BoundaryPoint),
    /// Any start; the grid is anchored at the first hull vertex.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Bisection on a continuous range until the bracket is below `eps / 64`.
    #[default]
    Continuous,
    /// Binary search over the distinct grid geodesic distances.
    Discrete,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinDistanceResult {
    pub k: usize,
    pub d_star: f64,
    pub epsilon: f64,
    pub evaluations: usize,
    pub stations: StationSolution,
}

fn start_of(poly: &Polygon, mode: &StartMode) -> BoundaryPoint {
    match mode {
        StartMode::Fixed(s) => *s,
        StartMode::Free => poly.vertex_point(poly.hull()[0]),
    }
}

/// Smallest range (up to the search tolerance) at which the discretized
/// solver needs at most `k` stations.
pub fn min_distance(poly: &Polygon, k: usize, eps: f64, mode: StartMode, search: SearchMode) -> Result<MinDistanceResult> {
    if k == 0 {
        return Err(SolveError::InfeasibleBudget);
    }
    if !(eps > 0.0) {
        return Err(SolveError::EpsilonNonPositive(eps));
    }
    let s0 = start_of(poly, &mode);
    let disc = discretize(poly, &s0, eps)?;
    let anchored = &disc.polygon;
    let full = GeodesicEngine::new(anchored).distance(&anchored.vertex_point(0), &anchored.sentinel(), f64::INFINITY);
    let solve = |d: f64| -> Result<Option<StationSolution>> {
        let r = match mode {
            StartMode::Fixed(_) => run_appsol(poly, &s0, d, eps),
            StartMode::Free => run_appsol2(poly, &s0, d, eps),
        };
        match r {
            Ok(sol) if sol.k <= k => Ok(Some(sol)),
            Ok(_) | Err(SolveError::Disconnected) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let mut evaluations = 1;
    let mut best = solve(full)?.ok_or(SolveError::InfeasibleBudget)?;
    let mut hi = full;
    match search {
        SearchMode::Continuous => {
            let mut lo = 0.0;
            while hi - lo >= eps / 64.0 {
                let mid = 0.5 * (lo + hi);
                evaluations += 1;
                match solve(mid)? {
                    Some(sol) => {
                        hi = mid;
                        best = sol;
                    }
                    None => lo = mid,
                }
            }
        }
        SearchMode::Discrete => {
            let g = build_reach_graph(&disc, full);
            let m = disc.sentinel();
            let mut values: Vec<f64> = (0..=m)
                .flat_map(|i| g.h.distances(i, full).into_iter().skip(i + 1).filter(|v| v.is_finite()))
                .collect();
            if matches!(mode, StartMode::Free) {
                let tails: Vec<f64> = (0..m).map(|u| g.h.distances(u, full)[m]).collect();
                let heads = g.h.distances(0, full);
                for &t in &tails {
                    for &h in &heads {
                        if t + h <= full {
                            values.push(t + h);
                        }
                    }
                }
            }
            values.sort_by(f64::total_cmp);
            values.dedup();
            let (mut lo, mut top) = (0usize, values.len());
            while lo < top {
                let mid = (lo + top) / 2;
                evaluations += 1;
                match solve(values[mid])? {
                    Some(sol) => {
                        top = mid;
                        hi = values[mid];
                        best = sol;
                    }
                    None => lo = mid + 1,
                }
            }
        }
    }
    Ok(MinDistanceResult {
        k,
        d_star: hi,
        epsilon: eps,
        evaluations,
        stations: best,
    })
}
