//! Exact greedy placement for a fixed start station.
//!
//! Each step picks, among the points reachable from the previous station,
//! the one whose own reach extends farthest clockwise. The maximum is
//! attained at finitely many special points: vertices, perpendicular feet of
//! vertices on edges, endpoints of perpendicular bridges of length exactly
//! `d`, and the previous station's own farthest point.

use serde::Serialize;

use crate::error::{Result, SolveError};
use crate::exterior::GeodesicEngine;
use crate::geometry::segment::strictly_exterior;
use crate::geometry::{range_slack, BoundaryPoint, Point2, Polygon};
use crate::solution::StationSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    Vertex,
    VertexProjection,
    EdgeDProjectionFwd,
    EdgeDProjectionBwd,
    MaxReach,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Candidate {
    pub point: BoundaryPoint,
    pub kind: CandidateKind,
    /// Other endpoint of the generating bridge, for projections.
    pub partner: Option<Point2>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoHopResult {
    pub s_next: BoundaryPoint,
    pub y_next: BoundaryPoint,
}

/// Edges of the pocket containing `e`, in boundary order, or empty.
fn pocket_edges(poly: &Polygon, e: usize) -> Vec<usize> {
    let Some(id) = poly.pocket_of_edge(e) else {
        return Vec::new();
    };
    let lid = &poly.lids()[id];
    let n = poly.len();
    let span = (lid.end_vertex + n - lid.start_vertex) % n;
    let span = if span == 0 { n } else { span };
    (0..span).map(|j| (lid.start_vertex + j) % n).collect()
}

fn bridge_ok(poly: &Polygon, x: &BoundaryPoint, q: &BoundaryPoint, d: f64) -> bool {
    x.point.dist(q.point) <= d + range_slack(d) && strictly_exterior(poly, x, q)
}

/// Foot of the perpendicular from `p` on edge `e`, as an edge parameter.
fn foot(poly: &Polygon, e: usize, p: Point2) -> Option<f64> {
    let (a, b) = poly.edge(e);
    let u = b - a;
    let t = (p - a).dot(u) / u.dot(u);
    (-1e-12..=1.0 + 1e-12).contains(&t).then(|| t.clamp(0.0, 1.0))
}

/// Perpendicular segments of length exactly `d` from a point of edge `e`
/// to a point of edge `f`: pairs `(t on e, point on f)`.
fn d_offsets(poly: &Polygon, e: usize, f: usize, d: f64) -> Vec<(f64, BoundaryPoint)> {
    let (a, b) = poly.edge(e);
    let (c, g) = poly.edge(f);
    let u = b - a;
    let w = g - c;
    let nrm = u.perp() * (1.0 / u.norm());
    let tol = poly.tolerance();
    let mut out = Vec::new();
    for side in [1.0, -1.0] {
        let off = nrm * (side * d);
        // a + t u + off = c + r w
        let det = u.cross(w);
        let rhs = c - a - off;
        if det.abs() <= 1e-12 * u.norm() * w.norm() {
            if rhs.cross(u).abs() / u.norm() > tol {
                continue;
            }
            // Parallel at distance d: the ends of the overlap.
            let uu = u.dot(u);
            let t1 = (c - off - a).dot(u) / uu;
            let t2 = (g - off - a).dot(u) / uu;
            let lo = t1.min(t2).max(0.0);
            let hi = t1.max(t2).min(1.0);
            if lo > hi + 1e-12 {
                continue;
            }
            for t in [lo, hi] {
                let q = a + u * t + off;
                let r = (q - c).dot(w) / w.dot(w);
                out.push((t, poly.boundary_point(f, r)));
            }
            continue;
        }
        let t = rhs.cross(w) / det;
        let r = rhs.cross(u) / det;
        if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&r) {
            out.push((t.clamp(0.0, 1.0), poly.boundary_point(f, r.clamp(0.0, 1.0))));
        }
    }
    out
}

/// Edge positions of pocket edges relative to the pocket start, for
/// "later"/"earlier" comparisons inside one pocket.
fn pocket_rank(edges: &[usize], e: usize) -> usize {
    edges.iter().position(|&x| x == e).unwrap_or(usize::MAX)
}

/// The earliest foot on `e` of a perpendicular d-bridge from a later vertex
/// of the same pocket.
pub fn vertex_projections(poly: &Polygon, e: usize, d: f64) -> Vec<Candidate> {
    let edges = pocket_edges(poly, e);
    if edges.is_empty() {
        return Vec::new();
    }
    let n = poly.len();
    let rank = pocket_rank(&edges, e);
    let mut best: Option<Candidate> = None;
    for &f in &edges[rank..] {
        let v = (f + 1) % n;
        let p = poly.vertex_point(v);
        let Some(t) = foot(poly, e, p.point) else { continue };
        let x = poly.boundary_point(e, t);
        if x.point.dist(p.point) <= poly.tolerance() || !bridge_ok(poly, &x, &p, d) {
            continue;
        }
        if best.map_or(true, |b| t < b.point.t) {
            best = Some(Candidate {
                point: x,
                kind: CandidateKind::VertexProjection,
                partner: Some(p.point),
            });
        }
    }
    best.into_iter().collect()
}

/// At most two candidates from perpendicular bridges of length exactly `d`
/// anchored on `e`: the earliest foot on `e` reaching a later edge, and the
/// far endpoint on an earlier edge of the bridge with the latest foot on `e`.
pub fn edge_d_projections(poly: &Polygon, e: usize, d: f64) -> Vec<Candidate> {
    let edges = pocket_edges(poly, e);
    if edges.is_empty() {
        return Vec::new();
    }
    let rank = pocket_rank(&edges, e);
    let mut fwd: Option<(f64, Candidate)> = None;
    let mut bwd: Option<(f64, Candidate)> = None;
    for (k, &f) in edges.iter().enumerate() {
        if k == rank {
            continue;
        }
        for (t, q) in d_offsets(poly, e, f, d) {
            let x = poly.boundary_point(e, t);
            if !bridge_ok(poly, &x, &q, d) {
                continue;
            }
            if k > rank && fwd.map_or(true, |(bt, _)| t < bt) {
                fwd = Some((
                    t,
                    Candidate {
                        point: x,
                        kind: CandidateKind::EdgeDProjectionFwd,
                        partner: Some(q.point),
                    },
                ));
            }
            if k < rank && bwd.map_or(true, |(bt, _)| t > bt) {
                bwd = Some((
                    t,
                    Candidate {
                        point: q,
                        kind: CandidateKind::EdgeDProjectionBwd,
                        partner: Some(x.point),
                    },
                ));
            }
        }
    }
    fwd.into_iter().chain(bwd).map(|(_, c)| c).collect()
}

/// Greedy solver over a polygon anchored at the start station.
pub struct OptSolver<'p> {
    engine: GeodesicEngine<'p>,
    d: f64,
    frontier_tol: f64,
}

impl<'p> OptSolver<'p> {
    /// `anchored` must have the start station as vertex 0.
    pub fn new(anchored: &'p Polygon, d: f64) -> Self {
        Self {
            engine: GeodesicEngine::new(anchored),
            d,
            frontier_tol: 1e-9 * anchored.perimeter(),
        }
    }

    fn poly(&self) -> &'p Polygon {
        self.engine.polygon()
    }

    pub fn is_sentinel(&self, y: &BoundaryPoint) -> bool {
        y.arc >= self.poly().perimeter() - self.frontier_tol
    }

    pub fn max_reach(&self, x: &BoundaryPoint) -> BoundaryPoint {
        self.engine.max_reach(x, self.d)
    }

    /// Every special point in the clockwise range `(lo, hi]` of arcs.
    pub fn candidates(&self, lo: f64, hi: f64) -> Vec<Candidate> {
        let poly = self.poly();
        let n = poly.len();
        let tol = poly.tolerance();
        let d = self.d;
        let in_range = |bp: &BoundaryPoint| bp.arc > lo + tol && bp.arc <= hi + tol;
        let mut out = Vec::new();
        let first = poly.point_at(lo).edge;
        let last = poly.point_at(hi.min(poly.perimeter())).edge;
        let range_edges: Vec<usize> = (first..=last.max(first)).collect();
        for v in 0..n {
            let p = poly.vertex_point(v);
            if in_range(&p) {
                out.push(Candidate {
                    point: p,
                    kind: CandidateKind::Vertex,
                    partner: None,
                });
            }
        }
        for &e in &range_edges {
            let (a, b) = poly.edge(e);
            for v in 0..n {
                let p = poly.vertex(v);
                if crate::geometry::predicates::point_segment_distance(p, a, b).0 > d + tol {
                    continue;
                }
                if let Some(t) = foot(poly, e, p) {
                    let x = poly.boundary_point(e, t);
                    if in_range(&x) {
                        out.push(Candidate {
                            point: x,
                            kind: CandidateKind::VertexProjection,
                            partner: Some(p),
                        });
                    }
                }
            }
            for f in pocket_edges(poly, e) {
                if f == e {
                    continue;
                }
                for (t, q) in d_offsets(poly, e, f, d) {
                    let x = poly.boundary_point(e, t);
                    if !bridge_ok(poly, &x, &q, d) {
                        continue;
                    }
                    if in_range(&x) {
                        out.push(Candidate {
                            point: x,
                            kind: CandidateKind::EdgeDProjectionFwd,
                            partner: Some(q.point),
                        });
                    }
                    if in_range(&q) {
                        out.push(Candidate {
                            point: q,
                            kind: CandidateKind::EdgeDProjectionBwd,
                            partner: Some(x.point),
                        });
                    }
                }
            }
        }
        out
    }

    /// One greedy step from `s_prev`.
    pub fn two_hop_step(&self, s_prev: &BoundaryPoint) -> Result<TwoHopResult> {
        let poly = self.poly();
        let l = poly.perimeter();
        let d = self.d;
        let eng = &self.engine;
        let field = eng.field(eng.window(s_prev, l - s_prev.arc), d, d);
        let y1 = eng.max_reach_in(&field, d).bp;
        let mut cands = self.candidates(s_prev.arc, y1.arc);
        if !self.is_sentinel(&y1) {
            cands.push(Candidate {
                point: y1,
                kind: CandidateKind::MaxReach,
                partner: None,
            });
        }
        let slack = range_slack(d);
        let mut best: Option<(BoundaryPoint, BoundaryPoint)> = None;
        for c in cands {
            let pos = c.point.arc - s_prev.arc;
            if eng.eval(&field, pos, d) > d + slack {
                continue;
            }
            let y = if self.is_sentinel(&y1) { y1 } else { self.max_reach(&c.point) };
            let better = match &best {
                None => true,
                Some((bs, by)) => {
                    y.arc > by.arc + self.frontier_tol || ((y.arc - by.arc).abs() <= self.frontier_tol && c.point.arc > bs.arc)
                }
            };
            if better {
                best = Some((c.point, y));
            }
        }
        match best {
            Some((s, y)) if s.arc > s_prev.arc + poly.tolerance() && y.arc > y1.arc - self.frontier_tol => {
                Ok(TwoHopResult { s_next: s, y_next: y })
            }
            _ => Err(SolveError::NoProgress { frontier: y1.arc }),
        }
    }

    /// Runs the greedy loop from vertex 0.
    pub fn solve(&self) -> Result<StationSolution> {
        let poly = self.poly();
        let s0 = poly.vertex_point(0);
        let mut stations = vec![s0];
        let mut frontier = self.max_reach(&s0);
        let mut prev = s0;
        while !self.is_sentinel(&frontier) {
            let step = self.two_hop_step(&prev)?;
            if step.y_next.arc <= frontier.arc + self.frontier_tol && !self.is_sentinel(&step.y_next) {
                return Err(SolveError::NoProgress { frontier: frontier.arc });
            }
            stations.push(step.s_next);
            frontier = step.y_next;
            prev = step.s_next;
        }
        Ok(StationSolution::assemble(&self.engine, stations, self.d))
    }
}

/// Optimal placement among solutions containing `s0`, which must lie on the
/// convex hull.
pub fn run_optsol(poly: &Polygon, s0: &BoundaryPoint, d: f64) -> Result<StationSolution> {
    if !(d > 0.0) {
        return Err(SolveError::RangeNonPositive(d));
    }
    if !poly.on_hull(s0.point) {
        return Err(SolveError::StartNotOnHull {
            x: s0.point.x,
            y: s0.point.y,
        });
    }
    let anchored = poly.anchored_at(s0);
    OptSolver::new(&anchored, d).solve()
}
