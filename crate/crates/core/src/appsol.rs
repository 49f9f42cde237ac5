//! Discretized placement: stations restricted to a boundary grid of pitch
//! at most `eps`, reach sets from budgeted shortest paths, and a minimum-hop
//! walk once around.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::error::{Result, SolveError};
use crate::exterior::GeodesicEngine;
use crate::geometry::segment::strictly_exterior;
use crate::geometry::{range_slack, BoundaryPoint, Polygon};
use crate::solution::StationSolution;

/// Grid points on the boundary of a polygon anchored at the start station.
/// Index `len()` denotes the sentinel copy of point 0.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub polygon: Polygon,
    pub points: Vec<BoundaryPoint>,
    pub epsilon: f64,
}

impl Discretization {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sentinel(&self) -> usize {
        self.points.len()
    }

    /// Point `i`, with the sentinel mapped to the polygon's sentinel.
    pub fn point(&self, i: usize) -> BoundaryPoint {
        if i == self.points.len() {
            self.polygon.sentinel()
        } else {
            self.points[i]
        }
    }
}

/// Splits every edge into `ceil(len / eps)` equal pieces after anchoring
/// the polygon at `s0`.
pub fn discretize(poly: &Polygon, s0: &BoundaryPoint, eps: f64) -> Result<Discretization> {
    if !(eps > 0.0) {
        return Err(SolveError::EpsilonNonPositive(eps));
    }
    if !poly.on_hull(s0.point) {
        return Err(SolveError::StartNotOnHull {
            x: s0.point.x,
            y: s0.point.y,
        });
    }
    let anchored = poly.anchored_at(s0);
    let mut points = Vec::new();
    for e in 0..anchored.len() {
        let pieces = ((anchored.edge_len(e) / eps) - 1e-12).ceil().max(1.0) as usize;
        for s in 0..pieces {
            points.push(anchored.boundary_point(e, s as f64 / pieces as f64));
        }
    }
    Ok(Discretization {
        polygon: anchored,
        points,
        epsilon: eps,
    })
}

/// Forward graph on the grid: boundary steps between consecutive points and
/// strictly exterior chords of length at most `d`.
#[derive(Debug, Clone)]
pub struct GeodesicGraph {
    /// Out-edges per node, `(target, weight)`, sorted by target.
    pub out: Vec<Vec<(u32, f64)>>,
    pub e2_count: usize,
}

impl GeodesicGraph {
    pub fn build(disc: &Discretization, d: f64) -> Self {
        let poly = &disc.polygon;
        let m = disc.len();
        let nodes: Vec<BoundaryPoint> = (0..=m).map(|i| disc.point(i)).collect();
        // Sweep in x so only pairs within d are examined.
        let mut by_x: Vec<usize> = (0..=m).collect();
        by_x.sort_by(|&a, &b| nodes[a].point.x.partial_cmp(&nodes[b].point.x).unwrap());
        let slack = range_slack(d);
        let out: Vec<Vec<(u32, f64)>> = (0..=m)
            .into_par_iter()
            .map(|i| {
                let mut edges = Vec::new();
                if i < m {
                    edges.push(((i + 1) as u32, nodes[i + 1].arc - nodes[i].arc));
                }
                if i == m {
                    return edges;
                }
                let pi = nodes[i].point;
                let start = by_x.partition_point(|&k| nodes[k].point.x < pi.x - d - slack);
                for &j in &by_x[start..] {
                    let pj = nodes[j].point;
                    if pj.x > pi.x + d + slack {
                        break;
                    }
                    if j <= i + 1 {
                        continue;
                    }
                    let len = pi.dist(pj);
                    // Chords out of x0 into its own adjacent pocket are over water
                    // but run backwards; the loop area test rejects them.
                    if len <= d + slack
                        && poly.run_area2(&nodes[i], nodes[j].arc - nodes[i].arc, &nodes[j]) >= -poly.area()
                        && strictly_exterior(poly, &nodes[i], &nodes[j])
                    {
                        edges.push((j as u32, len));
                    }
                }
                edges.sort_by_key(|e| e.0);
                edges
            })
            .collect();
        let e2_count = out.iter().map(|v| v.len()).sum::<usize>() - m;
        Self { out, e2_count }
    }

    /// Chords only, as `(from, to, length)`.
    pub fn e2_edges(&self) -> Vec<(usize, usize, f64)> {
        let mut v = Vec::new();
        for (i, es) in self.out.iter().enumerate() {
            for &(j, w) in es {
                if j as usize != i + 1 {
                    v.push((i, j as usize, w));
                }
            }
        }
        v
    }

    /// Single-source shortest paths from `src`, stopping beyond `budget`.
    pub fn distances(&self, src: usize, budget: f64) -> Vec<f64> {
        self.dijkstra(src, budget).0
    }

    fn dijkstra(&self, src: usize, budget: f64) -> (Vec<f64>, Vec<usize>) {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Item {
            fn cmp(&self, o: &Self) -> Ordering {
                o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
            }
        }
        let n = self.out.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(Item(0.0, src));
        while let Some(Item(du, u)) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for &(v, w) in &self.out[u] {
                let v = v as usize;
                let nd = du + w;
                if nd <= budget && nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = u;
                    heap.push(Item(nd, v));
                }
            }
        }
        (dist, parent)
    }
}

/// Hop graph: which grid points a drone can fly between.
#[derive(Debug, Clone)]
pub struct ReachGraph {
    pub disc: Discretization,
    pub h: GeodesicGraph,
    /// Forward reach sets, ascending, possibly including the sentinel.
    pub reach: Vec<Vec<u32>>,
    /// H-distance from each node to the sentinel (infinite beyond `d`).
    pub tail: Vec<f64>,
    /// H-distance from node 0 to each node (infinite beyond `d`).
    pub head: Vec<f64>,
    pub d: f64,
}

impl ReachGraph {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let has = |a: usize, b: usize| a < self.reach.len() && self.reach[a].binary_search(&(b as u32)).is_ok();
        has(i, j) || has(j, i)
    }
}

pub fn build_reach_graph(disc: &Discretization, d: f64) -> ReachGraph {
    let h = GeodesicGraph::build(disc, d);
    let m = disc.len();
    let budget = d + range_slack(d);
    let rows: Vec<(Vec<u32>, f64)> = (0..=m)
        .into_par_iter()
        .map(|i| {
            let dist = h.distances(i, budget);
            let reach = (i + 1..=m).filter(|&j| dist[j].is_finite()).map(|j| j as u32).collect();
            (reach, dist[m])
        })
        .collect();
    let head = h.distances(0, budget);
    let (reach, tail): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    ReachGraph {
        disc: disc.clone(),
        h,
        reach,
        tail,
        head,
        d,
    }
}

/// Minimum-hop walk from node 0 to the sentinel; returns the station indices.
pub fn shortest_cycle(g: &ReachGraph) -> Result<Vec<usize>> {
    let m = g.disc.sentinel();
    let mut parent = vec![usize::MAX; m + 1];
    let mut seen = vec![false; m + 1];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(u) = q.pop_front() {
        if u == m {
            break;
        }
        for &v in &g.reach[u] {
            let v = v as usize;
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                q.push_back(v);
            }
        }
    }
    if !seen[m] {
        return Err(SolveError::Disconnected);
    }
    let mut path = vec![];
    let mut cur = parent[m];
    while cur != usize::MAX {
        path.push(cur);
        cur = parent[cur];
    }
    path.reverse();
    Ok(path)
}

fn check_range(d: f64) -> Result<()> {
    if !(d > 0.0) {
        return Err(SolveError::RangeNonPositive(d));
    }
    Ok(())
}

/// Station count of the discretized solver.
pub fn appsol_k(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps: f64) -> Result<usize> {
    check_range(d)?;
    let disc = discretize(poly, s0, eps)?;
    Ok(shortest_cycle(&build_reach_graph(&disc, d))?.len())
}

/// Discretized solution containing `s0`.
pub fn run_appsol(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps: f64) -> Result<StationSolution> {
    check_range(d)?;
    let disc = discretize(poly, s0, eps)?;
    let g = build_reach_graph(&disc, d);
    let idx = shortest_cycle(&g)?;
    let stations = idx.iter().map(|&i| disc.points[i]).collect();
    Ok(StationSolution::assemble(&GeodesicEngine::new(&disc.polygon), stations, d))
}

/// Minimum-hop cycle starting and ending at grid node `s`, crossing the
/// anchor once. Positions `p` index the unrolled node `s + p`.
fn cycle_from(g: &ReachGraph, s: usize) -> Option<Vec<usize>> {
    let m = g.disc.sentinel();
    let lim = g.d + range_slack(g.d);
    let node = |u: usize| if u > m { u - m } else { u };
    let hop = |u: usize, v: usize| -> bool {
        if v <= m {
            g.reach[u].binary_search(&(v as u32)).is_ok()
        } else if u >= m {
            g.reach[u - m].binary_search(&((v - m) as u32)).is_ok()
        } else {
            g.tail[u] + g.head[v - m] <= lim
        }
    };
    let end = s + m;
    let mut parent = vec![usize::MAX; m + 1];
    let mut seen = vec![false; m + 1];
    seen[0] = true;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if u == end {
            break;
        }
        for v in u + 1..=end {
            let p = v - s;
            if seen[p] || !hop(u, v) {
                continue;
            }
            seen[p] = true;
            parent[p] = u;
            q.push_back(v);
        }
    }
    if !seen[m] {
        return None;
    }
    let mut path = vec![];
    let mut cur = parent[m];
    while cur != usize::MAX {
        path.push(node(cur) % m);
        cur = parent[cur - s];
    }
    path.reverse();
    Some(path)
}

/// Like [`run_appsol`], but also tries every grid start within drone
/// distance `d + eps / 2` of `s0` and keeps the shortest cycle.
pub fn run_appsol2(poly: &Polygon, s0: &BoundaryPoint, d: f64, eps: f64) -> Result<StationSolution> {
    check_range(d)?;
    let disc = discretize(poly, s0, eps)?;
    let g = build_reach_graph(&disc, d);
    let reach0 = g.h.distances(0, d + eps / 2.0 + range_slack(d));
    let starts: Vec<usize> = (0..disc.len()).filter(|&i| reach0[i].is_finite()).collect();
    let best = starts
        .par_iter()
        .filter_map(|&s| cycle_from(&g, s).map(|c| (c.len(), s, c)))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or(SolveError::Disconnected)?;
    let stations = best.2.iter().map(|&i| disc.points[i]).collect();
    Ok(StationSolution::assemble(&GeodesicEngine::new(&disc.polygon), stations, d))
}
