//! Brute-force references for tests. Nothing here reuses the solver's
//! segment tests, order arithmetic or hull code; the point is to disagree
//! loudly if those are wrong.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::{BoundaryPoint, Point2, Polygon};
use crate::solution::StationSolution;

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn seg_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / l2).clamp(0.0, 1.0)
    };
    ((p.x - a.x - t * dx).powi(2) + (p.y - a.y - t * dy).powi(2)).sqrt()
}

/// Crossing-number containment, `None` when `p` is on the ring.
fn inside(ring: &[Point2], p: Point2, eps: f64) -> Option<bool> {
    let n = ring.len();
    let mut c = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if seg_dist(p, a, b) <= eps {
            return None;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                c = !c;
            }
        }
    }
    Some(c)
}

fn winding(ring: &[Point2], p: Point2) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0.0 {
            w -= 1;
        }
    }
    w
}

fn interior_probe(ring: &[Point2], eps: f64) -> Point2 {
    let n = ring.len();
    let mut step = 1e-3;
    loop {
        for i in 0..n {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            let len = (dx * dx + dy * dy).sqrt();
            // Clockwise ring: the inside is to the right of each edge.
            let h = step * len;
            let p = Point2::new((a.x + b.x) / 2.0 + dy / len * h, (a.y + b.y) / 2.0 - dx / len * h);
            if inside(ring, p, eps) == Some(true) && ring.iter().enumerate().all(|(j, &q)| seg_dist(p, q, ring[(j + 1) % n]) > h / 2.0) {
                return p;
            }
        }
        step /= 4.0;
    }
}

/// Sample points on the boundary: every vertex plus a pitch-`h` grid on
/// each edge, ordered clockwise from vertex 0 of the polygon.
#[derive(Debug, Clone)]
pub struct DenseGrid {
    pub points: Vec<(f64, Point2)>,
    pub pitch: f64,
}

impl DenseGrid {
    pub fn new(poly: &Polygon, h: f64) -> Self {
        let v = poly.vertices();
        let n = v.len();
        let mut points = Vec::new();
        let mut arc = 0.0;
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
            let pieces = if h.is_finite() && h > 0.0 { (len / h).ceil().max(1.0) as usize } else { 1 };
            for s in 0..pieces {
                let t = s as f64 / pieces as f64;
                points.push((arc + t * len, Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))));
            }
            arc += len;
        }
        Self { points, pitch: h }
    }
}

/// Node list plus brute chord tests on one polygon.
struct Brute<'a> {
    ring: &'a [Point2],
    arcs: Vec<f64>,
    eps: f64,
    probe: Point2,
}

impl<'a> Brute<'a> {
    fn new(poly: &'a Polygon) -> Self {
        let ring = poly.vertices();
        let mut arcs = vec![0.0];
        for i in 0..ring.len() {
            let a = ring[i];
            let b = ring[(i + 1) % ring.len()];
            arcs.push(arcs[i] + ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt());
        }
        let eps = 1e-9 * poly.bbox_diagonal();
        Self {
            ring,
            arcs,
            eps,
            probe: interior_probe(ring, eps),
        }
    }

    fn perimeter(&self) -> f64 {
        *self.arcs.last().unwrap()
    }

    /// Closed segment `pq` avoids the interior: split at every edge crossing
    /// and probe each piece at its middle.
    fn over_water(&self, p: Point2, q: Point2) -> bool {
        let n = self.ring.len();
        let len = ((q.x - p.x).powi(2) + (q.y - p.y).powi(2)).sqrt();
        if len <= self.eps {
            return true;
        }
        let mut ts = vec![0.0, 1.0];
        for i in 0..n {
            let a = self.ring[i];
            let b = self.ring[(i + 1) % n];
            for x in [a, b] {
                if seg_dist(x, p, q) <= self.eps {
                    let s = ((x.x - p.x) * (q.x - p.x) + (x.y - p.y) * (q.y - p.y)) / (len * len);
                    ts.push(s.clamp(0.0, 1.0));
                }
            }
            let d1 = cross(p, q, a);
            let d2 = cross(p, q, b);
            let d3 = cross(a, b, p);
            let d4 = cross(a, b, q);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                ts.push(d3 / (d3 - d4));
            }
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.windows(2).all(|w| {
            if w[1] - w[0] <= 1e-12 {
                return true;
            }
            let m = (w[0] + w[1]) / 2.0;
            let x = Point2::new(p.x + m * (q.x - p.x), p.y + m * (q.y - p.y));
            inside(self.ring, x, self.eps) != Some(true)
        })
    }

    /// The loop "boundary from `p` to `q`, then straight back" must not wrap
    /// the island.
    fn forward(&self, pa: f64, p: Point2, qa: f64, q: Point2) -> bool {
        let n = self.ring.len();
        let l = self.perimeter();
        let mut lp = vec![p];
        let mut lap = 0.0;
        let mut i = 0usize;
        loop {
            let k = i % n;
            let pos = self.arcs[k] + lap;
            if pos > pa + self.eps && pos < qa - self.eps {
                lp.push(self.ring[k]);
            }
            if pos >= qa {
                break;
            }
            i += 1;
            if i % n == 0 {
                lap += l;
            }
        }
        lp.push(q);
        winding(&lp, self.probe) == 0
    }

    /// Complete-graph Dijkstra over `nodes` (arc, point), ascending arcs,
    /// from node 0 with chord cap `d`; distances capped by `budget`.
    fn dijkstra(&self, nodes: &[(f64, Point2)], d: f64, budget: f64) -> Vec<f64> {
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
                o.0.partial_cmp(&self.0).unwrap().then(o.1.cmp(&self.1))
            }
        }
        let m = nodes.len();
        let mut dist = vec![f64::INFINITY; m];
        let mut heap = BinaryHeap::new();
        dist[0] = 0.0;
        heap.push(Item(0.0, 0));
        let slack = self.eps + 1e-12 * d.min(1e300);
        while let Some(Item(du, u)) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            let (ua, up) = nodes[u];
            for v in u + 1..m {
                let (va, vp) = nodes[v];
                let w = if v == u + 1 {
                    va - ua
                } else {
                    let len = ((vp.x - up.x).powi(2) + (vp.y - up.y).powi(2)).sqrt();
                    if len > d + slack || du + len >= dist[v] || du + len > budget + slack {
                        continue;
                    }
                    if len <= self.eps && va - ua > self.eps {
                        continue;
                    }
                    if !self.over_water(up, vp) || !self.forward(ua, up, va, vp) {
                        continue;
                    }
                    len
                };
                let nd = du + w;
                if nd < dist[v] && nd <= budget + slack {
                    dist[v] = nd;
                    heap.push(Item(nd, v));
                }
            }
        }
        dist
    }

    /// Grid nodes on the clockwise window from arc `a` over `span`.
    fn window(&self, grid: &DenseGrid, a: (f64, Point2), span: f64) -> Vec<(f64, Point2)> {
        let l = self.perimeter();
        let mut out = vec![a];
        for lap in 0..2 {
            for &(s, p) in &grid.points {
                let u = s + lap as f64 * l;
                if u > a.0 + self.eps && u < a.0 + span - self.eps {
                    out.push((u, p));
                }
            }
        }
        out
    }
}

/// Shortest clockwise d-path length from `a` to `b` over a pitch-`h` grid.
/// `b` may be the sentinel. Pass `h = f64::INFINITY` for vertices only.
pub fn brute_geodesic(poly: &Polygon, a: &BoundaryPoint, b: &BoundaryPoint, d: f64, h: f64) -> f64 {
    let br = Brute::new(poly);
    let l = br.perimeter();
    let sentinel = b.edge == poly.len() - 1 && (b.arc - l).abs() <= br.eps;
    let mut span = if sentinel { l - a.arc } else { (b.arc - a.arc).rem_euclid(l) };
    if span > l - br.eps && a.point.dist(b.point) <= br.eps && !sentinel {
        span = 0.0;
    }
    if span <= br.eps {
        return 0.0;
    }
    let grid = DenseGrid::new(poly, h);
    let mut nodes = br.window(&grid, (a.arc, a.point), span);
    nodes.push((a.arc + span, b.point));
    *br.dijkstra(&nodes, d, f64::INFINITY).last().unwrap()
}

/// Minimum number of hops from `xs[0]` around to its copy at the end, with
/// a hop allowed when the brute drone distance is at most `d`. `xs` must be
/// ascending arcs of `poly` starting at vertex 0.
pub fn brute_min_cycle(poly: &Polygon, xs: &[BoundaryPoint], d: f64) -> Option<usize> {
    let br = Brute::new(poly);
    let l = br.perimeter();
    let mut nodes: Vec<(f64, Point2, Option<usize>)> = xs.iter().enumerate().map(|(i, x)| (x.arc, x.point, Some(i))).collect();
    let v = poly.vertices();
    for i in 0..v.len() {
        if !nodes.iter().any(|nd| (nd.0 - br.arcs[i]).abs() <= br.eps) {
            nodes.push((br.arcs[i], v[i], None));
        }
    }
    nodes.push((l, xs[0].point, Some(xs.len())));
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let m = xs.len() + 1;
    let mut hops = vec![usize::MAX; m];
    hops[0] = 0;
    let at: Vec<usize> = (0..m).map(|k| nodes.iter().position(|nd| nd.2 == Some(k)).unwrap()).collect();
    for i in 0..xs.len() {
        if hops[i] == usize::MAX {
            continue;
        }
        let from = at[i];
        let sub: Vec<(f64, Point2)> = nodes[from..].iter().map(|nd| (nd.0, nd.1)).collect();
        let dist = br.dijkstra(&sub, d, d);
        for j in i + 1..m {
            if dist[at[j] - from] <= d + br.eps + 1e-12 * d {
                hops[j] = hops[j].min(hops[i] + 1);
            }
        }
    }
    (hops[m - 1] != usize::MAX).then_some(hops[m - 1])
}

/// Hull by gift wrapping, own implementation.
fn hull(points: &[Point2]) -> Vec<Point2> {
    let start = points
        .iter()
        .copied()
        .min_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()))
        .unwrap();
    let mut out = vec![start];
    let mut cur = start;
    loop {
        let mut next = points[0];
        for &p in points {
            if p == cur {
                continue;
            }
            let c = cross(cur, next, p);
            let farther = (p.x - cur.x).powi(2) + (p.y - cur.y).powi(2) > (next.x - cur.x).powi(2) + (next.y - cur.y).powi(2);
            if next == cur || c < 0.0 || (c == 0.0 && farther) {
                next = p;
            }
        }
        if next == start || out.len() > points.len() {
            break;
        }
        out.push(next);
        cur = next;
    }
    out
}

/// Every hull vertex lies on the hop curve and the curve winds once around
/// the island.
pub fn brute_enclosure(poly: &Polygon, solution: &StationSolution) -> bool {
    let mut curve = Vec::new();
    for hop in &solution.hops {
        let mut pts = vec![hop.from.point];
        pts.extend(hop.legs.iter().map(|l| l.to));
        if pts.len() == 1 {
            pts.push(hop.to.point);
        }
        if !curve.is_empty() {
            pts.remove(0);
        }
        curve.extend(pts);
    }
    if curve.len() < 2 {
        return false;
    }
    let ring = poly.vertices();
    let on_curve = |h: Point2| curve.windows(2).any(|w| seg_dist(h, w[0], w[1]) <= 1e-6);
    if !hull(ring).into_iter().all(on_curve) {
        return false;
    }
    let eps = 1e-9 * poly.bbox_diagonal();
    winding(&curve, interior_probe(ring, eps)).abs() == 1
}
