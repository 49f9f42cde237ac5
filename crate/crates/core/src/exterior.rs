//! Exterior chords, clockwise d-paths and the drone distance.
//!
//! A clockwise d-path between two boundary points alternates boundary
//! stretches and exterior chords of length at most `d`. Shortest ones bend
//! only at polygon vertices, so a forward dynamic program over the vertices
//! of the clockwise interval finds them.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::segment::{over_water, strictly_exterior};
use crate::geometry::{BoundaryPoint, Point2, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegKind {
    Boundary,
    Bridge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub from: Point2,
    pub to: Point2,
    pub kind: LegKind,
}

impl Leg {
    pub fn length(&self) -> f64 {
        self.from.dist(self.to)
    }
}

/// A clockwise path from `from` to `to` made of boundary and bridge legs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DPath {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
    pub legs: Vec<Leg>,
    pub total_length: f64,
}

impl DPath {
    /// Polyline through all leg endpoints.
    pub fn polyline(&self) -> Vec<Point2> {
        let mut out = vec![self.from.point];
        for leg in &self.legs {
            out.push(leg.to);
        }
        out
    }
}

/// Snaps `p` onto the boundary, or `None` if it is not on it.
fn snap(poly: &Polygon, p: Point2) -> Option<BoundaryPoint> {
    poly.locate(p, 10.0 * poly.tolerance()).map(|mut b| {
        b.point = p;
        b
    })
}

/// True iff the open segment `ab` lies in the exterior and `|ab| <= d`.
pub fn is_d_bridge(poly: &Polygon, a: Point2, b: Point2, d: f64) -> bool {
    if a.dist(b) > d + crate::geometry::range_slack(d) {
        return false;
    }
    match (snap(poly, a), snap(poly, b)) {
        (Some(a), Some(b)) => strictly_exterior(poly, &a, &b),
        _ => false,
    }
}

/// True iff the closed segment `ab` misses the interior. Flying along the
/// boundary is allowed.
pub fn segment_over_water(poly: &Polygon, a: Point2, b: Point2) -> bool {
    match (snap(poly, a), snap(poly, b)) {
        (Some(a), Some(b)) => over_water(poly, &a, &b),
        _ => crate::geometry::segment::points_over_water(poly, a, b),
    }
}

/// Node of the forward dynamic program: a boundary point with its unrolled
/// clockwise position relative to the start of the query.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Node {
    pub bp: BoundaryPoint,
    pub pos: f64,
    pub vertex: Option<usize>,
}

/// Distances from a fixed source to every vertex of a clockwise window.
#[derive(Debug, Clone)]
pub(crate) struct Field {
    pub nodes: Vec<Node>,
    pub dist: Vec<f64>,
    pub parent: Vec<usize>,
    pub cap: f64,
}

/// Shortest clockwise d-paths over one polygon, with a shared cache of
/// vertex-to-vertex visibility.
#[derive(Debug)]
pub struct GeodesicEngine<'p> {
    poly: &'p Polygon,
    vis: RefCell<HashMap<(u32, u32), bool>>,
}

impl<'p> GeodesicEngine<'p> {
    pub fn new(poly: &'p Polygon) -> Self {
        Self {
            poly,
            vis: RefCell::new(HashMap::new()),
        }
    }

    pub fn polygon(&self) -> &'p Polygon {
        self.poly
    }

    fn slack(&self, d: f64) -> f64 {
        crate::geometry::range_slack(d)
    }

    fn vertex_of(&self, bp: &BoundaryPoint) -> Option<usize> {
        let len = self.poly.edge_len(bp.edge);
        let tol = self.poly.tolerance();
        if bp.t * len <= tol {
            Some(bp.edge)
        } else if (1.0 - bp.t) * len <= tol {
            Some((bp.edge + 1) % self.poly.len())
        } else {
            None
        }
    }

    fn visible(&self, p: &Node, q: &Node) -> bool {
        match (p.vertex, q.vertex) {
            (Some(i), Some(j)) if i != j => {
                let key = (i.min(j) as u32, i.max(j) as u32);
                if let Some(&v) = self.vis.borrow().get(&key) {
                    return v;
                }
                let v = over_water(self.poly, &self.poly.vertex_point(i), &self.poly.vertex_point(j));
                self.vis.borrow_mut().insert(key, v);
                v
            }
            _ => over_water(self.poly, &p.bp, &q.bp),
        }
    }

    /// Chord admissibility: over water, at most `cap` long, and turning the
    /// skipped boundary into a pocket rather than wrapping around the island.
    pub(crate) fn chord_ok(&self, p: &Node, q: &Node, cap: f64) -> bool {
        let len = p.bp.point.dist(q.bp.point);
        if len > cap + self.slack(cap) {
            return false;
        }
        if len <= self.poly.tolerance() {
            // Coincident points are only the same place if no boundary lies between.
            return q.pos - p.pos <= self.poly.tolerance();
        }
        let area = self.poly.run_area2(&p.bp, q.pos - p.pos, &q.bp);
        if area < -self.poly.area() {
            return false;
        }
        self.visible(p, q)
    }

    pub(crate) fn node_at(&self, from: &BoundaryPoint, offset: f64) -> Node {
        let poly = self.poly;
        let l = poly.perimeter();
        let abs = from.arc + offset;
        let bp = if abs >= l - poly.tolerance() && (abs - l).abs() <= poly.tolerance() {
            poly.sentinel()
        } else {
            poly.point_at(abs.rem_euclid(l))
        };
        Node {
            vertex: self.vertex_of(&bp),
            bp,
            pos: offset,
        }
    }

    /// Nodes of the clockwise window `[from, from + span]`: the two ends and
    /// every vertex strictly inside.
    pub(crate) fn window(&self, from: &BoundaryPoint, span: f64) -> Vec<Node> {
        let poly = self.poly;
        let tol = poly.tolerance();
        let n = poly.len();
        let mut nodes = vec![Node {
            bp: *from,
            pos: 0.0,
            vertex: self.vertex_of(from),
        }];
        let first = poly.unrolled_vertex_count(from.arc + tol);
        let end = poly.unrolled_vertex_count(from.arc + span - tol);
        for k in first..end {
            let pos = poly.unrolled_arc(k) - from.arc;
            nodes.push(Node {
                bp: poly.vertex_point(k % n),
                pos,
                vertex: Some(k % n),
            });
        }
        if span > tol {
            nodes.push(self.node_at(from, span));
        }
        nodes
    }

    /// Forward program over `nodes` from node 0. Nodes farther than `budget`
    /// in a straight line from the source are skipped.
    pub(crate) fn field(&self, nodes: Vec<Node>, cap: f64, budget: f64) -> Field {
        let m = nodes.len();
        let src = nodes[0].bp.point;
        let mut dist = vec![f64::INFINITY; m];
        let mut parent = vec![usize::MAX; m];
        dist[0] = 0.0;
        let slack = self.slack(budget);
        let mut alive = vec![0usize];
        for j in 1..m {
            let pj = nodes[j].bp.point;
            if pj.dist(src) > budget + slack {
                continue;
            }
            let mut best = dist[j - 1] + (nodes[j].pos - nodes[j - 1].pos);
            let mut par = j - 1;
            for &i in &alive {
                if i + 1 >= j {
                    continue;
                }
                let cand = dist[i] + nodes[i].bp.point.dist(pj);
                if cand < best && cand <= budget + slack && self.chord_ok(&nodes[i], &nodes[j], cap) {
                    best = cand;
                    par = i;
                }
            }
            if best <= budget + slack {
                dist[j] = best;
                parent[j] = par;
                alive.push(j);
            }
        }
        Field {
            nodes,
            dist,
            parent,
            cap,
        }
    }

    /// Length of the shortest clockwise d-path over `span` from `from`.
    pub(crate) fn geodesic_span(&self, from: &BoundaryPoint, span: f64, cap: f64) -> (f64, Field) {
        let f = self.field(self.window(from, span), cap, f64::INFINITY);
        (*f.dist.last().unwrap(), f)
    }

    fn span_between(&self, a: &BoundaryPoint, b: &BoundaryPoint) -> f64 {
        let poly = self.poly;
        let tol = poly.tolerance();
        let sentinel = b.edge == poly.len() - 1 && (b.arc - poly.perimeter()).abs() <= tol;
        if sentinel {
            poly.perimeter() - a.arc
        } else {
            poly.arc_distance(a, b)
        }
    }

    /// Shortest clockwise d-path from `a` to `b`. `b` may be the sentinel.
    pub fn shortest_d_path(&self, a: &BoundaryPoint, b: &BoundaryPoint, d: f64) -> DPath {
        let mut path = self.path_span(a, self.span_between(a, b), d);
        path.to = *b;
        path
    }

    /// Shortest clockwise d-path covering `span` of boundary from `a`.
    pub(crate) fn path_span(&self, a: &BoundaryPoint, span: f64, d: f64) -> DPath {
        let (len, f) = self.geodesic_span(a, span, d);
        let mut chain = vec![f.nodes.len() - 1];
        while let Some(&j) = chain.last() {
            if j == 0 {
                break;
            }
            chain.push(f.parent[j]);
        }
        chain.reverse();
        let legs = chain
            .windows(2)
            .map(|w| Leg {
                from: f.nodes[w[0]].bp.point,
                to: f.nodes[w[1]].bp.point,
                kind: if w[1] == w[0] + 1 { LegKind::Boundary } else { LegKind::Bridge },
            })
            .collect();
        DPath {
            from: *a,
            to: f.nodes.last().unwrap().bp,
            legs,
            total_length: if span <= self.poly.tolerance() { 0.0 } else { len },
        }
    }

    /// Drone distance from `a` clockwise to `b`.
    pub fn distance(&self, a: &BoundaryPoint, b: &BoundaryPoint, d: f64) -> f64 {
        let span = self.span_between(a, b);
        if span <= self.poly.tolerance() {
            return 0.0;
        }
        self.geodesic_span(a, span, d).0
    }

    pub fn drone_reachable(&self, a: &BoundaryPoint, b: &BoundaryPoint, d: f64) -> bool {
        let span = self.span_between(a, b);
        if span <= self.poly.tolerance() {
            return true;
        }
        let f = self.field(self.window(a, span), d, d);
        *f.dist.last().unwrap() <= d + self.slack(d)
    }

    /// Exact drone distance from the field source to a point at window
    /// offset `pos`, or infinity if it exceeds `budget`.
    pub(crate) fn eval(&self, f: &Field, pos: f64, budget: f64) -> f64 {
        let tol = self.poly.tolerance();
        let from = f.nodes[0].bp;
        let target = self.node_at(&from, pos);
        let j = f.nodes.partition_point(|nd| nd.pos <= pos + tol);
        if j > 0 && (f.nodes[j - 1].pos - pos).abs() <= tol {
            return f.dist[j - 1];
        }
        self.eval_on(f, j, &target, budget)
    }

    /// Best anchor value for `target`, which lies after anchors `0..j`.
    fn eval_on(&self, f: &Field, j: usize, target: &Node, budget: f64) -> f64 {
        let slack = self.slack(budget);
        let mut order: Vec<(f64, usize)> = (0..j)
            .filter(|&i| f.dist[i].is_finite())
            .map(|i| (f.dist[i] + f.nodes[i].bp.point.dist(target.bp.point), i))
            .filter(|&(v, _)| v <= budget + slack)
            .collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (v, i) in order {
            if i + 1 == j || self.chord_ok(&f.nodes[i], target, f.cap) {
                return v;
            }
        }
        f64::INFINITY
    }

    /// The clockwise-farthest point within drone distance `d` of `from`,
    /// looking at most `span` ahead. Returns the window offset and point.
    pub(crate) fn max_reach_span(&self, from: &BoundaryPoint, span: f64, d: f64) -> Node {
        let f = self.field(self.window(from, span), d, d);
        self.max_reach_in(&f, d)
    }

    pub(crate) fn max_reach_in(&self, f: &Field, d: f64) -> Node {
        let slack = self.slack(d);
        let m = f.nodes.len();
        if m == 1 || f.dist[m - 1] <= d + slack {
            return f.nodes[m - 1];
        }
        let src = f.nodes[0].bp.point;
        let from = f.nodes[0].bp;
        for j in (1..m).rev() {
            if f.dist[j] <= d + slack {
                return f.nodes[j];
            }
            let (a, b) = (f.nodes[j - 1], f.nodes[j]);
            let (pa, pb) = (a.bp.point, b.bp.point);
            if crate::geometry::predicates::point_segment_distance(src, pa, pb).0 > d + slack {
                continue;
            }
            let mut roots: Vec<f64> = Vec::new();
            for i in 0..j {
                if !f.dist[i].is_finite() {
                    continue;
                }
                let r = d - f.dist[i];
                if r < 0.0 {
                    continue;
                }
                circle_roots(f.nodes[i].bp.point, r, pa, pb, &mut roots);
            }
            roots.retain(|&t| (0.0..1.0).contains(&t));
            roots.sort_by(|x, y| y.partial_cmp(x).unwrap());
            roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
            for t in roots {
                let pos = a.pos + t * (b.pos - a.pos);
                let mut node = self.node_at(&from, pos);
                node.bp.point = pa.lerp(pb, t);
                if self.eval_on(f, j, &node, d) <= d + slack {
                    return node;
                }
            }
        }
        f.nodes[0]
    }

    /// Farthest point reachable from `x` before the sentinel. Expects the
    /// polygon to be anchored so that the sentinel closes the order.
    pub fn max_reach(&self, x: &BoundaryPoint, d: f64) -> BoundaryPoint {
        let span = self.poly.perimeter() - x.arc;
        self.max_reach_span(x, span, d).bp
    }
}

/// Parameters `t` where `|c - (a + t (b - a))| = r`.
fn circle_roots(c: Point2, r: f64, a: Point2, b: Point2, out: &mut Vec<f64>) {
    let ab = b - a;
    let ac = a - c;
    let qa = ab.dot(ab);
    let qb = 2.0 * ab.dot(ac);
    let qc = ac.dot(ac) - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if qa == 0.0 || disc < 0.0 {
        return;
    }
    let s = disc.sqrt();
    out.push((-qb + s) / (2.0 * qa));
    out.push((-qb - s) / (2.0 * qa));
}

/// Shortest clockwise d-path from `a` to `b` (free-function form).
pub fn shortest_d_path(poly: &Polygon, a: &BoundaryPoint, b: &BoundaryPoint, d: f64) -> DPath {
    GeodesicEngine::new(poly).shortest_d_path(a, b, d)
}

/// True iff the drone distance from `a` to `b` is at most `d`.
pub fn drone_reachable(poly: &Polygon, a: &BoundaryPoint, b: &BoundaryPoint, d: f64) -> bool {
    GeodesicEngine::new(poly).drone_reachable(a, b, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(f64, f64)]) -> Polygon {
        let pts: Vec<Point2> = v.iter().map(|&p| p.into()).collect();
        Polygon::validate(&pts).unwrap()
    }

    fn notch() -> Polygon {
        poly(&[
            (0., 0.),
            (0., 4.),
            (1.5, 4.),
            (1.5, 3.),
            (2.5, 3.),
            (2.5, 4.),
            (4., 4.),
            (4., 0.),
        ])
    }

    fn sq() -> Polygon {
        poly(&[(0., 0.), (0., 1.), (1., 1.), (1., 0.)])
    }

    fn at(p: &Polygon, x: f64, y: f64) -> BoundaryPoint {
        p.locate(Point2::new(x, y), 1e-9).unwrap()
    }

    #[test]
    fn bridges_over_the_notch() {
        let p = notch();
        let (a, b) = (Point2::new(1.5, 4.), Point2::new(2.5, 4.));
        assert!(is_d_bridge(&p, a, b, 1.0));
        assert!(!is_d_bridge(&p, a, b, 0.9));
        let s = sq();
        assert!(!is_d_bridge(&s, Point2::new(0., 0.), Point2::new(1., 1.), 2.0));
    }

    #[test]
    fn over_water_examples() {
        let p = notch();
        assert!(segment_over_water(&p, Point2::new(0., 4.), Point2::new(4., 4.)));
        assert!(!segment_over_water(&p, Point2::new(0., 0.), Point2::new(4., 4.)));
        assert!(segment_over_water(&sq(), Point2::new(0., 0.), Point2::new(1., 0.)));
    }

    #[test]
    fn notch_geodesic_uses_the_lid() {
        let p = notch();
        let path = shortest_d_path(&p, &at(&p, 0., 4.), &at(&p, 4., 4.), 1.0);
        assert!((path.total_length - 4.0).abs() < 1e-9);
        let kinds: Vec<_> = path.legs.iter().map(|l| l.kind).collect();
        assert_eq!(kinds, vec![LegKind::Boundary, LegKind::Bridge, LegKind::Boundary]);
        let lens: Vec<f64> = path.legs.iter().map(Leg::length).collect();
        assert!((lens[0] - 1.5).abs() < 1e-12 && (lens[1] - 1.0).abs() < 1e-12 && (lens[2] - 1.5).abs() < 1e-12);

        let capped = shortest_d_path(&p, &at(&p, 0., 4.), &at(&p, 4., 4.), 0.5);
        assert!((capped.total_length - 6.0).abs() < 1e-9);
        assert!(capped.legs.iter().all(|l| l.kind == LegKind::Boundary));
    }

    #[test]
    fn convex_geodesic_is_the_arc() {
        let s = sq();
        for d in [0.5, 2.0, 10.0] {
            let path = shortest_d_path(&s, &at(&s, 0., 0.), &at(&s, 1., 1.), d);
            assert!((path.total_length - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reachability_threshold() {
        let p = notch();
        let (a, b) = (at(&p, 0., 4.), at(&p, 4., 4.));
        assert!(drone_reachable(&p, &a, &b, 4.0));
        assert!(!drone_reachable(&p, &a, &b, 3.9));
        let s = sq();
        let o = at(&s, 0., 0.);
        assert!(drone_reachable(&s, &o, &o, 0.0));
    }

    #[test]
    fn max_reach_examples() {
        let s = sq();
        let eng = GeodesicEngine::new(&s);
        let o = s.vertex_point(0);
        let y = eng.max_reach(&o, 1.5);
        assert!((y.arc - 1.5).abs() < 1e-9);
        assert!(y.point.dist(Point2::new(0.5, 1.0)) < 1e-9);
        let y = eng.max_reach(&o, 5.0);
        assert!((y.arc - 4.0).abs() < 1e-12);

        let p = notch();
        let eng = GeodesicEngine::new(&p);
        let y = eng.max_reach(&at(&p, 0., 4.), 4.0);
        assert!(y.point.dist(Point2::new(4., 4.)) < 1e-9, "{:?}", y);
    }

    #[test]
    fn wrong_way_chord_rejected() {
        // The bottom edge of the square seen from its end must not shortcut
        // the three other sides.
        let s = sq();
        let d = distance_full(&s);
        assert!((d - 4.0).abs() < 1e-12);
    }

    fn distance_full(s: &Polygon) -> f64 {
        let eng = GeodesicEngine::new(s);
        eng.distance(&s.vertex_point(0), &s.sentinel(), 10.0)
    }
}
