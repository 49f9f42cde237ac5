//! Validated clockwise polygons and their boundary parametrization.
//!
//! Every boundary point is addressed by an edge index, a parameter along the
//! directed edge, and its clockwise arc length measured from vertex 0. Vertex 0
//! plays the role of the order anchor: solvers rotate the polygon so that the
//! chosen start station becomes vertex 0, after which `arc` is exactly the
//! position in the boundary order and the sentinel copy of the anchor sits at
//! `arc == perimeter`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::index::EdgeIndex;
use super::predicates::{convex_hull_indices, orient, point_segment_distance, segments_intersect, signed_area2};
use super::Point2;
use crate::error::GeometryError;

/// Relative tolerance used for boundary snapping and near-collinearity.
pub const REL_TOL: f64 = 1e-9;

/// A point on the polygon boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub t: f64,
    /// Clockwise arc length from vertex 0, in `[0, L]`.
    pub arc: f64,
    pub point: Point2,
}

/// Clockwise boundary interval `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
}

impl Interval {
    pub fn length(&self, poly: &Polygon) -> f64 {
        poly.arc_distance(&self.from, &self.to)
    }
}

/// A convex-hull edge that is not an edge of the polygon, with the pocket it closes.
#[derive(Debug, Clone, PartialEq)]
pub struct Lid {
    pub start_vertex: usize,
    pub end_vertex: usize,
    pub a: BoundaryPoint,
    pub b: BoundaryPoint,
    /// Pocket ring: the boundary chain from `a` to `b`, closed implicitly by the lid.
    pub pocket: Vec<Point2>,
}

impl Lid {
    pub fn length(&self) -> f64 {
        self.a.point.dist(self.b.point)
    }
}

#[derive(Debug, Clone)]
pub struct Polygon {
    vertices: Vec<Point2>,
    edge_len: Vec<f64>,
    cum_arc: Vec<f64>,
    perimeter: f64,
    area2: f64,
    shoelace_prefix: Vec<f64>,
    hull: Vec<usize>,
    lids: Vec<Lid>,
    edge_pocket: Vec<Option<usize>>,
    tol: f64,
    diag: f64,
    pub(crate) index: EdgeIndex,
}

impl Polygon {
    /// Validates raw vertices and normalizes them to a clockwise simple polygon.
    ///
    /// Closing duplicates, repeated points and collinear pass-through vertices
    /// are removed. Either input orientation is accepted; vertex 0 is kept as
    /// the first vertex.
    pub fn validate(raw: &[Point2]) -> Result<Self, GeometryError> {
        if let Some(i) = raw.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        if raw.len() < 3 {
            return Err(GeometryError::Degenerate(format!("{} vertices, need at least 3", raw.len())));
        }
        let diag = bbox_diagonal(raw);
        if diag == 0.0 {
            return Err(GeometryError::Degenerate("all vertices coincide".into()));
        }
        // Keeps squared lengths and areas finite and nonzero.
        if !(diag <= 1e100) {
            return Err(GeometryError::Degenerate("coordinates too large".into()));
        }
        if diag < 1e-100 {
            return Err(GeometryError::Degenerate("polygon too small".into()));
        }
        let tol = REL_TOL * diag;

        let mut pts: Vec<Point2> = Vec::with_capacity(raw.len());
        for &p in raw {
            if pts.last().map_or(true, |q: &Point2| q.dist(p) > tol) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= tol {
            pts.pop();
        }

        // Merge pass-through collinear vertices until none remain.
        loop {
            let n = pts.len();
            if n < 3 {
                return Err(GeometryError::Degenerate("fewer than 3 distinct vertices".into()));
            }
            let found = (0..n).find(|&i| {
                let prev = pts[(i + n - 1) % n];
                let next = pts[(i + 1) % n];
                let v = pts[i];
                let (dist, _) = point_segment_distance(v, prev, next);
                dist <= tol && (v - prev).dot(next - v) > 0.0
            });
            match found {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
        }

        check_simple(&pts)?;
        let area2 = signed_area2(&pts);
        if area2.abs() <= tol * diag {
            return Err(GeometryError::Degenerate("zero area".into()));
        }
        if area2 > 0.0 {
            pts[1..].reverse();
        }
        Ok(Self::from_clockwise(pts))
    }

    /// Builds all derived data from vertices already known to be a clockwise
    /// simple polygon. Collinear vertices are permitted here (used when a start
    /// point is spliced into an edge).
    pub(crate) fn from_clockwise(vertices: Vec<Point2>) -> Self {
        let n = vertices.len();
        let diag = bbox_diagonal(&vertices);
        let tol = REL_TOL * diag;
        let edge_len: Vec<f64> = (0..n).map(|i| vertices[i].dist(vertices[(i + 1) % n])).collect();
        let mut cum_arc = Vec::with_capacity(n);
        let mut acc = 0.0;
        for &l in &edge_len {
            cum_arc.push(acc);
            acc += l;
        }
        let perimeter = acc;
        let mut shoelace_prefix = Vec::with_capacity(n + 1);
        let mut s = 0.0;
        shoelace_prefix.push(0.0);
        for i in 0..n {
            s += vertices[i].cross(vertices[(i + 1) % n]);
            shoelace_prefix.push(s);
        }
        let area2 = s;

        let mut poly = Self {
            index: EdgeIndex::new(&vertices),
            vertices,
            edge_len,
            cum_arc,
            perimeter,
            area2,
            shoelace_prefix,
            hull: Vec::new(),
            lids: Vec::new(),
            edge_pocket: vec![None; n],
            tol,
            diag,
        };
        poly.build_hull_and_lids();
        poly
    }

    fn build_hull_and_lids(&mut self) {
        let n = self.len();
        let mut hull = convex_hull_indices(&self.vertices);
        hull.reverse(); // clockwise
        let start = hull.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
        hull.rotate_left(start);
        self.hull = hull;

        let h = self.hull.len();
        let mut lids = Vec::new();
        for k in 0..h {
            let a = self.hull[k];
            let b = self.hull[(k + 1) % h];
            let span = (b + n - a) % n;
            let span = if span == 0 { n } else { span };
            if span <= 1 {
                continue;
            }
            let pa = self.vertices[a];
            let pb = self.vertices[b];
            // Chain vertices on the hull edge split it into lids; a stretch
            // of boundary lying on the hull belongs to no pocket.
            let on: Vec<usize> = (0..=span)
                .filter(|&j| point_segment_distance(self.vertices[(a + j) % n], pa, pb).0 <= self.tol)
                .collect();
            for w in on.windows(2) {
                let (j0, j1) = (w[0], w[1]);
                if j1 - j0 < 2 {
                    continue;
                }
                let (u, v) = ((a + j0) % n, (a + j1) % n);
                let pocket: Vec<Point2> = (j0..=j1).map(|j| self.vertices[(a + j) % n]).collect();
                let lid_id = lids.len();
                for j in j0..j1 {
                    self.edge_pocket[(a + j) % n] = Some(lid_id);
                }
                lids.push(Lid {
                    start_vertex: u,
                    end_vertex: v,
                    a: self.vertex_point(u),
                    b: self.vertex_point(v),
                    pocket,
                });
            }
        }
        self.lids = lids;
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.len()]
    }

    /// Directed edge `i` as `(start, end)`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        self.edge_len[i % self.len()]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_len
    }

    /// Arc position of vertex `i`.
    pub fn cum_arc(&self, i: usize) -> f64 {
        self.cum_arc[i]
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Unsigned area.
    pub fn area(&self) -> f64 {
        self.area2.abs() / 2.0
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn bbox_diagonal(&self) -> f64 {
        self.diag
    }

    /// Hull vertex indices in clockwise order, starting from the lowest index.
    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    pub fn hull_points(&self) -> Vec<Point2> {
        self.hull.iter().map(|&i| self.vertices[i]).collect()
    }

    pub fn lids(&self) -> &[Lid] {
        &self.lids
    }

    /// Lid index of the pocket containing edge `i`, if the edge is not on the hull.
    pub fn pocket_of_edge(&self, i: usize) -> Option<usize> {
        self.edge_pocket[i % self.len()]
    }

    pub fn vertex_point(&self, i: usize) -> BoundaryPoint {
        let i = i % self.len();
        BoundaryPoint {
            edge: i,
            t: 0.0,
            arc: self.cum_arc[i],
            point: self.vertices[i],
        }
    }

    pub fn boundary_point(&self, edge: usize, t: f64) -> BoundaryPoint {
        let edge = edge % self.len();
        let t = t.clamp(0.0, 1.0);
        let (a, b) = self.edge(edge);
        BoundaryPoint {
            edge,
            t,
            arc: self.cum_arc[edge] + t * self.edge_len[edge],
            point: a.lerp(b, t),
        }
    }

    /// Boundary point at absolute arc `arc` from vertex 0, `0 <= arc <= L`.
    /// `arc == L` yields the sentinel copy of vertex 0 (last edge, `t = 1`).
    pub fn point_at(&self, arc: f64) -> BoundaryPoint {
        let n = self.len();
        if arc >= self.perimeter {
            let mut p = self.boundary_point(n - 1, 1.0);
            p.arc = self.perimeter;
            return p;
        }
        let arc = arc.max(0.0);
        let edge = match self.cum_arc.binary_search_by(|c| c.partial_cmp(&arc).unwrap()) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let len = self.edge_len[edge];
        let t = if len > 0.0 { (arc - self.cum_arc[edge]) / len } else { 0.0 };
        let (a, b) = self.edge(edge);
        BoundaryPoint {
            edge,
            t: t.clamp(0.0, 1.0),
            arc,
            point: a.lerp(b, t.clamp(0.0, 1.0)),
        }
    }

    /// The sentinel: the copy of vertex 0 that is the maximum of the order.
    pub fn sentinel(&self) -> BoundaryPoint {
        self.point_at(self.perimeter)
    }

    /// Snaps an arbitrary point to the nearest boundary point, if within `max_dist`.
    pub fn locate(&self, p: Point2, max_dist: f64) -> Option<BoundaryPoint> {
        let n = self.len();
        let mut best: Option<(f64, usize, f64)> = None;
        for i in 0..n {
            let (a, b) = self.edge(i);
            let (dist, t) = point_segment_distance(p, a, b);
            if best.map_or(true, |(d, _, _)| dist < d) {
                best = Some((dist, i, t));
            }
        }
        let (dist, edge, t) = best?;
        if dist > max_dist {
            return None;
        }
        let bp = if t >= 1.0 {
            self.vertex_point(edge + 1)
        } else {
            self.boundary_point(edge, t)
        };
        Some(bp)
    }

    /// Clockwise boundary length from `a` to `b`; zero when they coincide.
    pub fn arc_distance(&self, a: &BoundaryPoint, b: &BoundaryPoint) -> f64 {
        let d = (b.arc - a.arc).rem_euclid(self.perimeter);
        if d <= self.tol || self.perimeter - d <= self.tol {
            if a.point.dist(b.point) <= self.tol {
                return 0.0;
            }
        }
        d
    }

    /// Position of `p` in the boundary order anchored at `s0`, in `[0, L)`.
    pub fn order_position(&self, s0: &BoundaryPoint, p: &BoundaryPoint) -> f64 {
        self.arc_distance(s0, p)
    }

    /// Compares two boundary points in the order anchored at `s0`.
    pub fn order_compare(&self, s0: &BoundaryPoint, a: &BoundaryPoint, b: &BoundaryPoint) -> Ordering {
        let pa = self.order_position(s0, a);
        let pb = self.order_position(s0, b);
        if (pa - pb).abs() <= self.tol {
            Ordering::Equal
        } else {
            pa.partial_cmp(&pb).unwrap()
        }
    }

    /// The boundary point at clockwise distance `arc` from `s0`.
    pub fn point_at_arc(&self, s0: &BoundaryPoint, arc: f64) -> Result<BoundaryPoint, GeometryError> {
        if !(0.0..self.perimeter).contains(&arc) {
            return Err(GeometryError::OutOfRange {
                arc,
                perimeter: self.perimeter,
            });
        }
        let abs = (s0.arc + arc).rem_euclid(self.perimeter);
        Ok(self.point_at(abs))
    }

    /// True if `p` lies on the boundary of the convex hull (within tolerance).
    pub fn on_hull(&self, p: Point2) -> bool {
        let h = self.hull.len();
        (0..h).any(|k| {
            let a = self.vertices[self.hull[k]];
            let b = self.vertices[self.hull[(k + 1) % h]];
            point_segment_distance(p, a, b).0 <= 10.0 * self.tol
        })
    }

    /// Same polygon with `s0` as vertex 0. If `s0` is interior to an edge, the
    /// edge is split there.
    pub fn anchored_at(&self, s0: &BoundaryPoint) -> Polygon {
        let n = self.len();
        let (start, splice) = if s0.t * self.edge_len[s0.edge] <= self.tol {
            (s0.edge, None)
        } else if (1.0 - s0.t) * self.edge_len[s0.edge] <= self.tol {
            ((s0.edge + 1) % n, None)
        } else {
            ((s0.edge + 1) % n, Some(s0.point))
        };
        let mut verts = Vec::with_capacity(n + 1);
        if let Some(p) = splice {
            verts.push(p);
        }
        for j in 0..n {
            verts.push(self.vertices[(start + j) % n]);
        }
        Polygon::from_clockwise(verts)
    }

    /// Twice the signed area enclosed by the boundary run from `from` forward
    /// by `span`, ending at `to`, closed by the straight chord back. Positive
    /// when the run bounds a region on its left, which is the case for a pocket
    /// skipped by a clockwise shortcut.
    pub(crate) fn run_area2(&self, from: &BoundaryPoint, span: f64, to: &BoundaryPoint) -> f64 {
        let a = from.point;
        let b = to.point;
        let first = from.edge + 1;
        let end = self.unrolled_vertex_count(from.arc + span - self.tol);
        if end <= first {
            return 0.0;
        }
        let n = self.len();
        let last = end - 1;
        a.cross(self.vertices[first % n])
            + self.shoelace_unrolled(last)
            - self.shoelace_unrolled(first)
            + self.vertices[last % n].cross(b)
            + b.cross(a)
    }

    /// Arc of unrolled vertex index `k` (vertex `k % n` on lap `k / n`).
    pub(crate) fn unrolled_arc(&self, k: usize) -> f64 {
        let n = self.len();
        (k / n) as f64 * self.perimeter + self.cum_arc[k % n]
    }

    /// Number of unrolled vertex indices `k` whose unrolled arc is below `pos`.
    pub(crate) fn unrolled_vertex_count(&self, pos: f64) -> usize {
        let n = self.len();
        let wraps = (pos / self.perimeter).floor().max(0.0);
        let rem = pos - wraps * self.perimeter;
        let below = self.cum_arc.partition_point(|&c| c < rem);
        wraps as usize * n + below
    }

    /// Sum of `cross(v_i, v_{i+1})` over unrolled indices `0..k`.
    fn shoelace_unrolled(&self, k: usize) -> f64 {
        let n = self.len();
        (k / n) as f64 * self.area2 + self.shoelace_prefix[k % n]
    }

    /// A point strictly inside the polygon (centroid of an ear).
    pub fn interior_point(&self) -> Point2 {
        let n = self.len();
        for i in 0..n {
            let prev = self.vertices[(i + n - 1) % n];
            let v = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            if orient(prev, v, next) >= 0.0 {
                continue;
            }
            let empty = (0..n).all(|j| {
                if j == i || j == (i + 1) % n || j == (i + n - 1) % n {
                    return true;
                }
                let q = self.vertices[j];
                !(orient(prev, v, q) <= 0.0 && orient(v, next, q) <= 0.0 && orient(next, prev, q) <= 0.0)
            });
            if empty {
                return Point2::new((prev.x + v.x + next.x) / 3.0, (prev.y + v.y + next.y) / 3.0);
            }
        }
        self.vertices[0]
    }

    /// True if `p` is strictly inside (not on the boundary within tolerance).
    pub fn contains_strict(&self, p: Point2) -> bool {
        if self.boundary_distance(p) <= self.tol {
            return false;
        }
        super::predicates::winding_number(&self.vertices, p) != 0
    }

    /// Euclidean distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                point_segment_distance(p, a, b).0
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn bbox_diagonal(pts: &[Point2]) -> f64 {
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    lo.dist(hi)
}

fn check_simple(pts: &[Point2]) -> Result<(), GeometryError> {
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        // Adjacent edges may only share their common vertex.
        let c = pts[(i + 2) % n];
        if orient(a, b, c) == 0.0 && (b - a).dot(c - b) < 0.0 {
            return Err(GeometryError::NotSimple {
                first: i,
                second: (i + 1) % n,
            });
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Err(GeometryError::NotSimple { first: i, second: j });
            }
        }
    }
    Ok(())
}
