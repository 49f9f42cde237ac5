//! Classification of straight segments between boundary points against the
//! polygon interior.

use super::{BoundaryPoint, Point2, Polygon};

const ANGLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Local {
    Interior,
    Along,
    Exterior,
}

/// Clockwise angle from `from` to `to`, in `[0, 2pi)`.
fn cw_angle(from: Point2, to: Point2) -> f64 {
    let a = to.cross(from).atan2(from.dot(to));
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Where a ray leaving boundary point `p` in direction `dir` goes first.
pub(crate) fn local_direction(poly: &Polygon, p: &BoundaryPoint, dir: Point2) -> Local {
    let n = poly.len();
    let tol = poly.tolerance();
    let len = poly.edge_len(p.edge);
    let vertex = if p.t * len <= tol {
        Some(p.edge)
    } else if (1.0 - p.t) * len <= tol {
        Some((p.edge + 1) % n)
    } else {
        None
    };
    match vertex {
        None => {
            let (a, b) = poly.edge(p.edge);
            let e = b - a;
            let s = e.cross(dir) / (e.norm() * dir.norm());
            if s.abs() <= ANGLE_EPS {
                Local::Along
            } else if s < 0.0 {
                Local::Interior
            } else {
                Local::Exterior
            }
        }
        Some(i) => {
            let v = poly.vertex(i);
            let out = poly.vertex(i + 1) - v;
            let back = poly.vertex(i + n - 1) - v;
            let limit = cw_angle(out, back);
            let ang = cw_angle(out, dir);
            if ang <= ANGLE_EPS || ang >= std::f64::consts::TAU - ANGLE_EPS || (ang - limit).abs() <= ANGLE_EPS {
                Local::Along
            } else if ang < limit {
                Local::Interior
            } else {
                Local::Exterior
            }
        }
    }
}

/// Contacts of segment `ab` with the boundary: sorted parameters along `ab`
/// where it meets an edge, plus collinear overlap ranges.
struct Contacts {
    params: Vec<f64>,
    overlaps: Vec<(f64, f64)>,
}

fn contacts(poly: &Polygon, a: Point2, b: Point2) -> Contacts {
    let tol = poly.tolerance();
    let ab = b - a;
    let len = ab.norm();
    let ptol = tol / len;
    let mut params = vec![0.0, 1.0];
    let mut overlaps = Vec::new();
    let mut cand = Vec::new();
    poly.index.query(a, b, 2.0 * tol, &mut cand);
    for &e in &cand {
        let (c, d) = poly.edge(e as usize);
        let dc = ab.cross(c - a) / len;
        let dd = ab.cross(d - a) / len;
        if dc.abs() <= tol && dd.abs() <= tol {
            let sc = (c - a).dot(ab) / (len * len);
            let sd = (d - a).dot(ab) / (len * len);
            let lo = sc.min(sd).max(0.0);
            let hi = sc.max(sd).min(1.0);
            if hi - lo > ptol {
                params.push(lo);
                params.push(hi);
                overlaps.push((lo, hi));
            } else if hi >= lo - ptol {
                params.push(lo.clamp(0.0, 1.0));
            }
            continue;
        }
        if (dc > tol && dd > tol) || (dc < -tol && dd < -tol) {
            continue;
        }
        let cd = d - c;
        let lcd = cd.norm();
        let ea = cd.cross(a - c) / lcd;
        let eb = cd.cross(b - c) / lcd;
        if (ea > tol && eb > tol) || (ea < -tol && eb < -tol) {
            continue;
        }
        let u = if (dc - dd).abs() > 0.0 { (dc / (dc - dd)).clamp(0.0, 1.0) } else { 0.0 };
        let x = c.lerp(d, u);
        let s = (x - a).dot(ab) / (len * len);
        if s >= -ptol && s <= 1.0 + ptol {
            params.push(s.clamp(0.0, 1.0));
        }
    }
    params.sort_by(|x, y| x.partial_cmp(y).unwrap());
    params.dedup_by(|x, y| (*x - *y).abs() <= ptol);
    Contacts { params, overlaps }
}

/// True if the closed segment `ab` avoids the polygon interior. Touching the
/// boundary and running along it are allowed.
pub(crate) fn over_water(poly: &Polygon, a: &BoundaryPoint, b: &BoundaryPoint) -> bool {
    let dir = b.point - a.point;
    if dir.norm() <= poly.tolerance() {
        return true;
    }
    let la = local_direction(poly, a, dir);
    let lb = local_direction(poly, b, a.point - b.point);
    if la == Local::Interior || lb == Local::Interior {
        return false;
    }
    let c = contacts(poly, a.point, b.point);
    if c.params.len() == 2 && (la == Local::Exterior || lb == Local::Exterior) {
        // No contact between the ends: the whole segment is on the side the ends leave to.
        return true;
    }
    pieces_over_water(poly, a.point, b.point, &c)
}

/// Like [`over_water`] for arbitrary endpoints, without the local precheck.
pub(crate) fn points_over_water(poly: &Polygon, a: Point2, b: Point2) -> bool {
    let len = a.dist(b);
    if len <= poly.tolerance() {
        return !poly.contains_strict(a);
    }
    pieces_over_water(poly, a, b, &contacts(poly, a, b))
}

fn pieces_over_water(poly: &Polygon, a: Point2, b: Point2, c: &Contacts) -> bool {
    let ptol = poly.tolerance() / a.dist(b);
    c.params.windows(2).all(|w| {
        if w[1] - w[0] <= 2.0 * ptol {
            return true;
        }
        let mid = 0.5 * (w[0] + w[1]);
        if c.overlaps.iter().any(|&(lo, hi)| mid >= lo && mid <= hi) {
            return true;
        }
        !poly.contains_strict(a.lerp(b, mid))
    })
}

/// True if the open segment `ab` lies strictly outside the polygon: no
/// interior point touches the boundary and nothing runs along an edge.
pub(crate) fn strictly_exterior(poly: &Polygon, a: &BoundaryPoint, b: &BoundaryPoint) -> bool {
    let dir = b.point - a.point;
    let len = dir.norm();
    if len <= poly.tolerance() {
        return false;
    }
    if local_direction(poly, a, dir) != Local::Exterior || local_direction(poly, b, a.point - b.point) != Local::Exterior {
        return false;
    }
    let c = contacts(poly, a.point, b.point);
    if !c.overlaps.is_empty() {
        return false;
    }
    let eta = 10.0 * poly.tolerance() / len;
    // With no contact in between, the exterior start decides the whole segment.
    !c.params.iter().any(|&s| s > eta && s < 1.0 - eta)
}
