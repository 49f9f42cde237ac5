//! Low-level predicates: exact orientation, segment intersection, point location.

use robust::{orient2d, Coord};

use super::Point2;

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Exact sign of the orientation of `(a, b, c)`: positive for a left turn.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    orient2d(coord(a), coord(b), coord(c))
}

/// Exact test: does `c` lie on the closed segment `ab`, given that the three
/// points are collinear?
fn on_collinear_segment(a: Point2, b: Point2, c: Point2) -> bool {
    c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
}

/// Exact closed-segment intersection test.
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0.0 && on_collinear_segment(a, b, c) {
        return true;
    }
    if o2 == 0.0 && on_collinear_segment(a, b, d) {
        return true;
    }
    if o3 == 0.0 && on_collinear_segment(c, d, a) {
        return true;
    }
    if o4 == 0.0 && on_collinear_segment(c, d, b) {
        return true;
    }
    (o1 > 0.0) != (o2 > 0.0) && (o3 > 0.0) != (o4 > 0.0) && o1 != 0.0 && o2 != 0.0 && o3 != 0.0 && o4 != 0.0
}

/// Distance from `p` to the closed segment `ab`, with the clamped parameter.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return (p.dist(a), 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (p.dist(a.lerp(b, t)), t)
}

/// Winding number of a closed ring around `p` (counterclockwise positive).
/// Points exactly on the ring give an unspecified but finite answer.
pub fn winding_number(ring: &[Point2], p: Point2) -> i32 {
    let n = ring.len();
    let mut wn = 0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Twice the signed area (counterclockwise positive).
pub fn signed_area2(ring: &[Point2]) -> f64 {
    let n = ring.len();
    (0..n).map(|i| ring[i].cross(ring[(i + 1) % n])).sum()
}

/// Indices of the convex hull of `pts`, counterclockwise, collinear points dropped.
pub fn convex_hull_indices(pts: &[Point2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i]
            .x
            .partial_cmp(&pts[j].x)
            .unwrap()
            .then(pts[i].y.partial_cmp(&pts[j].y).unwrap())
    });
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && orient(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= 0.0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= 0.0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn crossing_and_touching_segments() {
        assert!(segments_intersect(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)));
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 5.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)));
        assert!(segments_intersect(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 1.), p(0., 1.), p(0.4, 0.6)));
    }

    #[test]
    fn winding_of_square() {
        let sq = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        assert_eq!(winding_number(&sq, p(0.5, 0.5)), 1);
        assert_eq!(winding_number(&sq, p(1.5, 0.5)), 0);
        let cw: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding_number(&cw, p(0.5, 0.5)), -1);
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [p(0., 0.), p(1., 0.), p(2., 0.), p(2., 2.), p(1., 1.), p(0., 2.)];
        let mut h = convex_hull_indices(&pts);
        h.sort();
        assert_eq!(h, vec![0, 2, 3, 5]);
    }
}
