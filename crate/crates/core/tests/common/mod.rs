#![allow(dead_code)]

use std::f64::consts::TAU;

use dhull::{BoundaryPoint, Point2, Polygon};
use rand::Rng;

pub fn poly(v: &[(f64, f64)]) -> Polygon {
    let pts: Vec<Point2> = v.iter().map(|&p| p.into()).collect();
    Polygon::validate(&pts).unwrap()
}

pub fn sq() -> Polygon {
    poly(&[(0., 0.), (0., 1.), (1., 1.), (1., 0.)])
}

pub fn notch() -> Polygon {
    poly(&[(0., 0.), (0., 4.), (1.5, 4.), (1.5, 3.), (2.5, 3.), (2.5, 4.), (4., 4.), (4., 0.)])
}

/// Convex polygon with `n` vertices on a random ellipse.
pub fn random_convex<R: Rng>(rng: &mut R, n: usize) -> Polygon {
    loop {
        let (a, b) = (rng.gen_range(5.0..15.0), rng.gen_range(5.0..15.0));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point2> = angles.iter().map(|t| Point2::new(a * t.cos(), b * t.sin())).collect();
        if let Ok(p) = Polygon::validate(&pts) {
            if p.len() == n && p.lids().is_empty() {
                return p;
            }
        }
    }
}

/// Star-shaped simple polygon around the origin with `n` vertices.
pub fn random_star<R: Rng>(rng: &mut R, n: usize) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|i| (i as f64 + rng.gen_range(0.1..0.9)) / n as f64 * TAU).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point2> = angles
            .iter()
            .map(|t| {
                let r = rng.gen_range(3.5..10.0);
                Point2::new(r * t.cos(), r * t.sin())
            })
            .collect();
        if let Ok(p) = Polygon::validate(&pts) {
            if p.len() == n {
                return p;
            }
        }
    }
}

pub fn random_hull_start<R: Rng>(rng: &mut R, p: &Polygon) -> BoundaryPoint {
    let h = p.hull();
    p.vertex_point(h[rng.gen_range(0..h.len())])
}

/// Regular star with `m` tips on a circle, tip spacing `spacing`, and a
/// single inner vertex per gap whose walls meet the lid at `wall_deg`.
pub fn star_gadget(m: usize, spacing: f64, wall_deg: f64) -> Polygon {
    let half = std::f64::consts::PI / m as f64;
    let r_tip = spacing / (2.0 * half.sin());
    let depth = 0.5 * spacing * wall_deg.to_radians().tan();
    let r_in = r_tip * half.cos() - depth;
    let mut pts = Vec::with_capacity(2 * m);
    for i in 0..m {
        let t = -(i as f64) * 2.0 * half;
        pts.push(Point2::new(r_tip * t.cos(), r_tip * t.sin()));
        let u = t - half;
        pts.push(Point2::new(r_in * u.cos(), r_in * u.sin()));
    }
    Polygon::validate(&pts).unwrap()
}
