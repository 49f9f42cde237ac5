mod common;

use std::cmp::Ordering;

use common::{random_convex, random_hull_start, random_star};
use dhull::appsol::{run_appsol, run_appsol2};
use dhull::certify::alpha;
use dhull::optsol::run_optsol;
use dhull::oracle::{brute_enclosure, brute_geodesic};
use dhull::GeodesicEngine;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_total_and_matches_positions(seed: u64, n in 4usize..16, f in prop::array::uniform3(0.0f64..1.0)) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let l = p.perimeter();
        let pts: Vec<_> = f.iter().map(|t| p.point_at_arc(&s0, t * l).unwrap()).collect();
        for a in &pts {
            prop_assert_eq!(p.order_compare(&s0, a, a), Ordering::Equal);
            for b in &pts {
                let ab = p.order_compare(&s0, a, b);
                prop_assert_eq!(ab, p.order_compare(&s0, b, a).reverse());
                let pa = p.order_position(&s0, a);
                let pb = p.order_position(&s0, b);
                if (pa - pb).abs() > 1e-9 * l {
                    prop_assert_eq!(ab, pa.partial_cmp(&pb).unwrap());
                }
                for c in &pts {
                    if ab != Ordering::Greater && p.order_compare(&s0, b, c) != Ordering::Greater {
                        prop_assert_ne!(p.order_compare(&s0, a, c), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn arc_distances_complement(seed: u64, n in 3usize..16, fa in 0.0f64..1.0, fb in 0.0f64..1.0) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let l = p.perimeter();
        let a = p.point_at(fa * l);
        let b = p.point_at(fb * l);
        prop_assume!(a.point.dist(b.point) > 1e-6);
        let s = p.arc_distance(&a, &b) + p.arc_distance(&b, &a);
        prop_assert!((s - l).abs() < 1e-9 * l);
    }

    #[test]
    fn point_at_arc_round_trips(seed: u64, n in 3usize..16, f in 0.0f64..1.0) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let t = f * p.perimeter();
        let q = p.point_at_arc(&s0, t).unwrap();
        prop_assert!((p.order_position(&s0, &q) - t).abs() < 1e-9 * p.perimeter());
        prop_assert!(p.boundary_distance(q.point) < 1e-9 * p.perimeter());
    }

    #[test]
    fn capped_geodesic_triangle(seed: u64, n in 4usize..14, d in 1.0f64..20.0, f in prop::array::uniform3(0.0f64..1.0)) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let q = p.anchored_at(&s0);
        let mut t: Vec<f64> = f.iter().map(|x| x * q.perimeter()).collect();
        t.sort_by(f64::total_cmp);
        let [a, b, c] = [q.point_at(t[0]), q.point_at(t[1]), q.point_at(t[2])];
        let e = GeodesicEngine::new(&q);
        let ac = e.distance(&a, &c, d);
        let ab = e.distance(&a, &b, d);
        let bc = e.distance(&b, &c, d);
        if ab + bc <= d {
            prop_assert!(ac <= ab + bc + 1e-9 * q.perimeter(), "{} > {} + {}", ac, ab, bc);
        } else {
            // Above the cap only bends at vertices are searched.
            let brute = brute_geodesic(&q, &a, &c, d, f64::INFINITY);
            prop_assert!((ac - brute).abs() <= 1e-9 * q.perimeter(), "{} vs {}", ac, brute);
        }
        // Never shorter than the straight line, never longer than the boundary.
        prop_assert!(ac >= a.point.dist(c.point) - 1e-9);
        prop_assert!(ac <= t[2] - t[0] + 1e-9 * q.perimeter());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn station_count_monotone_in_range(seed: u64, n in 4usize..14, d in 2.0f64..12.0, grow in 1.0f64..2.0) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let k1 = run_optsol(&p, &s0, d).unwrap().k;
        let k2 = run_optsol(&p, &s0, d * grow).unwrap().k;
        prop_assert!(k2 <= k1, "k({}) = {} > k({}) = {}", d * grow, k2, d, k1);
        let eps = d / 4.0;
        prop_assert!(alpha(&p, &s0, d * grow, eps).unwrap() <= alpha(&p, &s0, d, eps).unwrap());
    }

    #[test]
    fn exact_greedy_dominates_and_brackets(seed: u64, n in 4usize..14, d in 2.0f64..12.0, frac in 0.05f64..0.5) {
        let mut r = rng(seed);
        let p = random_star(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let eps = d * frac;
        let opt = run_optsol(&p, &s0, d).unwrap();
        let app = run_appsol(&p, &s0, d, eps).unwrap();
        prop_assert!(opt.k <= app.k);
        prop_assert_eq!(app.k, alpha(&p, &s0, d, eps).unwrap());
        prop_assert!(alpha(&p, &s0, d + eps, eps).unwrap() <= opt.k);
        for sol in [&opt, &app] {
            prop_assert!(sol.check().is_ok(), "{:?}", sol.check());
            prop_assert!(brute_enclosure(&p, sol));
        }
        let free = run_appsol2(&p, &s0, d, eps).unwrap();
        prop_assert!(free.check().is_ok(), "{:?}", free.check());
        prop_assert!(free.k <= app.k);
    }

    #[test]
    fn convex_needs_ceil_perimeter_over_range(seed: u64, n in 3usize..30, q in 2usize..12, frac in 0.1f64..0.9) {
        let mut r = rng(seed);
        let p = random_convex(&mut r, n);
        let s0 = random_hull_start(&mut r, &p);
        let d = p.perimeter() / (q as f64 + frac);
        let sol = run_optsol(&p, &s0, d).unwrap();
        prop_assert_eq!(sol.k, q + 1);
    }
}
