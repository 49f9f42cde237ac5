#![no_main]

use dhull::{Point2, Polygon};
use libfuzzer_sys::fuzz_target;

// Input is a sequence of little-endian (x, y) f64 pairs.
fuzz_target!(|data: &[u8]| {
    let pts: Vec<Point2> = data
        .chunks_exact(16)
        .take(128)
        .map(|c| {
            let x = f64::from_le_bytes(c[..8].try_into().unwrap());
            let y = f64::from_le_bytes(c[8..].try_into().unwrap());
            Point2::new(x, y)
        })
        .collect();
    let Ok(p) = Polygon::validate(&pts) else { return };
    assert!(p.len() >= 3);
    assert!(p.perimeter() > 0.0 && p.area() > 0.0);
    let s0 = p.vertex_point(p.hull()[0]);
    for k in 0..8 {
        let t = p.perimeter() * k as f64 / 8.0;
        let q = p.point_at_arc(&s0, t).unwrap();
        let back = p.order_position(&s0, &q);
        assert!((back - t).abs() <= 1e-6 * p.perimeter(), "{back} vs {t}");
    }
});
