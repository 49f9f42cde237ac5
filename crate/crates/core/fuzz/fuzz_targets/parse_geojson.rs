#![no_main]

use dhull::io::geojson::{parse_geojson, to_geojson};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_geojson(text) {
        if g.ring.iter().all(|&(x, y)| x.is_finite() && y.is_finite()) && !g.ring.is_empty() {
            let back = parse_geojson(&to_geojson(&g)).expect("written GeoJSON parses");
            // Writing closes the ring, so a first == last input can lose one point.
            assert!(back.ring.len() <= g.ring.len());
        }
    }
});
