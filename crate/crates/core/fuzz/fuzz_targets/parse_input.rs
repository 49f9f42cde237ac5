#![no_main]

use dhull::io::{parse_input, project, Input};
use dhull::Polygon;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_input(text) {
        Ok(Input::Planar(pts)) if pts.len() <= 256 => {
            let _ = Polygon::validate(&pts);
        }
        Ok(Input::Geo(g)) if g.ring.len() <= 256 => {
            let _ = project(&g);
        }
        _ => {}
    }
});
