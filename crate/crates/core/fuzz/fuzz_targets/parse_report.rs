#![no_main]

use dhull::io::parse_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_report(text) {
        let again = parse_report(&r.to_json()).expect("written report parses");
        assert_eq!(again, r);
    }
});
