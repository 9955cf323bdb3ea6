#![no_main]

use hkbetti::io::{betti_to_json, parse_betti_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_betti_json(text) {
        assert_eq!(parse_betti_json(&betti_to_json(&p)).unwrap(), p);
    }
});
