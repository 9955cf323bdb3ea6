#![no_main]

use hkbetti::io::{parse_quiver_json, quiver_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_quiver_json(text) {
        assert_eq!(parse_quiver_json(&quiver_to_json(&q)).unwrap(), q);
    }
});
