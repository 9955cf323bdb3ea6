#![no_main]

use hkbetti::io::{coefficients_to_csv, parse_betti_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_betti_csv(text) {
        assert_eq!(parse_betti_csv(&coefficients_to_csv(&c)).unwrap(), c);
    }
});
