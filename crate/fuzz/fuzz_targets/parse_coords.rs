#![no_main]

use funkdisc::parse::{parse_coords, parse_fixed};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_coords(s) {
        assert!(!values.is_empty());
        assert!(values.iter().all(|v| v.is_finite()));
    }
    if let Ok([a, b]) = parse_fixed::<2>(s) {
        assert!(a.is_finite() && b.is_finite());
    }
});
