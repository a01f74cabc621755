#![no_main]

use funkdisc::{BusemannMetric, IsometryId, MeasureKind, Metric, ModelId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // every accepted name must print back to something that parses to the same value
    if let Ok(m) = s.parse::<ModelId>() {
        assert_eq!(m.to_string().parse::<ModelId>().unwrap(), m);
    }
    if let Ok(m) = s.parse::<Metric>() {
        assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
    }
    if let Ok(m) = s.parse::<MeasureKind>() {
        assert_eq!(m.to_string().parse::<MeasureKind>().unwrap(), m);
    }
    if let Ok(m) = s.parse::<BusemannMetric>() {
        assert_eq!(m.to_string().parse::<BusemannMetric>().unwrap(), m);
    }
    if let Ok(m) = s.parse::<IsometryId>() {
        assert_eq!(m.to_string().parse::<IsometryId>().unwrap(), m);
    }
});
