#![no_main]

use funkdisc::parse::parse_coords;
use funkdisc::{eval_model, ModelId, ModelPoint};
use libfuzzer_sys::fuzz_target;

// input: "<model>;<point>;<vector>"
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut parts = s.splitn(3, ';');
    let (Some(model), Some(x), Some(v)) = (parts.next(), parts.next(), parts.next()) else {
        return;
    };
    let Ok(model) = model.parse::<ModelId>() else {
        return;
    };
    let (Ok(x), Ok(v)) = (parse_coords(x), parse_coords(v)) else {
        return;
    };
    // keep clear of overflow in the squared norms
    if x.iter().chain(&v).any(|c| c.abs() > 1e100) {
        return;
    }
    let Ok(p) = ModelPoint::new(model, &x) else { return };
    if let Ok(r) = eval_model(&p, &v) {
        assert!(r.total >= 0.0, "{r:?}");
    }
});
