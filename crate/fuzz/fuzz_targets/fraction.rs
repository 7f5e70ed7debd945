#![no_main]

use cptkit::io::{fraction_string, parse_decimal, parse_fraction};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_fraction(text) {
        assert_ne!(*r.denom(), 0);
    }
    if let Ok(x) = parse_decimal(text) {
        assert!(x.is_finite());
        if let Some(s) = fraction_string(x) {
            let back = parse_fraction(&s).expect("printed fractions parse");
            let approx = *back.numer() as f64 / *back.denom() as f64;
            assert!((approx - x).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }
});
