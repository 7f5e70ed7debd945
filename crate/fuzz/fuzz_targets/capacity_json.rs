#![no_main]

use cptkit::io::{capacity_to_json, parse_capacity_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(loaded) = parse_capacity_json(text) {
        // accepted capacities survive a round trip
        let again = parse_capacity_json(&capacity_to_json(&loaded.capacity).to_string())
            .expect("serialized capacity parses");
        assert_eq!(again.capacity.table(), loaded.capacity.table());
        let _ = loaded.capacity.conjugate();
        let _ = loaded
            .capacity
            .convexity_violation(cptkit::capacity::CONVEXITY_EPS);
    }
});
