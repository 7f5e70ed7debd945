#![no_main]

use cptkit::elicitation::elicit_batch;
use cptkit::io::{parse_elicitation_csv, write_elicitation_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(triples) = parse_elicitation_csv(text) {
        let batch = elicit_batch(&triples, cptkit::DEFAULT_EPS);
        assert_eq!(batch.results.len(), triples.len());
        let out = write_elicitation_csv(&batch.results);
        assert_eq!(out.lines().count(), triples.len() + 1);
    }
});
