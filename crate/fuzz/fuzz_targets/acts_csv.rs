#![no_main]

use std::sync::{Arc, OnceLock};

use cptkit::capacity::Capacity;
use cptkit::io::parse_acts_csv;
use cptkit::states_acts::StateSpace;
use cptkit::{choquet, sipos};
use libfuzzer_sys::fuzz_target;

fn uniform() -> &'static Capacity {
    static V: OnceLock<Capacity> = OnceLock::new();
    V.get_or_init(|| Capacity::uniform(StateSpace::new(["s1", "s2", "s3"]).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let v = uniform();
    if let Ok(table) = parse_acts_csv(text, v.space()) {
        assert_eq!(table.labels.len(), table.acts.len());
        for f in &table.acts {
            assert!(Arc::ptr_eq(f.space(), v.space()));
            let c = choquet(f, v).unwrap();
            if c.is_finite() {
                let slack = 1e-9 * f.min().abs().max(f.max().abs()).max(1.0);
                assert!(f.min() - slack <= c && c <= f.max() + slack);
            }
            let _ = sipos(f, v).unwrap();
        }
    }
});
