#![no_main]

use libfuzzer_sys::fuzz_target;
use mva_weight::relations::{check_minor_relation, parse_relation};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_relation(s) {
        if spec.subsets().len() <= 256 && spec.k <= 6 {
            let _ = check_minor_relation(&spec);
        }
    }
});
