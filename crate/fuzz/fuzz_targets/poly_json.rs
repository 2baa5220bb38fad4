#![no_main]

use libfuzzer_sys::fuzz_target;
use mva_weight::algebra::render::{from_json, to_json};
use mva_weight::algebra::VarNames;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let names = VarNames::new(["x", "y", "z", "w"]);
    if let Ok(p) = from_json(&v, &names) {
        assert_eq!(from_json(&to_json(&p, &names), &names).unwrap(), p);
    }
});
