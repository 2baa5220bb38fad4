#![no_main]

use libfuzzer_sys::fuzz_target;
use mva_weight::algebra::render::render_text;
use mva_weight::algebra::{parse_poly, VarNames};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let names = VarNames::new(["x", "y", "z", "w", "t1", "t2"]);
    if let Ok(p) = parse_poly(s, &names) {
        // rendering must parse back to the same polynomial
        let again = parse_poly(&render_text(&p, &names), &names).expect("rendered text parses");
        assert_eq!(again, p);
    }
});
