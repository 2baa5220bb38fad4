#![no_main]

use libfuzzer_sys::fuzz_target;
use mva_weight::link::parse_link;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_link(s) {
        if d.crossings().len() <= 10 {
            let _ = d.mva(0, 0);
        }
    }
});
