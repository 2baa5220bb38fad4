#![no_main]

use libfuzzer_sys::fuzz_target;
use mva_weight::chordio::parse_chord_diagram;
use mva_weight::weight::weight;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_chord_diagram(s) {
        if d.arc_count() <= 12 {
            let _ = weight(&d);
        }
    }
});
