#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;

use hypercong::SeriesSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = SeriesSpec::from_str(text) {
            assert!(spec.truncation() >= 1);
            // display round trip
            let shown = spec.to_string();
            let back = SeriesSpec::from_str(&shown).unwrap();
            assert_eq!(back, spec);
        }
    }
});
