#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::{measure_to_json, parse_measure};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(mu) = parse_measure(s) {
        let back = parse_measure(&measure_to_json(&mu)).unwrap();
        assert!(back.values_equal(&mu));
    }
});
