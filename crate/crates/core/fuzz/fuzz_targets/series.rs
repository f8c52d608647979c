#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::{parse_series, series_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_series(s) {
        assert_eq!(parse_series(&series_to_json(&g)).unwrap(), g);
    }
});
