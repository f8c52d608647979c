#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::{parse_provider, provider_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_provider(s) {
        assert_eq!(parse_provider(&provider_to_json(&f)).unwrap(), f);
    }
});
