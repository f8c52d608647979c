#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::polygon::parse_q64;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_q64(s);
    }
});
