#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::parse_padic;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_padic(s) {
        let back = parse_padic(&serde_json::to_string(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }
});
