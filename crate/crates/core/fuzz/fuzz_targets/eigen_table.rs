#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::{eigen_table_to_json, parse_eigen_table};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_eigen_table(s) {
        assert_eq!(parse_eigen_table(&eigen_table_to_json(&t)).unwrap(), t);
    }
});
