#![no_main]
use libfuzzer_sys::fuzz_target;
use plfun::serial::CharDescriptor;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = CharDescriptor::parse(s) {
        // conversion may refuse but must not panic
        for p in [3, 5, 7] {
            let _ = d.to_character(p, 8);
        }
    }
});
