#![no_main]

use crn_core::parse_state;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let d = (data[0] % 8) as usize + 1;
    if let Ok(text) = std::str::from_utf8(&data[1..]) {
        if let Ok(x) = parse_state(text, d) {
            assert_eq!(x.counts().len(), d);
        }
    }
});
