#![no_main]

use crn_core::{format_network, parse_network};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(net) = parse_network(text) {
        // whatever parses must survive a print/parse round trip
        let again = parse_network(&format_network(&net)).expect("formatted network reparses");
        assert!(net.same_network(&again));
    }
});
