#![no_main]

use crn_core::graph::linkage_classes;
use crn_core::theorems::best_verdict;
use crn_core::parse_network;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(net) = parse_network(text) else {
        return;
    };
    if linkage_classes(&net).len() > 20 {
        return;
    }
    if let Ok(verdict) = best_verdict(&net) {
        for c in &verdict.certificates {
            assert!(c.verify(&net), "certificate failed to re-verify: {c:?}");
        }
    }
});
