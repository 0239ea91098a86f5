#![no_main]

use crn_core::parse_network;
use crn_core::tiers::{parse_law, parse_sequence_spec, tier_partitions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_law(text);
    let net = parse_network("A + B <-> C @ 1, 1\nC <-> 0 @ 1, 1").unwrap();
    if let Ok(seq) = parse_sequence_spec(text, &net) {
        let rep = tier_partitions(&net, &seq).expect("spec matches the network");
        let covered: usize = rep.d_tiers.iter().map(Vec::len).sum();
        assert_eq!(covered, net.complexes().len());
    }
});
