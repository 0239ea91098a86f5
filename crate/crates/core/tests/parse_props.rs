use crn_core::{format_network, parse_network, parse_state};
use proptest::prelude::*;

fn complex_text() -> impl Strategy<Value = String> {
    prop::collection::vec((1u32..=4, prop::sample::select(vec!["A", "B", "X1", "long_name", "Z"])), 0..=3).prop_map(
        |terms| {
            if terms.is_empty() {
                return "0".to_string();
            }
            terms
                .iter()
                .map(|(k, s)| if *k == 1 { s.to_string() } else { format!("{k}{s}") })
                .collect::<Vec<_>>()
                .join(" + ")
        },
    )
}

fn network_text() -> impl Strategy<Value = String> {
    prop::collection::vec((complex_text(), complex_text(), 1e-3f64..1e3, any::<bool>()), 1..8).prop_map(|rows| {
        rows.iter()
            .map(|(s, p, k, rev)| {
                if *rev {
                    format!("{s} <-> {p} @ {k}, {}\n", k * 2.0)
                } else {
                    format!("{s} -> {p} @ {k}\n")
                }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn format_round_trips(text in network_text()) {
        // generated text may contain self loops or duplicates; those are rejected
        if let Ok(net) = parse_network(&text) {
            let again = parse_network(&format_network(&net)).unwrap();
            prop_assert!(net.same_network(&again));
            prop_assert_eq!(format_network(&again), format_network(&net));
        }
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_network(&text);
    }

    #[test]
    fn parser_never_panics_on_near_misses(text in "[A-C0-9 +<>@,.#\\n-]{0,80}") {
        if let Err(e) = parse_network(&text) {
            prop_assert!(e.line >= 1);
        }
    }

    #[test]
    fn state_round_trips(v in prop::collection::vec(any::<u64>(), 1..6)) {
        let text = v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_state(&text, v.len()).unwrap().0, v);
    }
}
