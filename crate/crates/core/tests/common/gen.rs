//! Random networks and monomial sequences. Networks are built as text and
//! run through the parser, so only species that occur in some complex end
//! up in the network.

use proptest::prelude::*;

use crn_core::tiers::{GrowthLaw, MonomialSequence};
use crn_core::{parse_network, ReactionNetwork};

pub const MAX_SPECIES: usize = 6;

/// A binary complex over species `0..d` as a multiset of at most two indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawComplex(pub Vec<usize>);

impl RawComplex {
    fn render(&self) -> String {
        match self.0.as_slice() {
            [] => "0".to_string(),
            [a] => format!("S{a}"),
            [a, b] if a == b => format!("2S{a}"),
            [a, b] => format!("S{a} + S{b}"),
            _ => unreachable!("binary only"),
        }
    }

    fn canonical(mut self) -> Self {
        self.0.sort_unstable();
        self
    }
}

#[derive(Clone, Debug)]
pub struct RawNetwork {
    pub species: usize,
    pub reactions: Vec<(RawComplex, RawComplex, f64)>,
}

impl RawNetwork {
    pub fn render(&self) -> String {
        self.reactions
            .iter()
            .map(|(s, p, k)| format!("{} -> {} @ {k}\n", s.render(), p.render()))
            .collect()
    }

    pub fn build(&self) -> ReactionNetwork {
        let text = self.render();
        parse_network(&text).unwrap_or_else(|e| panic!("generated network did not parse: {e}\n{text}"))
    }

    /// Adds `2S -> y` for every used species whose double is not yet a complex.
    pub fn make_double_full(&mut self, picks: &[(usize, f64)]) {
        let used: Vec<usize> = {
            let mut u: Vec<usize> = self
                .reactions
                .iter()
                .flat_map(|(s, p, _)| s.0.iter().chain(&p.0).copied())
                .collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        let mut complexes: Vec<RawComplex> = self
            .reactions
            .iter()
            .flat_map(|(s, p, _)| [s.clone(), p.clone()])
            .collect();
        for (i, &s) in used.iter().enumerate() {
            let double = RawComplex(vec![s, s]);
            if complexes.contains(&double) {
                continue;
            }
            let (pick, rate) = picks[i % picks.len()];
            let mut target = complexes[pick % complexes.len()].clone();
            if target == double {
                target = RawComplex(vec![]);
            }
            self.reactions.push((double.clone(), target, rate));
            complexes.push(double);
        }
    }
}

pub fn raw_complex(d: usize) -> impl Strategy<Value = RawComplex> {
    prop::collection::vec(0..d, 0..=2).prop_map(|v| RawComplex(v).canonical())
}

pub fn rate() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), Just(0.5), (1u32..=40).prop_map(|k| k as f64 / 8.0)]
}

pub fn binary_network(max_species: usize, max_reactions: usize) -> impl Strategy<Value = RawNetwork> {
    (1..=max_species).prop_flat_map(move |d| {
        prop::collection::vec(
            (raw_complex(d), raw_complex(d), rate()).prop_filter("no self loops", |(s, p, _)| s != p),
            1..=max_reactions,
        )
        .prop_map(move |mut reactions| {
            let mut seen = Vec::new();
            reactions.retain(|(s, p, _)| {
                let key = (s.clone(), p.clone());
                let fresh = !seen.contains(&key);
                seen.push(key);
                fresh
            });
            RawNetwork { species: d, reactions }
        })
    })
}

/// Binary networks, roughly half of them completed to double-full.
pub fn mixed_binary_network() -> impl Strategy<Value = (RawNetwork, bool)> {
    (
        binary_network(MAX_SPECIES, 10),
        any::<bool>(),
        prop::collection::vec((0usize..64, rate()), 1..8),
    )
        .prop_map(|(mut raw, full, picks)| {
            if full {
                raw.make_double_full(&picks);
            }
            (raw, full)
        })
}

/// Growth laws whose values at `n = 10^6` are integers and grow at least
/// like `√n / 2`, so finite-`n` checks are meaningful.
pub fn growth_law() -> impl Strategy<Value = GrowthLaw> {
    let power = (
        prop::sample::select(vec![(1, 2), (1, 1), (2, 1), (3, 1)]),
        prop::sample::select(vec![(1, 2), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1)]),
    )
        .prop_map(|(c, e)| GrowthLaw::power_ratio(c, e));
    prop_oneof![
        1 => Just(GrowthLaw::Zero),
        1 => (1u64..=3).prop_map(GrowthLaw::Const),
        3 => power,
    ]
}

/// Laws for `MAX_SPECIES` coordinates; callers keep the first `d`.
pub fn law_vector() -> impl Strategy<Value = Vec<GrowthLaw>> {
    prop::collection::vec(growth_law(), MAX_SPECIES)
}

/// First `d` laws, with coordinate 0 forced to grow if none does.
pub fn sequence_for(laws: &[GrowthLaw], d: usize) -> MonomialSequence {
    let mut laws = laws[..d].to_vec();
    if !laws.iter().any(GrowthLaw::is_power) {
        laws[0] = GrowthLaw::power(1, 1);
    }
    MonomialSequence::new(laws).expect("has a power law")
}

/// A random lattice state: small, moderate and large coordinates.
pub fn state(d: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(
        prop_oneof![0u64..=3, 0u64..=200, 1_000u64..=1_000_000],
        d,
    )
}

/// Reactions that keep the total count, between complexes of equal order,
/// plus every in- and out-flow with integer rates.
pub fn conservative_with_flows() -> impl Strategy<Value = RawNetwork> {
    (1usize..=4).prop_flat_map(|d| {
        let same_order = (1usize..=2).prop_flat_map(move |k| {
            (
                prop::collection::vec(0..d, k),
                prop::collection::vec(0..d, k),
                1u32..=5,
            )
        });
        (
            prop::collection::vec(same_order, 0..6),
            prop::collection::vec((1u32..=5, 1u32..=5), d),
        )
            .prop_map(move |(inner, flows)| {
                let mut reactions = Vec::new();
                for (mut s, mut p, k) in inner {
                    s.sort_unstable();
                    p.sort_unstable();
                    let pair = (RawComplex(s), RawComplex(p), k as f64);
                    if pair.0 != pair.1 && !reactions.iter().any(|r: &(RawComplex, RawComplex, f64)| r.0 == pair.0 && r.1 == pair.1) {
                        reactions.push(pair);
                    }
                }
                for (i, (kin, kout)) in flows.into_iter().enumerate() {
                    reactions.push((RawComplex(vec![]), RawComplex(vec![i]), kin as f64));
                    reactions.push((RawComplex(vec![i]), RawComplex(vec![]), kout as f64));
                }
                RawNetwork { species: d, reactions }
            })
    })
}
