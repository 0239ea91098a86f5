//! Finite-n checks of the tier lemmas for one (network, sequence) pair.

use num_traits::{Signed, ToPrimitive};

use crn_core::graph::{is_binary, is_double_full};
use crn_core::tiers::{d_degree, tier_partitions, GrowthLaw, MonomialSequence, TierReport};
use crn_core::{Complex, ReactionNetwork};

use super::oracle::{falling_power, monomial};

const N_SMALL: u64 = 1_000;
const N_LARGE: u64 = 1_000_000;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn partitions(net: &ReactionNetwork, rep: &TierReport) -> Result<(), String> {
    let n = net.complexes().len();
    let mut seen = vec![0u8; n];
    for c in rep.d_tiers.iter().flatten() {
        seen[*c] += 1;
    }
    check(seen.iter().all(|&k| k == 1), || format!("D-tiers do not partition: {:?}", rep.d_tiers))?;
    check(rep.d_tiers.iter().all(|t| !t.is_empty()), || "empty D-tier".into())?;
    check(rep.d_degrees.windows(2).all(|w| w[0] > w[1]), || "D-degrees not strictly decreasing".into())?;
    let mut seen = vec![0u8; n];
    for c in rep.s_tiers.iter().flatten().chain(&rep.s_infinity) {
        seen[*c] += 1;
    }
    check(seen.iter().all(|&k| k == 1), || "S-tiers and T^{S,inf} do not partition".into())?;
    check(rep.s_tiers.iter().all(|t| !t.is_empty()), || "empty S-tier".into())
}

/// Limit of `λ_y(x_n) / (x_n ∨ 1)^y`: only constant coordinates keep a
/// factor different from one.
fn ratio_limit(y: &Complex, seq: &MonomialSequence) -> f64 {
    let mut rho = 1.0;
    for (s, k) in y.terms() {
        if let GrowthLaw::Const(v) = seq.laws()[s.0] {
            let v = v as f64;
            for j in 0..k {
                rho *= (v - j as f64).max(0.0) / v;
            }
        }
    }
    rho
}

pub fn lemma_top_degree(rep: &TierReport) -> Result<(), String> {
    check(rep.d_degrees.first().is_some_and(|d| d.is_positive()), || {
        format!("top D-tier degree {:?} not positive", rep.d_degrees.first())
    })
}

pub fn lemma_ratio(net: &ReactionNetwork, seq: &MonomialSequence, rep: &TierReport) -> Result<(), String> {
    let small = seq.point(N_SMALL);
    let large = seq.point(N_LARGE);
    for (c, y) in net.complexes().iter().enumerate() {
        let label = net.display_complex(y);
        if rep.s_infinity.contains(&c) {
            check(falling_power(y, &small) == 0.0 && falling_power(y, &large) == 0.0, || {
                format!("{label} in T^(S,inf) but has positive intensity")
            })?;
            continue;
        }
        let ratio = falling_power(y, &large) / monomial(y, &large);
        let rho = ratio_limit(y, seq);
        check((ratio - rho).abs() <= 1e-2, || format!("{label}: ratio {ratio} vs limit {rho}"))?;
        if rho == 1.0 {
            check((ratio - 1.0).abs() <= 1e-2, || format!("{label}: ratio {ratio} not near 1"))?;
        }
        check(rho > 0.0, || format!("{label}: outside T^(S,inf) but limit is 0"))?;
    }
    Ok(())
}

pub fn corollary_top_tier(net: &ReactionNetwork, seq: &MonomialSequence, rep: &TierReport) -> Result<(), String> {
    let top_s = rep.top_s_tier();
    let start = seq.tail_start().max(16);
    for &c in rep.top_d_tier() {
        if rep.s_infinity.contains(&c) {
            continue;
        }
        let y = &net.complexes()[c];
        let label = net.display_complex(y);
        check(top_s.contains(&c), || format!("{label} in T^(D,1) but not in T^(S,1)"))?;
        let mut prev = f64::NEG_INFINITY;
        let mut n = start;
        while n <= N_LARGE {
            let lambda = falling_power(y, &seq.point(n));
            check(lambda > prev, || format!("{label}: intensity not increasing at n = {n}"))?;
            prev = lambda;
            n *= 4;
        }
    }
    Ok(())
}

/// Ratios within a D-tier approach the coefficient ratio; ratios across
/// tiers grow.
pub fn numeric_consistency(net: &ReactionNetwork, seq: &MonomialSequence, rep: &TierReport) -> Result<(), String> {
    let small = seq.point(N_SMALL);
    let large = seq.point(N_LARGE);
    let cs = net.complexes();
    for (ti, tier) in rep.d_tiers.iter().enumerate() {
        for &a in tier {
            let ya = &cs[a];
            for (tj, other) in rep.d_tiers.iter().enumerate().skip(ti) {
                for &b in other {
                    if a == b {
                        continue;
                    }
                    let yb = &cs[b];
                    let r3 = monomial(ya, &small) / monomial(yb, &small);
                    let r6 = monomial(ya, &large) / monomial(yb, &large);
                    let pair = || format!("{} / {}", net.display_complex(ya), net.display_complex(yb));
                    if ti == tj {
                        let target = (d_degree(ya, seq).coefficient / d_degree(yb, seq).coefficient)
                            .to_f64()
                            .unwrap();
                        check((r6 - target).abs() <= (r3 - target).abs() + 1e-9 * target, || {
                            format!("{}: {r3} -> {r6}, limit {target}", pair())
                        })?;
                    } else {
                        check(r6 > r3, || format!("{}: ratio did not grow ({r3} -> {r6})", pair()))?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn double_full_lemma(net: &ReactionNetwork, rep: &TierReport) -> Result<(), String> {
    let top_d: Vec<usize> = {
        let mut v = rep.top_d_tier().to_vec();
        v.sort_unstable();
        v
    };
    let top_s: Vec<usize> = {
        let mut v = rep.top_s_tier().to_vec();
        v.sort_unstable();
        v
    };
    check(top_d == top_s, || format!("T^(D,1) {top_d:?} != T^(S,1) {top_s:?}"))?;
    let cs = net.complexes();
    check(top_d.iter().all(|&c| cs[c].order() == 2), || "T^(D,1) has a non-binary complex".into())?;
    check(top_d.iter().any(|&c| cs[c].as_double().is_some()), || "T^(D,1) has no double complex".into())?;
    for &c in &top_d {
        let y = &cs[c];
        let terms: Vec<_> = y.terms().collect();
        if terms.len() == 2 {
            for (s, _) in terms {
                let double = net.complex_index(&Complex::double(s)).expect("double-full");
                check(top_d.contains(&double), || {
                    format!("{} in T^(D,1) without {}", net.display_complex(y), net.display_complex(&cs[double]))
                })?;
            }
        }
    }
    Ok(())
}

/// Every check that applies to the pair; returns whether the double-full
/// lemma was exercised.
pub fn check_all(net: &ReactionNetwork, seq: &MonomialSequence) -> Result<bool, String> {
    let rep = tier_partitions(net, seq).map_err(|e| e.to_string())?;
    partitions(net, &rep)?;
    lemma_top_degree(&rep)?;
    lemma_ratio(net, seq, &rep)?;
    corollary_top_tier(net, seq, &rep)?;
    numeric_consistency(net, seq, &rep)?;
    let full = is_binary(net) && is_double_full(net);
    if full {
        double_full_lemma(net, &rep)?;
    }
    Ok(full)
}
