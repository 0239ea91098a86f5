//! Simulation experiments shared by the statistics tests and the acceptance
//! run.

use crn_core::sim::{communicating_classes, estimate_entry_time, sample_at, stationary_histogram, DEFAULT_BOX_BUDGET};
use crn_core::{Method, State};

use super::fixture;
use super::oracle::{hitting_time, tv_to_poisson, two_sample_z};

/// TV distance between the occupancy of one long birth-death run and
/// Poisson(2).
pub fn poisson_tv(t_end: f64, seed: u64) -> f64 {
    let net = fixture("poisson.crn");
    let hist = stationary_histogram(&net, &State(vec![0]), t_end, 100.0, seed, Method::Direct).unwrap();
    let pmf: Vec<(u64, f64)> = hist.marginal(0).into_iter().enumerate().map(|(k, m)| (k as u64, m)).collect();
    tv_to_poisson(&pmf, 2.0)
}

/// Two-sample z statistics (mean, variance) of `x_A(t)` between methods.
pub fn method_agreement(n: usize, t: f64, seed: u64) -> (f64, f64) {
    let net = fixture("poisson.crn");
    let x0 = State(vec![0]);
    let draw = |method, seed| -> Vec<f64> {
        sample_at(&net, &x0, t, n, seed, method)
            .unwrap()
            .iter()
            .map(|s| s.counts()[0] as f64)
            .collect()
    };
    let direct = draw(Method::Direct, seed);
    let next = draw(Method::NextReaction, seed.wrapping_add(0x9e37_79b9));
    two_sample_z(&direct, &next)
}

/// (estimate, oracle) for the entry time of the two-step decay chain from
/// `(3, 0)` into `{(0, 0)}`, box `[3, 3]`.
pub fn chain_entry_time(n_trials: usize, seed: u64) -> (f64, f64, usize) {
    let net = fixture("chain.crn");
    let bounds = [3, 3];
    let dec = communicating_classes(&net, &bounds, DEFAULT_BOX_BUDGET).unwrap();
    assert_eq!(dec.targets(), vec![0], "only the origin is a target");
    let est = estimate_entry_time(&net, &State(vec![3, 0]), &dec, n_trials, 1e3, seed).unwrap();
    let exact = hitting_time(&net, &bounds, &[3, 0], &[0, 0]);
    (est.mean.unwrap(), exact, est.censored)
}
