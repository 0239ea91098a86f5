//! Generator of the mass-action chain applied to Lyapunov functions, and
//! exhaustive Foster-Lyapunov drift scans over the shells `Σ x_i = R`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{reaction_intensity, ReactionNetwork, State};

/// Default exponent offset for the polynomial Lyapunov functions.
pub const DEFAULT_DELTA: f64 = 0.5;

/// Default cap on the number of lattice points in one shell.
pub const DEFAULT_SHELL_BUDGET: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LyapunovKind {
    /// `Σ v(x_i)` with `v(x) = x(ln x - 1) + 1` on the lattice, `1` otherwise.
    EntropyV,
    /// `Σ x_i`.
    LinearW,
    /// `(Σ x_i)^{2+δ}`.
    PowerT(f64),
    /// `EntropyV + PowerT(δ)`.
    SumVT(f64),
}

impl LyapunovKind {
    pub fn validate(self) -> Result<Self, DriftError> {
        match self {
            LyapunovKind::PowerT(d) | LyapunovKind::SumVT(d) if !(d > 0.0 && d < 1.0) => {
                Err(DriftError::InvalidDelta(d))
            }
            k => Ok(k),
        }
    }
}

impl fmt::Display for LyapunovKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LyapunovKind::EntropyV => f.write_str("EntropyV"),
            LyapunovKind::LinearW => f.write_str("LinearW"),
            LyapunovKind::PowerT(d) => write!(f, "PowerT({d})"),
            LyapunovKind::SumVT(d) => write!(f, "SumVT({d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DriftError {
    #[error("delta must lie strictly between 0 and 1, got {0}")]
    InvalidDelta(f64),
    #[error("scan radius must be at least 1")]
    InvalidRadius,
    #[error("shell of radius {radius} has {size} points, over the budget of {budget}")]
    ShellBudget { radius: u64, size: u128, budget: u128 },
}

/// `v(x) = x(ln x - 1) + 1` for `x ≥ 0` (so `v(0) = 1`), and `1` for negative `x`.
pub fn entropy_term(x: i64) -> f64 {
    if x <= 0 {
        return 1.0;
    }
    let xf = x as f64;
    xf * (xf.ln() - 1.0) + 1.0
}

pub fn lyapunov_value(kind: LyapunovKind, x: &[i64]) -> f64 {
    let total = || x.iter().map(|&v| v as f64).sum::<f64>();
    match kind {
        LyapunovKind::EntropyV => x.iter().map(|&v| entropy_term(v)).sum(),
        LyapunovKind::LinearW => total(),
        LyapunovKind::PowerT(d) => total().max(0.0).powf(2.0 + d),
        LyapunovKind::SumVT(d) => {
            lyapunov_value(LyapunovKind::EntropyV, x) + lyapunov_value(LyapunovKind::PowerT(d), x)
        }
    }
}

/// `v(x + k) - v(x)` for `x, x + k ≥ 0`, without the cancellation of the
/// direct difference at large `x`.
fn entropy_increment(x: u64, k: i64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let xf = x as f64;
    let kf = k as f64;
    let after = x as i64 + k;
    if x == 0 {
        return entropy_term(after) - 1.0;
    }
    if after == 0 {
        return 1.0 - entropy_term(x as i64);
    }
    xf * (kf / xf).ln_1p() + kf * (after as f64).ln() - kf
}

/// `s'^p - s^p` for `s' = s + k`.
fn power_increment(s: u64, k: i64, p: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if s == 0 {
        return (k as f64).powf(p);
    }
    let sf = s as f64;
    sf.powf(p) * (p * (k as f64 / sf).ln_1p()).exp_m1()
}

/// `V(x + δ) - V(x)` for a lattice displacement that stays in the orthant.
fn increment(kind: LyapunovKind, x: &[u64], delta: &[i64]) -> f64 {
    match kind {
        LyapunovKind::EntropyV => {
            let mut acc = 0.0;
            for (&xi, &di) in x.iter().zip(delta) {
                acc += entropy_increment(xi, di);
            }
            acc
        }
        LyapunovKind::LinearW => delta.iter().sum::<i64>() as f64,
        LyapunovKind::PowerT(d) => {
            let s: u64 = x.iter().sum();
            power_increment(s, delta.iter().sum(), 2.0 + d)
        }
        LyapunovKind::SumVT(d) => {
            increment(LyapunovKind::EntropyV, x, delta) + increment(LyapunovKind::PowerT(d), x, delta)
        }
    }
}

/// `𝒜V(x) = Σ_r κ_r λ_r(x) (V(x + y'_r - y_r) - V(x))`. Reactions with zero
/// intensity are skipped, so `V` is only evaluated inside the orthant.
pub fn generator_apply(net: &ReactionNetwork, kind: LyapunovKind, x: &State) -> f64 {
    let d = net.num_species();
    let xs = x.counts();
    // Neumaier summation; terms of opposite sign are common
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for r in net.reactions() {
        let lambda = reaction_intensity(r, xs);
        if lambda == 0.0 {
            continue;
        }
        let term = lambda * increment(kind, xs, &r.delta(d));
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Upper envelope used to bound the entropy drift:
/// `Σ_r κ_r λ_r(x) (ln((x∨1)^{y'} / (x∨1)^{y}) + c)`.
pub fn log_ratio_envelope(net: &ReactionNetwork, x: &State, c: f64) -> f64 {
    let xs = x.counts();
    let log_mono = |y: &crate::network::Complex| {
        y.terms()
            .map(|(s, k)| k as f64 * (xs.get(s.0).copied().unwrap_or(0).max(1) as f64).ln())
            .sum::<f64>()
    };
    net.reactions()
        .iter()
        .map(|r| {
            let lambda = reaction_intensity(r, xs);
            if lambda == 0.0 {
                0.0
            } else {
                lambda * (log_mono(&r.product) - log_mono(&r.source) + c)
            }
        })
        .sum()
}

/// Number of lattice points with `Σ x_i = r` in dimension `d`.
pub fn shell_size(r: u64, d: usize) -> u128 {
    if d == 0 {
        return u128::from(r == 0);
    }
    // C(r + d - 1, d - 1), built up to stay exact
    let k = (d - 1) as u128;
    let n = r as u128 + k;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = match acc.checked_mul(n - k + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Visits the points of the shell `Σ x_i = r` in colexicographic order.
pub fn for_each_in_shell<F: FnMut(&[u64])>(r: u64, d: usize, mut f: F) {
    if d == 0 {
        if r == 0 {
            f(&[]);
        }
        return;
    }
    let mut x = vec![0u64; d];
    fn rec<F: FnMut(&[u64])>(x: &mut [u64], pos: usize, remaining: u64, f: &mut F) {
        if pos == 0 {
            x[0] = remaining;
            f(x);
            return;
        }
        for v in 0..=remaining {
            x[pos] = v;
            rec(x, pos - 1, remaining - v, f);
        }
        x[pos] = 0;
    }
    rec(&mut x, d - 1, r, &mut f);
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellSummary {
    pub radius: u64,
    pub points: u128,
    pub max: f64,
    /// First point, in shell order, attaining `max`.
    pub argmax: State,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DriftVerdict {
    DriftConfirmedUpToRmax,
    DriftViolatedAt { state: State, value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub lyapunov: LyapunovKind,
    pub r_min: u64,
    pub r_max: u64,
    pub shells: Vec<ShellSummary>,
    /// Smallest `N` with `𝒜V ≤ -1` on every scanned shell beyond `N`;
    /// absent when the outermost shell itself violates.
    pub exception_set_bound: Option<u64>,
    pub verdict: DriftVerdict,
}

impl DriftReport {
    pub fn confirmed(&self) -> bool {
        self.verdict == DriftVerdict::DriftConfirmedUpToRmax
    }

    /// `R,shell_max,argmax` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,shell_max,argmax\n");
        for s in &self.shells {
            out.push_str(&format!("{},{},\"{}\"\n", s.radius, s.max, s.argmax));
        }
        out
    }
}

fn scan_shell(net: &ReactionNetwork, kind: LyapunovKind, r: u64) -> ShellSummary {
    let d = net.num_species();
    let mut best = f64::NEG_INFINITY;
    let mut argmax = Vec::new();
    let mut state = State::zeros(d);
    for_each_in_shell(r, d, |x| {
        state.0.copy_from_slice(x);
        let v = generator_apply(net, kind, &state);
        if v > best {
            best = v;
            argmax = x.to_vec();
        }
    });
    ShellSummary {
        radius: r,
        points: shell_size(r, d),
        max: best,
        argmax: State(argmax),
    }
}

/// Evaluates `𝒜V` on every lattice point with `Σ x_i ≤ r_max`. Shells are
/// split across threads; the result does not depend on the split.
pub fn drift_scan(
    net: &ReactionNetwork,
    kind: LyapunovKind,
    r_max: u64,
    shell_budget: u128,
) -> Result<DriftReport, DriftError> {
    let kind = kind.validate()?;
    if r_max < 1 {
        return Err(DriftError::InvalidRadius);
    }
    let d = net.num_species();
    let size = shell_size(r_max, d);
    if size > shell_budget {
        return Err(DriftError::ShellBudget {
            radius: r_max,
            size,
            budget: shell_budget,
        });
    }

    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let workers = workers.min(r_max as usize + 1).max(1);
    let mut shells: Vec<Option<ShellSummary>> = vec![None; r_max as usize + 1];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    // largest shells first, dealt round-robin for balance
                    (0..=r_max)
                        .rev()
                        .skip(w)
                        .step_by(workers)
                        .map(|r| scan_shell(net, kind, r))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for s in h.join().expect("shell worker panicked") {
                let idx = s.radius as usize;
                shells[idx] = Some(s);
            }
        }
    });
    let shells: Vec<ShellSummary> = shells.into_iter().map(|s| s.expect("every shell scanned")).collect();

    let last_violation = shells.iter().rev().find(|s| s.max > -1.0);
    let (exception_set_bound, verdict) = match last_violation {
        Some(s) if s.radius == r_max => (
            None,
            DriftVerdict::DriftViolatedAt {
                state: s.argmax.clone(),
                value: s.max,
            },
        ),
        Some(s) => (Some(s.radius), DriftVerdict::DriftConfirmedUpToRmax),
        None => (Some(0), DriftVerdict::DriftConfirmedUpToRmax),
    };
    Ok(DriftReport {
        lyapunov: kind,
        r_min: 0,
        r_max,
        shells,
        exception_set_bound,
        verdict,
    })
}
