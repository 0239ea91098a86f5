use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::{check_horizon, rng_for, run_trials, Engine, Method, SimError, Step};
use crate::network::{complex_intensity, ReactionNetwork, State};

/// Default cap on the number of states in a truncation box.
pub const DEFAULT_BOX_BUDGET: u128 = 2_000_000;

/// Communicating classes of the chain restricted to the box
/// `0 ≤ x_i ≤ bounds[i]`. Transitions that leave the box are not edges; a
/// class with such a transition carries a boundary caveat, and `closed` is
/// relative to the box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedClassDecomposition {
    pub bounds: Vec<u64>,
    /// Each class sorted, classes ordered by their smallest state.
    pub classes: Vec<Vec<State>>,
    pub closed: Vec<bool>,
    pub boundary_caveat: Vec<bool>,
}

impl TruncatedClassDecomposition {
    pub fn contains(&self, x: &State) -> bool {
        x.counts().len() == self.bounds.len() && x.counts().iter().zip(&self.bounds).all(|(v, b)| v <= b)
    }

    pub fn class_of(&self, x: &State) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(x).is_ok())
    }

    /// Closed classes with no transition leaving the box.
    pub fn targets(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.closed[c] && !self.boundary_caveat[c])
            .collect()
    }
}

fn box_volume(bounds: &[u64]) -> u128 {
    bounds
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
        .unwrap_or(u128::MAX)
}

fn encode(x: &[u64], bounds: &[u64]) -> usize {
    let mut idx = 0usize;
    for i in (0..x.len()).rev() {
        idx = idx * (bounds[i] as usize + 1) + x[i] as usize;
    }
    idx
}

fn decode(mut idx: usize, bounds: &[u64]) -> Vec<u64> {
    bounds
        .iter()
        .map(|&b| {
            let r = idx % (b as usize + 1);
            idx /= b as usize + 1;
            r as u64
        })
        .collect()
}

pub fn communicating_classes(
    net: &ReactionNetwork,
    bounds: &[u64],
    budget: u128,
) -> Result<TruncatedClassDecomposition, SimError> {
    let d = net.num_species();
    if bounds.len() != d {
        return Err(SimError::Dimension {
            expected: d,
            got: bounds.len(),
        });
    }
    let volume = box_volume(bounds);
    if volume > budget {
        return Err(SimError::BoxBudget { volume, budget });
    }
    let n = volume as usize;
    let deltas: Vec<Vec<i64>> = net.reactions().iter().map(|r| r.delta(d)).collect();
    let mut g = DiGraph::<(), ()>::with_capacity(n, n * net.reactions().len());
    for _ in 0..n {
        g.add_node(());
    }
    let mut leaves_box = vec![false; n];
    for (idx, leaves) in leaves_box.iter_mut().enumerate() {
        let x = decode(idx, bounds);
        for (r, rx) in net.reactions().iter().enumerate() {
            if complex_intensity(&rx.source, &x) == 0 {
                continue;
            }
            let next: Option<Vec<u64>> = x
                .iter()
                .zip(&deltas[r])
                .map(|(&v, &dv)| v.checked_add_signed(dv))
                .collect();
            match next {
                Some(y) if y.iter().zip(bounds).all(|(v, b)| v <= b) => {
                    let j = encode(&y, bounds);
                    if j != idx {
                        g.add_edge((idx as u32).into(), (j as u32).into(), ());
                    }
                }
                _ => *leaves = true,
            }
        }
    }

    let mut label = vec![0usize; n];
    // kosaraju is iterative; tarjan recurses per state and overflows on large boxes
    let sccs = kosaraju_scc(&g);
    for (c, comp) in sccs.iter().enumerate() {
        for node in comp {
            label[node.index()] = c;
        }
    }
    let mut closed = vec![true; sccs.len()];
    let mut caveat = vec![false; sccs.len()];
    for e in g.raw_edges() {
        let (a, b) = (label[e.source().index()], label[e.target().index()]);
        if a != b {
            closed[a] = false;
        }
    }
    for idx in 0..n {
        if leaves_box[idx] {
            caveat[label[idx]] = true;
        }
    }

    let mut order: Vec<(Vec<State>, bool, bool)> = sccs
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            let mut states: Vec<State> = comp.iter().map(|v| State(decode(v.index(), bounds))).collect();
            states.sort();
            (states, closed[c], caveat[c])
        })
        .collect();
    order.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
    let mut out = TruncatedClassDecomposition {
        bounds: bounds.to_vec(),
        classes: Vec::with_capacity(order.len()),
        closed: Vec::with_capacity(order.len()),
        boundary_caveat: Vec::with_capacity(order.len()),
    };
    for (states, cl, cv) in order {
        out.classes.push(states);
        out.closed.push(cl);
        out.boundary_caveat.push(cv);
    }
    Ok(out)
}

/// Monte Carlo estimate of a hitting time. Trials still running at the cap
/// (or stopped by intensity overflow) are censored and excluded from the
/// mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeEstimate {
    pub mean: Option<f64>,
    /// Half-width of the normal 95% interval for the mean.
    pub ci_halfwidth: Option<f64>,
    pub completed: usize,
    pub censored: usize,
    pub trials: usize,
}

impl TimeEstimate {
    fn from_samples(samples: &[Option<f64>]) -> Self {
        let done: Vec<f64> = samples.iter().flatten().copied().collect();
        let n = done.len();
        let (mean, ci) = if n == 0 {
            (None, None)
        } else {
            let mean = done.iter().sum::<f64>() / n as f64;
            let ci = if n > 1 {
                let var = done.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                1.959_963_984_540_054 * (var / n as f64).sqrt()
            } else {
                0.0
            };
            (Some(mean), Some(ci))
        };
        TimeEstimate {
            mean,
            ci_halfwidth: ci,
            completed: n,
            censored: samples.len() - n,
            trials: samples.len(),
        }
    }
}

/// Time for the chain started at `x0` to enter the union of the closed
/// classes of `decomp` that have no boundary caveat.
pub fn estimate_entry_time(
    net: &ReactionNetwork,
    x0: &State,
    decomp: &TruncatedClassDecomposition,
    n_trials: usize,
    t_cap: f64,
    seed: u64,
) -> Result<TimeEstimate, SimError> {
    check_horizon(t_cap)?;
    if n_trials == 0 {
        return Err(SimError::NoTrials);
    }
    if !decomp.contains(x0) {
        return Err(SimError::OutsideBox(x0.clone()));
    }
    let bounds = &decomp.bounds;
    let mut is_target = vec![false; box_volume(bounds) as usize];
    for c in decomp.targets() {
        for s in &decomp.classes[c] {
            is_target[encode(s.counts(), bounds)] = true;
        }
    }
    let hit = |x: &[u64]| x.iter().zip(bounds).all(|(v, b)| v <= b) && is_target[encode(x, bounds)];
    if hit(x0.counts()) {
        return Ok(TimeEstimate::from_samples(&vec![Some(0.0); n_trials]));
    }
    let samples = run_trials(n_trials, |i| {
        let mut engine = Engine::new(net, x0, Method::Direct, rng_for(seed, i)).ok()?;
        loop {
            match engine.step(t_cap) {
                Ok(Step::Fired { time, .. }) if hit(engine.state()) => return Some(time),
                Ok(Step::Fired { .. }) => {}
                _ => return None,
            }
        }
    });
    Ok(TimeEstimate::from_samples(&samples))
}

/// Time for the chain started at `x0` to leave `x0` and come back.
pub fn estimate_return_time(
    net: &ReactionNetwork,
    x0: &State,
    n_trials: usize,
    t_cap: f64,
    seed: u64,
) -> Result<TimeEstimate, SimError> {
    check_horizon(t_cap)?;
    if n_trials == 0 {
        return Err(SimError::NoTrials);
    }
    if x0.counts().len() != net.num_species() {
        return Err(SimError::Dimension {
            expected: net.num_species(),
            got: x0.counts().len(),
        });
    }
    let samples = run_trials(n_trials, |i| {
        let mut engine = Engine::new(net, x0, Method::Direct, rng_for(seed, i)).ok()?;
        loop {
            match engine.step(t_cap) {
                Ok(Step::Fired { time, .. }) if engine.state() == x0.counts() => return Some(time),
                Ok(Step::Fired { .. }) => {}
                _ => return None,
            }
        }
    });
    Ok(TimeEstimate::from_samples(&samples))
}
