//! Exact stochastic simulation of the mass-action chain (direct and
//! next-reaction methods) and Monte Carlo recurrence diagnostics.

mod classes;
mod heap;

use std::collections::HashMap;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{reaction_intensity, ReactionNetwork, State};
use heap::IndexedHeap;

pub use classes::{
    communicating_classes, estimate_entry_time, estimate_return_time, TimeEstimate,
    TruncatedClassDecomposition, DEFAULT_BOX_BUDGET,
};

/// Generator and stream derivation, recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha): seed_from_u64(seed), set_stream(trajectory index)";

/// Random source for trajectory `stream` of a run seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Gillespie's direct method.
    Direct,
    /// Gibson-Bruck next-reaction method.
    NextReaction,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("time horizon must be positive and finite, got {0}")]
    InvalidHorizon(f64),
    #[error("burn-in {burn_in} must lie in [0, t_end = {t_end})")]
    InvalidBurnIn { burn_in: f64, t_end: f64 },
    #[error("state has {got} coordinates but the network has {expected} species")]
    Dimension { expected: usize, got: usize },
    #[error("initial state {0} lies outside the box")]
    OutsideBox(State),
    #[error("box has {volume} states, over the budget of {budget}")]
    BoxBudget { volume: u128, budget: u128 },
    #[error("number of trials must be at least 1")]
    NoTrials,
    #[error("intensity overflow at t = {time}; trajectory truncated after {} jumps", partial.jumps.len())]
    IntensityOverflow { time: f64, partial: Box<Trajectory> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub time: f64,
    pub reaction: usize,
    pub state: State,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub x0: State,
    pub jumps: Vec<Jump>,
    pub seed: u64,
    pub method: Method,
    pub t_end: f64,
    /// No reaction was enabled at the last state.
    pub absorbed: bool,
}

impl Trajectory {
    /// State held at time `t`.
    pub fn state_at(&self, t: f64) -> &State {
        let idx = self.jumps.partition_point(|j| j.time <= t);
        if idx == 0 {
            &self.x0
        } else {
            &self.jumps[idx - 1].state
        }
    }

    pub fn final_state(&self) -> &State {
        self.jumps.last().map(|j| &j.state).unwrap_or(&self.x0)
    }

    /// `t,reaction,<species...>` rows; the first row is the initial state
    /// with an empty reaction field.
    pub fn to_csv(&self, net: &ReactionNetwork) -> String {
        let mut out = String::from("t,reaction");
        for s in net.species() {
            out.push(',');
            out.push_str(s);
        }
        out.push('\n');
        let row = |out: &mut String, t: f64, r: Option<usize>, x: &State| {
            out.push_str(&format!("{t},"));
            if let Some(r) = r {
                out.push_str(&r.to_string());
            }
            for v in x.counts() {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        };
        row(&mut out, 0.0, None, &self.x0);
        for j in &self.jumps {
            row(&mut out, j.time, Some(j.reaction), &j.state);
        }
        out
    }
}

/// Outcome of one engine step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    Fired { time: f64, reaction: usize },
    /// The next event would fall after the horizon; the clock stops there.
    Horizon,
    /// No reaction is enabled.
    Absorbed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overflow {
    pub time: f64,
}

enum Scheduler {
    Direct,
    Next { heap: IndexedHeap },
}

/// Streaming simulator: holds the current state and advances one jump at a
/// time, so long runs need no trajectory storage.
pub struct Engine<'a> {
    net: &'a ReactionNetwork,
    deltas: Vec<Vec<i64>>,
    /// Reactions whose intensity can change when reaction `r` fires.
    dependents: Vec<Vec<usize>>,
    props: Vec<f64>,
    state: Vec<u64>,
    time: f64,
    rng: ChaCha8Rng,
    scheduler: Scheduler,
}

fn exp_sample(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    let u: f64 = rng.sample(Open01);
    -u.ln() / rate
}

impl<'a> Engine<'a> {
    pub fn new(net: &'a ReactionNetwork, x0: &State, method: Method, rng: ChaCha8Rng) -> Result<Self, SimError> {
        let d = net.num_species();
        if x0.counts().len() != d {
            return Err(SimError::Dimension {
                expected: d,
                got: x0.counts().len(),
            });
        }
        let deltas: Vec<Vec<i64>> = net.reactions().iter().map(|r| r.delta(d)).collect();
        let dependents = (0..net.reactions().len())
            .map(|mu| {
                (0..net.reactions().len())
                    .filter(|&r| {
                        r == mu || net.reactions()[r].source.support().any(|s| deltas[mu][s.0] != 0)
                    })
                    .collect()
            })
            .collect();
        let props: Vec<f64> = net.reactions().iter().map(|r| reaction_intensity(r, x0.counts())).collect();
        let mut engine = Engine {
            net,
            deltas,
            dependents,
            props,
            state: x0.counts().to_vec(),
            time: 0.0,
            rng,
            scheduler: Scheduler::Direct,
        };
        if method == Method::NextReaction {
            let keys = (0..engine.props.len())
                .map(|r| {
                    let a = engine.props[r];
                    if a > 0.0 {
                        exp_sample(&mut engine.rng, a)
                    } else {
                        f64::INFINITY
                    }
                })
                .collect();
            engine.scheduler = Scheduler::Next {
                heap: IndexedHeap::new(keys),
            };
        }
        Ok(engine)
    }

    pub fn state(&self) -> &[u64] {
        &self.state
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Fires the next reaction if it happens by `t_end`.
    pub fn step(&mut self, t_end: f64) -> Result<Step, Overflow> {
        let (time, reaction) = match &mut self.scheduler {
            Scheduler::Direct => {
                let total: f64 = self.props.iter().sum();
                if total == 0.0 {
                    return Ok(Step::Absorbed);
                }
                if !total.is_finite() {
                    return Err(Overflow { time: self.time });
                }
                let t = self.time + exp_sample(&mut self.rng, total);
                if t > t_end {
                    self.time = t_end;
                    return Ok(Step::Horizon);
                }
                let target = self.rng.random::<f64>() * total;
                let mut acc = 0.0;
                let mut chosen = None;
                for (r, &a) in self.props.iter().enumerate() {
                    if a > 0.0 {
                        chosen = Some(r);
                        acc += a;
                        if target < acc {
                            break;
                        }
                    }
                }
                (t, chosen.expect("positive total intensity"))
            }
            Scheduler::Next { heap } => {
                let (r, t) = heap.min().expect("network has reactions");
                if t == f64::INFINITY {
                    return Ok(Step::Absorbed);
                }
                if t > t_end {
                    self.time = t_end;
                    return Ok(Step::Horizon);
                }
                (t, r)
            }
        };

        for (x, &dx) in self.state.iter_mut().zip(&self.deltas[reaction]) {
            *x = x.checked_add_signed(dx).ok_or(Overflow { time })?;
        }
        self.time = time;
        for &r in &self.dependents[reaction] {
            let old = self.props[r];
            let new = reaction_intensity(&self.net.reactions()[r], &self.state);
            if !new.is_finite() {
                return Err(Overflow { time });
            }
            self.props[r] = new;
            if let Scheduler::Next { heap } = &mut self.scheduler {
                let key = if new == 0.0 {
                    f64::INFINITY
                } else if r == reaction || old == 0.0 {
                    time + exp_sample(&mut self.rng, new)
                } else {
                    // rescale the remaining waiting time
                    time + (old / new) * (heap.key(r) - time)
                };
                heap.update(r, key);
            }
        }
        Ok(Step::Fired { time, reaction })
    }
}

fn check_horizon(t_end: f64) -> Result<(), SimError> {
    if t_end > 0.0 && t_end.is_finite() {
        Ok(())
    } else {
        Err(SimError::InvalidHorizon(t_end))
    }
}

/// Samples one trajectory on `[0, t_end]` (stream 0 of `seed`).
pub fn simulate(
    net: &ReactionNetwork,
    x0: &State,
    t_end: f64,
    seed: u64,
    method: Method,
) -> Result<Trajectory, SimError> {
    check_horizon(t_end)?;
    let mut engine = Engine::new(net, x0, method, rng_for(seed, 0))?;
    let mut traj = Trajectory {
        x0: x0.clone(),
        jumps: Vec::new(),
        seed,
        method,
        t_end,
        absorbed: false,
    };
    loop {
        match engine.step(t_end) {
            Ok(Step::Fired { time, reaction }) => traj.jumps.push(Jump {
                time,
                reaction,
                state: State(engine.state().to_vec()),
            }),
            Ok(Step::Horizon) => return Ok(traj),
            Ok(Step::Absorbed) => {
                traj.absorbed = true;
                return Ok(traj);
            }
            Err(Overflow { time }) => {
                return Err(SimError::IntensityOverflow {
                    time,
                    partial: Box::new(traj),
                })
            }
        }
    }
}

/// Runs `trial(i)` for every trial index across threads and returns the
/// results in index order.
pub(crate) fn run_trials<T, F>(n_trials: usize, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(n_trials)
        .max(1);
    let mut slots: Vec<Option<T>> = (0..n_trials).map(|_| None).collect();
    std::thread::scope(|scope| {
        let trial = &trial;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..n_trials)
                        .step_by(workers)
                        .map(|i| (i, trial(i as u64)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("trial worker panicked") {
                slots[i] = Some(v);
            }
        }
    });
    slots.into_iter().map(|v| v.expect("every trial ran")).collect()
}

/// States at time `t` of `n_trials` independent trajectories from `x0`;
/// trajectory `i` uses stream `i` of `seed`.
pub fn sample_at(
    net: &ReactionNetwork,
    x0: &State,
    t: f64,
    n_trials: usize,
    seed: u64,
    method: Method,
) -> Result<Vec<State>, SimError> {
    check_horizon(t)?;
    if n_trials == 0 {
        return Err(SimError::NoTrials);
    }
    Engine::new(net, x0, method, rng_for(seed, 0))?;
    let out = run_trials(n_trials, |i| {
        let mut engine = Engine::new(net, x0, method, rng_for(seed, i)).expect("checked above");
        loop {
            match engine.step(t) {
                Ok(Step::Fired { .. }) => {}
                Ok(_) => return Ok(State(engine.state().to_vec())),
                Err(Overflow { time }) => return Err(time),
            }
        }
    });
    out.into_iter()
        .map(|r| {
            r.map_err(|time| SimError::IntensityOverflow {
                time,
                partial: Box::new(Trajectory {
                    x0: x0.clone(),
                    jumps: Vec::new(),
                    seed,
                    method,
                    t_end: t,
                    absorbed: false,
                }),
            })
        })
        .collect()
}

/// Time-weighted occupancy of states over `[burn_in, t_end]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `(state, mass)` sorted by state.
    pub mass: Vec<(State, f64)>,
}

impl Histogram {
    pub fn mass_of(&self, x: &State) -> f64 {
        self.mass
            .binary_search_by(|(s, _)| s.cmp(x))
            .map(|i| self.mass[i].1)
            .unwrap_or(0.0)
    }

    /// Marginal distribution of species `i`, indexed by count.
    pub fn marginal(&self, i: usize) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for (s, m) in &self.mass {
            let k = s.counts()[i] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0.0);
            }
            out[k] += m;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,mass\n");
        for (s, m) in &self.mass {
            out.push_str(&format!("\"{s}\",{m}\n"));
        }
        out
    }
}

pub fn stationary_histogram(
    net: &ReactionNetwork,
    x0: &State,
    t_end: f64,
    burn_in: f64,
    seed: u64,
    method: Method,
) -> Result<Histogram, SimError> {
    check_horizon(t_end)?;
    if !(burn_in >= 0.0 && burn_in < t_end) {
        return Err(SimError::InvalidBurnIn { burn_in, t_end });
    }
    let mut engine = Engine::new(net, x0, method, rng_for(seed, 0))?;
    let mut acc: HashMap<Vec<u64>, f64> = HashMap::new();
    let mut credit = |state: &[u64], from: f64, to: f64| {
        let dwell = to.min(t_end) - from.max(burn_in);
        if dwell > 0.0 {
            match acc.get_mut(state) {
                Some(m) => *m += dwell,
                None => {
                    acc.insert(state.to_vec(), dwell);
                }
            }
        }
    };
    let mut held = x0.counts().to_vec();
    let mut since = 0.0;
    loop {
        match engine.step(t_end) {
            Ok(Step::Fired { time, .. }) => {
                credit(&held, since, time);
                held.copy_from_slice(engine.state());
                since = time;
            }
            Ok(Step::Horizon) | Ok(Step::Absorbed) => {
                credit(&held, since, t_end);
                break;
            }
            Err(Overflow { time }) => {
                return Err(SimError::IntensityOverflow {
                    time,
                    partial: Box::new(Trajectory {
                        x0: x0.clone(),
                        jumps: Vec::new(),
                        seed,
                        method,
                        t_end,
                        absorbed: false,
                    }),
                })
            }
        }
    }
    let window = t_end - burn_in;
    let mut mass: Vec<(State, f64)> = acc.into_iter().map(|(s, m)| (State(s), m / window)).collect();
    mass.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Histogram { mass })
}
