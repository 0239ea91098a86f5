//! Positive-recurrence analysis for stochastic mass-action reaction networks.
//!
//! The crate parses networks from a small text format, inspects the reaction
//! graph (linkage classes, weak reversibility, double-fullness, flows),
//! certifies structural recurrence theorems with re-checkable witnesses,
//! computes tier partitions along monomial state sequences, evaluates the
//! generator on Lyapunov functions, and simulates the Markov chain exactly.

pub mod drift;
pub mod graph;
pub mod network;
pub mod parse;
pub mod sim;
pub mod theorems;
pub mod tiers;

pub use network::{
    complex_intensity, complex_intensity_f64, reaction_intensity, Complex, NetworkError, Reaction,
    ReactionNetwork, SpeciesId, State,
};
pub use parse::{format_network, parse_network, parse_state, ParseError, ParseErrorKind};
pub use theorems::{best_verdict, Certificate, CheckError, Conclusion, TheoremId, Verdict, Witness};
pub use drift::{drift_scan, generator_apply, lyapunov_value, DriftError, DriftReport, DriftVerdict, LyapunovKind};
pub use sim::{simulate, Method, SimError, Trajectory};
