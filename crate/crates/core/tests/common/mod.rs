#![allow(dead_code)]

pub mod gen;
pub mod lemmas;
pub mod oracle;
pub mod stats;

use std::path::PathBuf;

use crn_core::{parse_network, ReactionNetwork};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn fixture(name: &str) -> ReactionNetwork {
    let path = data_path(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_network(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn complex_names(net: &ReactionNetwork, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&c| net.display_complex(&net.complexes()[c])).collect()
}

/// Fixtures certified by at least one theorem.
pub const CERTIFIED: [&str; 5] = [
    "enzyme_open.crn",
    "doubles_paths.crn",
    "four_classes.crn",
    "four_classes_reversible.crn",
    "outflow_classes.crn",
];

pub const ALL_FIXTURES: [&str; 12] = [
    "assoc_decay.crn",
    "birth.crn",
    "chain.crn",
    "doubles_paths.crn",
    "enzyme.crn",
    "enzyme_open.crn",
    "four_classes.crn",
    "four_classes_reversible.crn",
    "outflow_classes.crn",
    "pair_class.crn",
    "poisson.crn",
    "three_classes.crn",
];
