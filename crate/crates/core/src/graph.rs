//! Reaction-graph structure: linkage classes, weak reversibility, complex
//! kinds and directed path queries.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{Complex, ReactionNetwork, SpeciesId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    Zero,
    Unary,
    Binary,
    /// `2S`, a binary complex reported on its own.
    Double,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("complex of order {order} is not zero, unary or binary")]
pub struct NotBinaryNetwork {
    pub order: u64,
}

pub fn classify_complex(y: &Complex) -> Result<ComplexKind, NotBinaryNetwork> {
    match y.order() {
        0 => Ok(ComplexKind::Zero),
        1 => Ok(ComplexKind::Unary),
        2 if y.as_double().is_some() => Ok(ComplexKind::Double),
        2 => Ok(ComplexKind::Binary),
        order => Err(NotBinaryNetwork { order }),
    }
}

/// True for the zero complex and for unary complexes.
pub fn is_unary_or_zero(y: &Complex) -> bool {
    y.order() <= 1
}

/// A connected component of the reaction graph. Indices refer to
/// `net.complexes()` and `net.reactions()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageClass {
    pub complexes: Vec<usize>,
    pub reactions: Vec<usize>,
    pub weakly_reversible: bool,
}

impl LinkageClass {
    pub fn contains_complex(&self, c: usize) -> bool {
        self.complexes.binary_search(&c).is_ok()
    }

    /// Species appearing in any complex of the class, in index order.
    pub fn species(&self, net: &ReactionNetwork) -> Vec<SpeciesId> {
        let mut out: Vec<SpeciesId> = self
            .complexes
            .iter()
            .flat_map(|&c| net.complexes()[c].support())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn all_binary(&self, net: &ReactionNetwork) -> bool {
        self.complexes.iter().all(|&c| net.complexes()[c].order() == 2)
    }

    pub fn has_binary(&self, net: &ReactionNetwork) -> bool {
        self.complexes.iter().any(|&c| net.complexes()[c].order() == 2)
    }
}

fn complex_digraph(net: &ReactionNetwork) -> DiGraph<(), usize> {
    let mut g = DiGraph::with_capacity(net.complexes().len(), net.reactions().len());
    for _ in net.complexes() {
        g.add_node(());
    }
    for r in 0..net.reactions().len() {
        g.add_edge(
            (net.source_of(r) as u32).into(),
            (net.product_of(r) as u32).into(),
            r,
        );
    }
    g
}

/// Linkage classes ordered by their smallest complex index.
pub fn linkage_classes(net: &ReactionNetwork) -> Vec<LinkageClass> {
    let n = net.complexes().len();
    let mut uf = UnionFind::<usize>::new(n);
    for r in 0..net.reactions().len() {
        uf.union(net.source_of(r), net.product_of(r));
    }
    let scc_of = scc_labels(net);

    let mut root_to_class: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<LinkageClass> = Vec::new();
    for c in 0..n {
        let root = uf.find(c);
        let idx = *root_to_class[root].get_or_insert_with(|| {
            classes.push(LinkageClass {
                complexes: Vec::new(),
                reactions: Vec::new(),
                weakly_reversible: true,
            });
            classes.len() - 1
        });
        classes[idx].complexes.push(c);
    }
    for r in 0..net.reactions().len() {
        let idx = root_to_class[uf.find(net.source_of(r))].expect("source has a class");
        classes[idx].reactions.push(r);
    }
    for class in &mut classes {
        let first = scc_of[class.complexes[0]];
        class.weakly_reversible = class.complexes.iter().all(|&c| scc_of[c] == first);
    }
    classes
}

/// Strongly connected component label per complex.
fn scc_labels(net: &ReactionNetwork) -> Vec<usize> {
    let g = complex_digraph(net);
    let mut label = vec![0usize; net.complexes().len()];
    for (i, comp) in tarjan_scc(&g).into_iter().enumerate() {
        for node in comp {
            label[node.index()] = i;
        }
    }
    label
}

pub fn is_weakly_reversible(net: &ReactionNetwork) -> bool {
    linkage_classes(net).iter().all(|c| c.weakly_reversible)
}

pub fn is_binary(net: &ReactionNetwork) -> bool {
    net.complexes().iter().all(|c| c.order() <= 2)
}

/// Species `S` whose double complex `2S` is missing from the network.
pub fn missing_doubles(net: &ReactionNetwork) -> Vec<SpeciesId> {
    (0..net.num_species())
        .map(SpeciesId)
        .filter(|&s| net.complex_index(&Complex::double(s)).is_none())
        .collect()
}

pub fn is_double_full(net: &ReactionNetwork) -> bool {
    missing_doubles(net).is_empty()
}

/// Species lacking an in-flow and species lacking an out-flow.
pub fn missing_flows(net: &ReactionNetwork) -> (Vec<SpeciesId>, Vec<SpeciesId>) {
    let d = net.num_species();
    let mut has_in = vec![false; d];
    let mut has_out = vec![false; d];
    for r in net.reactions() {
        if let Some(s) = r.in_flow_species() {
            has_in[s.0] = true;
        }
        if let Some(s) = r.out_flow_species() {
            has_out[s.0] = true;
        }
    }
    let pick = |v: &[bool]| (0..d).filter(|&i| !v[i]).map(SpeciesId).collect();
    (pick(&has_in), pick(&has_out))
}

pub fn has_all_flows(net: &ReactionNetwork) -> bool {
    let (i, o) = missing_flows(net);
    i.is_empty() && o.is_empty()
}

/// Breadth-first shortest directed path from `from` to any complex matching
/// `target`, as a list of reaction indices. Ties break by reaction order.
/// Returns an empty path when `from` itself matches, and `None` when `from`
/// is not a complex of the network or no target is reachable.
pub fn directed_path<F>(net: &ReactionNetwork, from: &Complex, target: F) -> Option<Vec<usize>>
where
    F: Fn(&Complex) -> bool,
{
    let start = net.complex_index(from)?;
    directed_path_from(net, start, target)
}

pub fn directed_path_from<F>(net: &ReactionNetwork, start: usize, target: F) -> Option<Vec<usize>>
where
    F: Fn(&Complex) -> bool,
{
    let n = net.complexes().len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..net.reactions().len() {
        out_edges[net.source_of(r)].push(r);
    }
    // via[c] = reaction that first reached c
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        if target(&net.complexes()[c]) {
            let mut path = Vec::new();
            let mut cur = c;
            while let Some(r) = via[cur] {
                path.push(r);
                cur = net.source_of(r);
            }
            path.reverse();
            return Some(path);
        }
        for &r in &out_edges[c] {
            let next = net.product_of(r);
            if !visited[next] {
                visited[next] = true;
                via[next] = Some(r);
                queue.push_back(next);
            }
        }
    }
    None
}

/// Checks that `path` is a chain of reactions of `net` starting at complex
/// `start`, and returns the complex index it ends at.
pub fn path_end(net: &ReactionNetwork, start: usize, path: &[usize]) -> Option<usize> {
    let mut cur = start;
    for &r in path {
        if r >= net.reactions().len() || net.source_of(r) != cur {
            return None;
        }
        cur = net.product_of(r);
    }
    Some(cur)
}
