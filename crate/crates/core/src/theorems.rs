//! Structural certificates of positive recurrence.
//!
//! Each checker either returns a witness that can be re-validated against
//! the network with the graph primitives ([`Certificate::verify`]), or names
//! the first hypothesis that fails.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    directed_path_from, is_binary, is_unary_or_zero, is_weakly_reversible, linkage_classes,
    missing_doubles, missing_flows, path_end, LinkageClass,
};
use crate::network::{Complex, ReactionNetwork, SpeciesId};

/// Largest number of linkage classes the split searches accept.
pub const MAX_LINKAGE_CLASSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Weakly reversible binary network with one linkage class, plus all
    /// in-flows and out-flows.
    Thm1,
    /// Double-full binary network whose double complexes all reach a unary
    /// or zero complex.
    Thm2,
    /// Double-full binary network with weakly reversible all-binary classes
    /// covering the doubles that have no such path.
    Thm53,
    /// Weakly reversible double-full binary network with cross-class pairs.
    CorWR,
    /// Double-full binary network with out-flows in each all-binary class.
    Thm61,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Thm53,
        TheoremId::CorWR,
        TheoremId::Thm61,
    ];

    /// Whether the conclusion covers every state (rather than only states in
    /// closed irreducible components).
    pub fn every_state(self) -> bool {
        matches!(self, TheoremId::Thm1 | TheoremId::CorWR)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Thm1 => "Thm1",
            TheoremId::Thm2 => "Thm2",
            TheoremId::Thm53 => "Thm53",
            TheoremId::CorWR => "CorWR",
            TheoremId::Thm61 => "Thm61",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("network has {0} linkage classes; split search is capped at {MAX_LINKAGE_CLASSES}")]
    TooManyClasses(usize),
}

/// A path of reactions leaving complex `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub start: usize,
    pub reactions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePath {
    pub species: SpeciesId,
    pub path: PathWitness,
}

/// Species pair `S + S̃` of a linkage class with a path from `S + S̃` to a
/// unary or zero complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPair {
    pub class: usize,
    pub s: SpeciesId,
    pub s_tilde: SpeciesId,
    pub path: PathWitness,
}

/// How a double complex `2S` is covered: by a chosen class, or by a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DoubleCover {
    InClass(usize),
    Path(PathWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleDisposition {
    pub species: SpeciesId,
    pub cover: DoubleCover,
}

/// `S + S̃` with `S, S̃` species of `class`, lying in the later class `target_class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossPair {
    pub class: usize,
    pub s: SpeciesId,
    pub s_tilde: SpeciesId,
    pub complex: usize,
    pub target_class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutFlow {
    pub class: usize,
    pub species: SpeciesId,
    pub reaction: usize,
}

/// Theorem-specific evidence. Class indices refer to
/// [`linkage_classes`]`(net)`, complex and reaction indices to the network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Thm1 {
        base_reactions: Vec<usize>,
        flow_reactions: Vec<usize>,
    },
    Thm2 {
        paths: Vec<DoublePath>,
    },
    Thm53 {
        m: usize,
        classes: Vec<usize>,
        pairs: Vec<ClassPair>,
        doubles: Vec<DoubleDisposition>,
    },
    CorWR {
        m: usize,
        classes: Vec<usize>,
        pairs: Vec<CrossPair>,
    },
    Thm61 {
        m: usize,
        classes: Vec<usize>,
        out_flows: Vec<OutFlow>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: TheoremId,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub failure_reason: Option<String>,
}

impl Certificate {
    fn pass(theorem: TheoremId, witness: Witness) -> Self {
        Certificate {
            theorem,
            holds: true,
            witness: Some(witness),
            failure_reason: None,
        }
    }

    fn fail(theorem: TheoremId, reason: impl Into<String>) -> Self {
        Certificate {
            theorem,
            holds: false,
            witness: None,
            failure_reason: Some(reason.into()),
        }
    }

    /// Re-validates a positive certificate from scratch: every path is
    /// re-walked edge by edge and every class property recomputed.
    /// Negative certificates verify trivially.
    pub fn verify(&self, net: &ReactionNetwork) -> bool {
        if !self.holds {
            return self.failure_reason.is_some();
        }
        let Some(w) = &self.witness else {
            return false;
        };
        let classes = linkage_classes(net);
        let binary_df = is_binary(net) && missing_doubles(net).is_empty();
        let ends_low = |p: &PathWitness| {
            path_end(net, p.start, &p.reactions)
                .map(|e| is_unary_or_zero(&net.complexes()[e]))
                .unwrap_or(false)
        };
        let class_ok = |c: usize| {
            classes
                .get(c)
                .map(|cl| cl.weakly_reversible && cl.all_binary(net))
                .unwrap_or(false)
        };
        match w {
            Witness::Thm1 {
                base_reactions,
                flow_reactions,
            } => {
                let mut all: Vec<usize> = base_reactions.iter().chain(flow_reactions).copied().collect();
                all.sort();
                all.dedup();
                if all.len() != net.reactions().len()
                    || all.iter().enumerate().any(|(i, &r)| i != r)
                    || flow_reactions.len() != 2 * net.num_species()
                    || !flow_reactions.iter().all(|&r| net.reactions()[r].is_flow())
                    || base_reactions.iter().any(|&r| net.reactions()[r].is_flow())
                {
                    return false;
                }
                let base = net.filter_reactions(|r| !r.is_flow());
                let (mi, mo) = missing_flows(net);
                let base_classes = linkage_classes(&base);
                mi.is_empty()
                    && mo.is_empty()
                    && is_binary(&base)
                    && base_classes.len() == 1
                    && base_classes[0].weakly_reversible
            }
            Witness::Thm2 { paths } => {
                binary_df
                    && paths.len() == net.num_species()
                    && paths.iter().all(|dp| {
                        net.complexes().get(dp.path.start) == Some(&Complex::double(dp.species))
                            && ends_low(&dp.path)
                    })
            }
            Witness::Thm53 {
                m,
                classes: chosen,
                pairs,
                doubles,
            } => {
                binary_df
                    && *m == chosen.len()
                    && *m < classes.len()
                    && chosen.iter().all(|&c| class_ok(c))
                    && chosen.iter().all(|&c| {
                        pairs.iter().any(|p| {
                            let species = classes[c].species(net);
                            p.class == c
                                && species.contains(&p.s)
                                && species.contains(&p.s_tilde)
                                && net.complexes().get(p.path.start)
                                    == Some(&Complex::from_terms([(p.s, 1), (p.s_tilde, 1)]))
                                && ends_low(&p.path)
                        })
                    })
                    && doubles.len() == net.num_species()
                    && doubles.iter().all(|d| {
                        let idx = net.complex_index(&Complex::double(d.species));
                        match &d.cover {
                            DoubleCover::InClass(c) => {
                                chosen.contains(c)
                                    && idx.map(|i| classes[*c].contains_complex(i)).unwrap_or(false)
                            }
                            DoubleCover::Path(p) => Some(p.start) == idx && ends_low(p),
                        }
                    })
            }
            Witness::CorWR {
                m,
                classes: chosen,
                pairs,
            } => {
                binary_df
                    && is_weakly_reversible(net)
                    && *m == chosen.len()
                    && *m >= 1
                    && *m < classes.len()
                    && (0..classes.len()).all(|c| chosen.contains(&c) == classes[c].all_binary(net))
                    && chosen.iter().all(|&c| {
                        pairs.iter().any(|p| {
                            let species = classes[c].species(net);
                            p.class == c
                                && species.contains(&p.s)
                                && species.contains(&p.s_tilde)
                                && !chosen.contains(&p.target_class)
                                && p.target_class < classes.len()
                                && net.complexes().get(p.complex)
                                    == Some(&Complex::from_terms([(p.s, 1), (p.s_tilde, 1)]))
                                && classes[p.target_class].contains_complex(p.complex)
                        })
                    })
            }
            Witness::Thm61 {
                m,
                classes: chosen,
                out_flows,
            } => {
                binary_df
                    && *m == chosen.len()
                    && *m >= 1
                    && *m < classes.len()
                    && chosen.iter().all(|&c| class_ok(c))
                    && (0..classes.len())
                        .filter(|c| !chosen.contains(c))
                        .all(|c| !classes[c].has_binary(net))
                    && chosen.iter().all(|&c| {
                        out_flows.iter().any(|o| {
                            o.class == c
                                && classes[c].species(net).contains(&o.species)
                                && net
                                    .reactions()
                                    .get(o.reaction)
                                    .and_then(|r| r.out_flow_species())
                                    == Some(o.species)
                        })
                    })
            }
        }
    }

    /// Human-readable account of the witness or failure.
    pub fn describe(&self, net: &ReactionNetwork) -> String {
        if !self.holds {
            return format!(
                "{} fails: {}",
                self.theorem,
                self.failure_reason.as_deref().unwrap_or("unknown")
            );
        }
        let path = |p: &PathWitness| {
            let mut s = net.display_complex(&net.complexes()[p.start]);
            for &r in &p.reactions {
                s.push_str(" -> ");
                s.push_str(&net.display_complex(&net.complexes()[net.product_of(r)]));
            }
            s
        };
        let sp = |s: SpeciesId| net.species_name(s).to_string();
        let body = match self.witness.as_ref() {
            None => String::new(),
            Some(Witness::Thm1 {
                base_reactions,
                flow_reactions,
            }) => format!(
                "base class of {} reactions plus {} flow reactions",
                base_reactions.len(),
                flow_reactions.len()
            ),
            Some(Witness::Thm2 { paths }) => paths
                .iter()
                .map(|d| path(&d.path))
                .collect::<Vec<_>>()
                .join("; "),
            Some(Witness::Thm53 {
                m,
                classes,
                pairs,
                doubles,
            }) => {
                let mut parts = vec![format!("m = {m}, classes {}", one_based(classes))];
                for p in pairs {
                    parts.push(format!(
                        "class {}: S={}, S~={}, path {}",
                        p.class + 1,
                        sp(p.s),
                        sp(p.s_tilde),
                        path(&p.path)
                    ));
                }
                for d in doubles {
                    parts.push(match &d.cover {
                        DoubleCover::InClass(c) => format!("2{} in class {}", sp(d.species), c + 1),
                        DoubleCover::Path(p) => path(p),
                    });
                }
                parts.join("; ")
            }
            Some(Witness::CorWR { m, classes, pairs }) => {
                let mut parts = vec![format!("m = {m}, classes {}", one_based(classes))];
                for p in pairs {
                    parts.push(format!(
                        "class {}: {} in class {}",
                        p.class + 1,
                        net.display_complex(&net.complexes()[p.complex]),
                        p.target_class + 1
                    ));
                }
                parts.join("; ")
            }
            Some(Witness::Thm61 {
                m,
                classes,
                out_flows,
            }) => {
                let mut parts = vec![format!("m = {m}, classes {}", one_based(classes))];
                for o in out_flows {
                    parts.push(format!("class {}: {} -> 0", o.class + 1, sp(o.species)));
                }
                parts.join("; ")
            }
        };
        format!("{} holds: {}", self.theorem, body)
    }
}


fn one_based(classes: &[usize]) -> String {
    let list: Vec<String> = classes.iter().map(|c| (c + 1).to_string()).collect();
    format!("{{{}}}", list.join(", "))
}
fn double_name(net: &ReactionNetwork, s: SpeciesId) -> String {
    net.display_complex(&Complex::double(s))
}

fn shortest_low_path(net: &ReactionNetwork, start: usize) -> Option<PathWitness> {
    directed_path_from(net, start, is_unary_or_zero).map(|reactions| PathWitness { start, reactions })
}

/// Binary + double-full preamble shared by the double-full checkers, in the
/// order the hypotheses are stated.
fn double_full_binary(net: &ReactionNetwork, theorem: TheoremId, df_first: bool) -> Option<Certificate> {
    let binary = || {
        net.complexes().iter().find(|c| c.order() > 2).map(|c| {
            Certificate::fail(
                theorem,
                format!("network is not binary: complex {} has order {}", net.display_complex(c), c.order()),
            )
        })
    };
    let double_full = || {
        missing_doubles(net).first().map(|&s| {
            Certificate::fail(
                theorem,
                format!("network is not double-full: {} is not a complex", double_name(net, s)),
            )
        })
    };
    if df_first {
        double_full().or_else(binary)
    } else {
        binary().or_else(double_full)
    }
}

pub fn check_theorem1(net: &ReactionNetwork) -> Certificate {
    let t = TheoremId::Thm1;
    let (missing_in, missing_out) = missing_flows(net);
    if let Some(&s) = missing_in.first() {
        return Certificate::fail(t, format!("missing in-flow for {}", net.species_name(s)));
    }
    if let Some(&s) = missing_out.first() {
        return Certificate::fail(t, format!("missing out-flow for {}", net.species_name(s)));
    }
    let (flow_reactions, base_reactions): (Vec<usize>, Vec<usize>) =
        (0..net.reactions().len()).partition(|&r| net.reactions()[r].is_flow());
    let base = net.filter_reactions(|r| !r.is_flow());
    if let Some(c) = base.complexes().iter().find(|c| c.order() > 2) {
        return Certificate::fail(
            t,
            format!("base network is not binary: complex {} has order {}", base.display_complex(c), c.order()),
        );
    }
    let classes = linkage_classes(&base);
    if classes.len() != 1 {
        return Certificate::fail(t, format!("base network has {} linkage classes", classes.len()));
    }
    if !classes[0].weakly_reversible {
        return Certificate::fail(t, "base network is not weakly reversible");
    }
    Certificate::pass(
        t,
        Witness::Thm1 {
            base_reactions,
            flow_reactions,
        },
    )
}

pub fn check_theorem2(net: &ReactionNetwork) -> Certificate {
    let t = TheoremId::Thm2;
    if let Some(fail) = double_full_binary(net, t, false) {
        return fail;
    }
    let mut paths = Vec::new();
    for i in 0..net.num_species() {
        let s = SpeciesId(i);
        let start = net.complex_index(&Complex::double(s)).expect("double-full");
        match shortest_low_path(net, start) {
            Some(path) => paths.push(DoublePath { species: s, path }),
            None => {
                return Certificate::fail(
                    t,
                    format!("no path from {} to a unary or zero complex", double_name(net, s)),
                )
            }
        }
    }
    Certificate::pass(t, Witness::Thm2 { paths })
}

/// Pair `S ≤ S̃` of species of `class` such that `S + S̃` is a complex with a
/// path to a unary or zero complex; shortest path first, then species order.
fn class_pair(net: &ReactionNetwork, class_idx: usize, class: &LinkageClass) -> Option<ClassPair> {
    let species = class.species(net);
    let mut best: Option<ClassPair> = None;
    for (a, &s) in species.iter().enumerate() {
        for &s_tilde in &species[a..] {
            let Some(start) = net.complex_index(&Complex::from_terms([(s, 1), (s_tilde, 1)])) else {
                continue;
            };
            let Some(path) = shortest_low_path(net, start) else {
                continue;
            };
            if best
                .as_ref()
                .map(|b| path.reactions.len() < b.path.reactions.len())
                .unwrap_or(true)
            {
                best = Some(ClassPair {
                    class: class_idx,
                    s,
                    s_tilde,
                    path,
                });
            }
        }
    }
    best
}

/// k-subsets of `items` in lexicographic order.
fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn check_theorem53(net: &ReactionNetwork) -> Result<Certificate, CheckError> {
    let t = TheoremId::Thm53;
    if let Some(fail) = double_full_binary(net, t, true) {
        return Ok(fail);
    }
    let classes = linkage_classes(net);
    let l = classes.len();
    if l > MAX_LINKAGE_CLASSES {
        return Err(CheckError::TooManyClasses(l));
    }

    // Classes usable below the split (hypotheses 1 and 2), with their pair.
    let mut eligible: Vec<usize> = Vec::new();
    let mut pairs: Vec<Option<ClassPair>> = vec![None; l];
    let mut why_not: Vec<String> = vec![String::new(); l];
    for (i, class) in classes.iter().enumerate() {
        if !class.weakly_reversible {
            why_not[i] = format!("class {} is not weakly reversible", i + 1);
        } else if !class.all_binary(net) {
            why_not[i] = format!("class {} has a non-binary complex", i + 1);
        } else if let Some(p) = class_pair(net, i, class) {
            pairs[i] = Some(p);
            eligible.push(i);
        } else {
            why_not[i] = format!("class {} has no pair S + S~ with a path to a unary or zero complex", i + 1);
        }
    }

    // Hypothesis 3 inputs: class of each 2S and its direct path, if any.
    let doubles: Vec<(SpeciesId, usize, Option<PathWitness>)> = (0..net.num_species())
        .map(|i| {
            let s = SpeciesId(i);
            let idx = net.complex_index(&Complex::double(s)).expect("double-full");
            let class = classes.iter().position(|c| c.contains_complex(idx)).expect("partition");
            (s, class, shortest_low_path(net, idx))
        })
        .collect();

    let max_m = eligible.len().min(l - 1);
    for m in (0..=max_m).rev() {
        for chosen in subsets(&eligible, m) {
            let covered = doubles
                .iter()
                .all(|(_, class, path)| chosen.contains(class) || path.is_some());
            if !covered {
                continue;
            }
            let dispositions = doubles
                .iter()
                .map(|(s, class, path)| DoubleDisposition {
                    species: *s,
                    cover: if chosen.contains(class) {
                        DoubleCover::InClass(*class)
                    } else {
                        DoubleCover::Path(path.clone().expect("covered"))
                    },
                })
                .collect();
            let chosen_pairs = chosen.iter().map(|&c| pairs[c].clone().expect("eligible")).collect();
            return Ok(Certificate::pass(
                t,
                Witness::Thm53 {
                    m,
                    classes: chosen,
                    pairs: chosen_pairs,
                    doubles: dispositions,
                },
            ));
        }
    }

    let reason = doubles
        .iter()
        .find(|(_, class, path)| path.is_none() && !eligible.contains(class))
        .map(|(s, class, _)| {
            format!(
                "{} has no path to a unary or zero complex and {}",
                double_name(net, *s),
                why_not[*class]
            )
        })
        .unwrap_or_else(|| {
            "every linkage class would have to lie below the split (m must be less than the number of classes)"
                .to_string()
        });
    Ok(Certificate::fail(t, reason))
}

pub fn check_corollary_wr(net: &ReactionNetwork) -> Certificate {
    let t = TheoremId::CorWR;
    let classes = linkage_classes(net);
    if let Some(i) = classes.iter().position(|c| !c.weakly_reversible) {
        return Certificate::fail(t, format!("network is not weakly reversible (class {})", i + 1));
    }
    if let Some(fail) = double_full_binary(net, t, true) {
        return fail;
    }
    let chosen: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].all_binary(net)).collect();
    if chosen.len() == classes.len() {
        return Certificate::fail(
            t,
            "no linkage class contains a non-binary complex, so no split m < number of classes exists",
        );
    }
    if chosen.is_empty() {
        return Certificate::fail(t, "no linkage class contains only binary complexes, so no split m ≥ 1 exists");
    }
    let mut pairs = Vec::new();
    for &i in &chosen {
        let species = classes[i].species(net);
        let found = species.iter().enumerate().find_map(|(a, &s)| {
            species[a..].iter().find_map(|&s_tilde| {
                let idx = net.complex_index(&Complex::from_terms([(s, 1), (s_tilde, 1)]))?;
                let target = classes.iter().position(|c| c.contains_complex(idx))?;
                (!chosen.contains(&target)).then_some(CrossPair {
                    class: i,
                    s,
                    s_tilde,
                    complex: idx,
                    target_class: target,
                })
            })
        });
        match found {
            Some(p) => pairs.push(p),
            None => {
                return Certificate::fail(
                    t,
                    format!("class {} has no species pair S + S~ lying in a class beyond the split", i + 1),
                )
            }
        }
    }
    Certificate::pass(
        t,
        Witness::CorWR {
            m: chosen.len(),
            classes: chosen,
            pairs,
        },
    )
}

pub fn check_theorem61(net: &ReactionNetwork) -> Certificate {
    let t = TheoremId::Thm61;
    if let Some(fail) = double_full_binary(net, t, true) {
        return fail;
    }
    let classes = linkage_classes(net);
    // hypothesis 2 forces every class holding a binary complex below the split
    let chosen: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].has_binary(net)).collect();
    for &i in &chosen {
        if !classes[i].all_binary(net) {
            return Certificate::fail(t, format!("class {} mixes binary and non-binary complexes", i + 1));
        }
        if !classes[i].weakly_reversible {
            return Certificate::fail(t, format!("class {} is not weakly reversible", i + 1));
        }
    }
    if chosen.len() == classes.len() {
        return Certificate::fail(
            t,
            "every linkage class contains a binary complex, so no split m < number of classes exists",
        );
    }
    let mut out_flows = Vec::new();
    for &i in &chosen {
        let species = classes[i].species(net);
        let found = species.iter().find_map(|&s| {
            net.reactions()
                .iter()
                .position(|r| r.out_flow_species() == Some(s))
                .map(|reaction| OutFlow {
                    class: i,
                    species: s,
                    reaction,
                })
        });
        match found {
            Some(o) => out_flows.push(o),
            None => return Certificate::fail(t, format!("no out-flow species in class {}", i + 1)),
        }
    }
    Certificate::pass(
        t,
        Witness::Thm61 {
            m: chosen.len(),
            classes: chosen,
            out_flows,
        },
    )
}

/// Strongest conclusion drawn from the certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// Every state is positive recurrent.
    EveryStatePositiveRecurrent,
    /// States in closed irreducible components are positive recurrent and
    /// the expected entry time into them is finite.
    ClosedComponentsPositiveRecurrent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub certificates: Vec<Certificate>,
    pub conclusion: Conclusion,
    pub summary: String,
    pub conjecture_note: Option<String>,
}

impl Verdict {
    pub fn any_holds(&self) -> bool {
        self.certificates.iter().any(|c| c.holds)
    }

    pub fn certificate(&self, t: TheoremId) -> &Certificate {
        self.certificates
            .iter()
            .find(|c| c.theorem == t)
            .expect("all theorems are checked")
    }
}

pub fn best_verdict(net: &ReactionNetwork) -> Result<Verdict, CheckError> {
    let certificates = vec![
        check_theorem1(net),
        check_theorem2(net),
        check_theorem53(net)?,
        check_corollary_wr(net),
        check_theorem61(net),
    ];
    let holding: Vec<TheoremId> = certificates.iter().filter(|c| c.holds).map(|c| c.theorem).collect();
    let names = holding.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ");
    let (conclusion, summary) = if let Some(t) = holding.iter().find(|t| t.every_state()) {
        (
            Conclusion::EveryStatePositiveRecurrent,
            format!("{t}: every state is positive recurrent for any choice of rate constants (holding: {names})"),
        )
    } else if !holding.is_empty() {
        (
            Conclusion::ClosedComponentsPositiveRecurrent,
            format!(
                "{}: every state in a closed irreducible component is positive recurrent and the expected entry time into those components is finite, for any choice of rate constants (holding: {names})",
                holding[0]
            ),
        )
    } else {
        (
            Conclusion::Inconclusive,
            "no structural criterion applies".to_string(),
        )
    };
    let conjecture_note = (holding.is_empty() && is_weakly_reversible(net)).then(|| {
        "the network is weakly reversible; positive recurrence is conjectured for all weakly reversible networks (Positive Recurrence Conjecture) but not certified here".to_string()
    });
    Ok(Verdict {
        certificates,
        conclusion,
        summary,
        conjecture_note,
    })
}
