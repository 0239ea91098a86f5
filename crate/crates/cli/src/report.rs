//! JSON report types. Field order is fixed by declaration order, so equal
//! inputs give byte-identical output.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crn_core::drift::{DriftReport, DriftVerdict, LyapunovKind};
use crn_core::graph::{
    classify_complex, is_binary, is_double_full, is_weakly_reversible, linkage_classes, missing_flows,
};
use crn_core::sim::{TimeEstimate, TruncatedClassDecomposition};
use crn_core::theorems::{Certificate, Conclusion, TheoremId, Verdict, Witness};
use crn_core::tiers::{FamilySearch, MonomialSequence, TierReport};
use crn_core::{ReactionNetwork, State};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct ComplexEntry {
    pub complex: String,
    pub kind: String,
}

#[derive(Serialize)]
pub struct ClassEntry {
    pub complexes: Vec<String>,
    pub weakly_reversible: bool,
}

#[derive(Serialize)]
pub struct NetworkSummary {
    pub species: Vec<String>,
    pub complexes: Vec<ComplexEntry>,
    pub reactions: Vec<String>,
    pub linkage_classes: Vec<ClassEntry>,
    pub binary: bool,
    pub double_full: bool,
    pub weakly_reversible: bool,
    pub all_flows: bool,
}

impl NetworkSummary {
    pub fn new(net: &ReactionNetwork) -> Self {
        let name = |c: usize| net.display_complex(&net.complexes()[c]);
        let (mi, mo) = missing_flows(net);
        NetworkSummary {
            species: net.species().to_vec(),
            complexes: net
                .complexes()
                .iter()
                .map(|c| ComplexEntry {
                    complex: net.display_complex(c),
                    kind: match classify_complex(c) {
                        Ok(k) => format!("{k:?}").to_lowercase(),
                        Err(_) => "higher".to_string(),
                    },
                })
                .collect(),
            reactions: (0..net.reactions().len())
                .map(|r| format!("{} @ {}", net.display_reaction(r), net.reactions()[r].rate))
                .collect(),
            linkage_classes: linkage_classes(net)
                .iter()
                .map(|c| ClassEntry {
                    complexes: c.complexes.iter().map(|&i| name(i)).collect(),
                    weakly_reversible: c.weakly_reversible,
                })
                .collect(),
            binary: is_binary(net),
            double_full: is_double_full(net),
            weakly_reversible: is_weakly_reversible(net),
            all_flows: mi.is_empty() && mo.is_empty(),
        }
    }
}

#[derive(Serialize)]
pub struct CertificateEntry {
    pub theorem: TheoremId,
    pub holds: bool,
    pub description: String,
    pub failure_reason: Option<String>,
    pub witness: Option<Witness>,
}

impl CertificateEntry {
    pub fn new(c: &Certificate, net: &ReactionNetwork) -> Self {
        CertificateEntry {
            theorem: c.theorem,
            holds: c.holds,
            description: c.describe(net),
            failure_reason: c.failure_reason.clone(),
            witness: c.witness.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictEntry {
    pub conclusion: Conclusion,
    pub summary: String,
    pub conjecture_note: Option<String>,
}

#[derive(Serialize)]
pub struct TierEntry {
    pub sequence: String,
    pub d_tiers: Vec<Vec<String>>,
    pub d_degrees: Vec<String>,
    pub s_tiers: Vec<Vec<String>>,
    pub s_infinity: Vec<String>,
    pub descending_reactions: Vec<String>,
    pub descending_sources: Vec<String>,
    pub thm32_holds: bool,
    pub cor33_holds: bool,
}

impl TierEntry {
    pub fn new(net: &ReactionNetwork, seq: &MonomialSequence, rep: &TierReport) -> Self {
        let names = |v: &[usize]| -> Vec<String> {
            v.iter().map(|&c| net.display_complex(&net.complexes()[c])).collect()
        };
        TierEntry {
            sequence: seq.describe(net),
            d_tiers: rep.d_tiers.iter().map(|t| names(t)).collect(),
            d_degrees: rep.d_degrees.iter().map(|d| d.to_string()).collect(),
            s_tiers: rep.s_tiers.iter().map(|t| names(t)).collect(),
            s_infinity: names(&rep.s_infinity),
            descending_reactions: rep.descending.iter().map(|&r| net.display_reaction(r)).collect(),
            descending_sources: names(&rep.descending_sources),
            thm32_holds: rep.thm32_holds,
            cor33_holds: rep.cor33_holds,
        }
    }
}

#[derive(Serialize)]
pub struct TierSearchEntry {
    pub family: Vec<String>,
    pub sequences_tested: usize,
    pub distinct_partitions: usize,
    /// Family-relative: absence is not a proof for all tier-sequences.
    pub counterexample: Option<TierEntry>,
}

impl TierSearchEntry {
    pub fn new(net: &ReactionNetwork, family: Vec<String>, found: &FamilySearch) -> Self {
        TierSearchEntry {
            family,
            sequences_tested: found.sequences_tested,
            distinct_partitions: found.distinct_partitions,
            counterexample: found
                .counterexample
                .as_ref()
                .map(|c| TierEntry::new(net, &c.sequence, &c.report)),
        }
    }
}

#[derive(Serialize)]
pub struct ShellEntry {
    pub radius: u64,
    pub max: f64,
    pub argmax: State,
}

#[derive(Serialize)]
pub struct DriftEntry {
    pub lyapunov: LyapunovKind,
    pub r_max: u64,
    pub confirmed: bool,
    pub violated_at: Option<State>,
    pub exception_set_bound: Option<u64>,
    pub shells: Vec<ShellEntry>,
}

impl From<&DriftReport> for DriftEntry {
    fn from(r: &DriftReport) -> Self {
        DriftEntry {
            lyapunov: r.lyapunov,
            r_max: r.r_max,
            confirmed: r.confirmed(),
            violated_at: match &r.verdict {
                DriftVerdict::DriftViolatedAt { state, .. } => Some(state.clone()),
                DriftVerdict::DriftConfirmedUpToRmax => None,
            },
            exception_set_bound: r.exception_set_bound,
            shells: r
                .shells
                .iter()
                .map(|s| ShellEntry {
                    radius: s.radius,
                    max: s.max,
                    argmax: s.argmax.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassesEntry {
    pub bounds: Vec<u64>,
    pub classes: usize,
    pub closed: usize,
    pub closed_without_caveat: usize,
    pub detail: Vec<ClassDetail>,
}

#[derive(Serialize)]
pub struct ClassDetail {
    pub size: usize,
    pub first_state: State,
    pub closed: bool,
    pub boundary_caveat: bool,
}

impl From<&TruncatedClassDecomposition> for ClassesEntry {
    fn from(d: &TruncatedClassDecomposition) -> Self {
        ClassesEntry {
            bounds: d.bounds.clone(),
            classes: d.classes.len(),
            closed: d.closed.iter().filter(|&&c| c).count(),
            closed_without_caveat: d.targets().len(),
            detail: (0..d.classes.len())
                .map(|i| ClassDetail {
                    size: d.classes[i].len(),
                    first_state: d.classes[i][0].clone(),
                    closed: d.closed[i],
                    boundary_caveat: d.boundary_caveat[i],
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SimulationEntry {
    pub rng: &'static str,
    pub seed: u64,
    pub x0: State,
    pub t_end: f64,
    pub jumps: usize,
    pub final_state: State,
    pub absorbed: bool,
    pub classes: ClassesEntry,
    pub entry_time: TimeEstimate,
    pub return_time: TimeEstimate,
}

#[derive(Serialize)]
pub struct InputEntry {
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub input: InputEntry,
    pub network: NetworkSummary,
    pub certificates: Vec<CertificateEntry>,
    pub verdict: VerdictEntry,
    pub tier_search: Option<TierSearchEntry>,
    pub drift: Option<DriftEntry>,
    pub simulation: Option<SimulationEntry>,
}

impl AnalysisReport {
    pub fn new(input: &[u8], net: &ReactionNetwork, verdict: &Verdict) -> Self {
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool: Tool::current(),
            input: InputEntry {
                sha256: sha256_hex(input),
                bytes: input.len(),
            },
            network: NetworkSummary::new(net),
            certificates: verdict.certificates.iter().map(|c| CertificateEntry::new(c, net)).collect(),
            verdict: VerdictEntry {
                conclusion: verdict.conclusion,
                summary: verdict.summary.clone(),
                conjecture_note: verdict.conjecture_note.clone(),
            },
            tier_search: None,
            drift: None,
            simulation: None,
        }
    }
}
