//! D-type and S-type tier partitions of the complexes along monomial state
//! sequences, descending reactions, and the tier conditions that imply
//! positive recurrence.
//!
//! Along a sequence the size of `(x_n ∨ 1)^y` is governed by an exact
//! rational degree `Σ y_i e_i` over the power-law coordinates, so tiers are
//! groups of equal degree ordered by decreasing degree. A complex lands in
//! `T^{S,∞}` exactly when it needs more copies of a species than the
//! sequence ever holds (a zero coordinate, or a constant one that is too
//! small); the remaining complexes keep their D-type order.

mod search;
mod sequence;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::network::{Complex, ReactionNetwork};

pub use search::{search_counterexample, Counterexample, FamilySearch, SequenceFamily};
pub use sequence::{parse_law, parse_sequence_spec, GrowthLaw, MonomialSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TierError {
    #[error("sequence has no growing (power-law) coordinate")]
    InvalidTierSequence,
    #[error("invalid growth law: {0}")]
    InvalidLaw(String),
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("unknown species {0:?} in sequence spec")]
    UnknownSpecies(String),
    #[error("sequence spec has no law for species {0:?}")]
    MissingSpecies(String),
    #[error("sequence has {got} coordinates but the network has {expected} species")]
    Dimension { expected: usize, got: usize },
    #[error("sequence family has {size} members, over the budget of {budget}")]
    FamilyTooLarge { size: u128, budget: u128 },
}

/// Leading behaviour of `(x_n ∨ 1)^y ~ coefficient · n^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDegree {
    pub degree: BigRational,
    pub coefficient: BigRational,
}

pub fn d_degree(y: &Complex, seq: &MonomialSequence) -> DDegree {
    let mut degree = BigRational::zero();
    let mut coefficient = BigRational::one();
    for (s, k) in y.terms() {
        match &seq.laws()[s.0] {
            GrowthLaw::Zero => {}
            GrowthLaw::Const(v) => {
                coefficient *= BigRational::from_integer((*v).into()).pow(k as i32);
            }
            GrowthLaw::Power { coef, exp } => {
                degree += exp * BigRational::from_integer(k.into());
                coefficient *= coef.pow(k as i32);
            }
        }
    }
    DDegree {
        degree,
        coefficient,
    }
}

/// `λ_y(x_n) = 0` for every `n` on the tail.
pub fn in_s_infinity(y: &Complex, seq: &MonomialSequence) -> bool {
    y.terms().any(|(s, k)| match &seq.laws()[s.0] {
        GrowthLaw::Zero => true,
        GrowthLaw::Const(v) => k as u64 > *v,
        GrowthLaw::Power { .. } => false,
    })
}

/// Tier structure of a network along one sequence. Complex indices refer
/// to `net.complexes()`, reaction indices to `net.reactions()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TierReport {
    /// `T^{D,1}, T^{D,2}, …`, highest first.
    pub d_tiers: Vec<Vec<usize>>,
    /// Degree shared by the complexes of each D-tier.
    pub d_degrees: Vec<BigRational>,
    /// `T^{S,1}, …, T^{S,P}`.
    pub s_tiers: Vec<Vec<usize>>,
    pub s_infinity: Vec<usize>,
    pub descending: Vec<usize>,
    /// `D_{x_n}`, sources of the descending reactions.
    pub descending_sources: Vec<usize>,
    /// `T^{S,1} ∩ D_{x_n} ≠ ∅`.
    pub thm32_holds: bool,
    /// `D_{x_n} ≠ ∅` and `T^{D,1} = T^{S,1}`.
    pub cor33_holds: bool,
}

impl TierReport {
    pub fn top_d_tier(&self) -> &[usize] {
        self.d_tiers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn top_s_tier(&self) -> &[usize] {
        self.s_tiers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Index of the D-tier holding complex `c`.
    pub fn d_tier_of(&self, c: usize) -> Option<usize> {
        self.d_tiers.iter().position(|t| t.contains(&c))
    }

    /// Identity of the partition, used to deduplicate sequence families.
    pub fn signature(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        (self.d_tiers.clone(), self.s_infinity.clone())
    }
}

pub fn tier_partitions(net: &ReactionNetwork, seq: &MonomialSequence) -> Result<TierReport, TierError> {
    if seq.laws().len() != net.num_species() {
        return Err(TierError::Dimension {
            expected: net.num_species(),
            got: seq.laws().len(),
        });
    }
    let degrees: Vec<BigRational> = net
        .complexes()
        .iter()
        .map(|y| d_degree(y, seq).degree)
        .collect();
    let mut distinct: Vec<&BigRational> = degrees.iter().collect();
    distinct.sort_by(|a, b| b.cmp(a));
    distinct.dedup();

    let d_tiers: Vec<Vec<usize>> = distinct
        .iter()
        .map(|&deg| (0..degrees.len()).filter(|&c| &degrees[c] == deg).collect())
        .collect();
    let d_degrees: Vec<BigRational> = distinct.into_iter().cloned().collect();

    let s_infinity: Vec<usize> = (0..net.complexes().len())
        .filter(|&c| in_s_infinity(&net.complexes()[c], seq))
        .collect();
    let s_tiers: Vec<Vec<usize>> = d_tiers
        .iter()
        .map(|tier| {
            tier.iter()
                .copied()
                .filter(|c| s_infinity.binary_search(c).is_err())
                .collect::<Vec<_>>()
        })
        .filter(|t| !t.is_empty())
        .collect();

    let top: &[usize] = d_tiers.first().map(Vec::as_slice).unwrap_or(&[]);
    let descending: Vec<usize> = (0..net.reactions().len())
        .filter(|&r| top.contains(&net.source_of(r)) && !top.contains(&net.product_of(r)))
        .collect();
    let descending_sources: Vec<usize> = descending
        .iter()
        .map(|&r| net.source_of(r))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let s_top: &[usize] = s_tiers.first().map(Vec::as_slice).unwrap_or(&[]);
    let thm32_holds = descending_sources.iter().any(|c| s_top.contains(c));
    let cor33_holds = !descending_sources.is_empty() && top == s_top;

    Ok(TierReport {
        d_tiers,
        d_degrees,
        s_tiers,
        s_infinity,
        descending,
        descending_sources,
        thm32_holds,
        cor33_holds,
    })
}

/// Reactions whose source lies in the top D-tier and whose product does not.
pub fn descending_reactions(net: &ReactionNetwork, seq: &MonomialSequence) -> Result<Vec<usize>, TierError> {
    Ok(tier_partitions(net, seq)?.descending)
}
