use std::collections::HashSet;

use super::{tier_partitions, GrowthLaw, MonomialSequence, TierError, TierReport};
use crate::network::ReactionNetwork;

/// Largest number of law assignments a search will enumerate.
pub const DEFAULT_FAMILY_BUDGET: u128 = 5_000_000;

/// A finite family of monomial sequences: every assignment of a law from
/// `palette` to each species, skipping assignments without a power law.
#[derive(Clone, Debug)]
pub struct SequenceFamily {
    pub palette: Vec<GrowthLaw>,
    pub budget: u128,
}

impl Default for SequenceFamily {
    /// `{0, c1, c2, n, n^2, n^4}`. Sums of at most two exponents drawn from
    /// `{1, 2, 4}` realise every order relation between binary complexes.
    fn default() -> Self {
        SequenceFamily {
            palette: vec![
                GrowthLaw::Zero,
                GrowthLaw::Const(1),
                GrowthLaw::Const(2),
                GrowthLaw::power(1, 1),
                GrowthLaw::power(1, 2),
                GrowthLaw::power(1, 4),
            ],
            budget: DEFAULT_FAMILY_BUDGET,
        }
    }
}

impl SequenceFamily {
    pub fn size(&self, num_species: usize) -> u128 {
        (self.palette.len() as u128).saturating_pow(num_species as u32)
    }

    /// Assignments in lexicographic order, species 0 most significant and
    /// laws in palette order.
    fn assignments(&self, d: usize) -> impl Iterator<Item = Vec<GrowthLaw>> + '_ {
        let k = self.palette.len();
        let mut digits = vec![0usize; d];
        let mut done = k == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let laws = digits.iter().map(|&i| self.palette[i].clone()).collect();
            // odometer increment, last species fastest
            done = true;
            for pos in (0..d).rev() {
                digits[pos] += 1;
                if digits[pos] < k {
                    done = false;
                    break;
                }
                digits[pos] = 0;
            }
            Some(laws)
        })
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub sequence: MonomialSequence,
    pub report: TierReport,
}

/// Outcome of a family search. `counterexample == None` only means the tier
/// condition held on every tested sequence.
#[derive(Clone, Debug)]
pub struct FamilySearch {
    pub counterexample: Option<Counterexample>,
    pub sequences_tested: usize,
    pub distinct_partitions: usize,
}

/// Finds the first sequence of the family, in enumeration order, along which
/// `T^{S,1} ∩ D_{x_n} = ∅`.
pub fn search_counterexample(net: &ReactionNetwork, family: &SequenceFamily) -> Result<FamilySearch, TierError> {
    let d = net.num_species();
    let size = family.size(d);
    if size > family.budget {
        return Err(TierError::FamilyTooLarge {
            size,
            budget: family.budget,
        });
    }
    let mut seen = HashSet::new();
    let mut tested = 0usize;
    for laws in family.assignments(d) {
        if !laws.iter().any(GrowthLaw::is_power) {
            continue;
        }
        let seq = MonomialSequence::new(laws)?;
        let report = tier_partitions(net, &seq)?;
        tested += 1;
        if !seen.insert(report.signature()) {
            continue;
        }
        if !report.thm32_holds {
            return Ok(FamilySearch {
                counterexample: Some(Counterexample {
                    sequence: seq,
                    report,
                }),
                sequences_tested: tested,
                distinct_partitions: seen.len(),
            });
        }
    }
    Ok(FamilySearch {
        counterexample: None,
        sequences_tested: tested,
        distinct_partitions: seen.len(),
    })
}
