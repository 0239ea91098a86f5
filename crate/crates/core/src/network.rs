//! Reaction networks, complexes and stochastic mass-action intensities.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index into a network's species table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpeciesId(pub usize);

impl SpeciesId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A complex as a sparse stoichiometric vector. Only strictly positive
/// coefficients are stored, so the empty map is the zero complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Complex {
    coeffs: BTreeMap<SpeciesId, u32>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    /// Single-species complex `k S`.
    pub fn species(id: SpeciesId, k: u32) -> Self {
        Complex::from_terms([(id, k)])
    }

    /// `2 S`.
    pub fn double(id: SpeciesId) -> Self {
        Complex::species(id, 2)
    }

    /// Builds a complex from `(species, coefficient)` terms. Repeated species
    /// are summed (saturating) and zero coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (SpeciesId, u32)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (id, k) in terms {
            if k == 0 {
                continue;
            }
            let e = coeffs.entry(id).or_insert(0u32);
            *e = e.saturating_add(k);
        }
        Complex { coeffs }
    }

    pub fn coefficient(&self, id: SpeciesId) -> u32 {
        self.coeffs.get(&id).copied().unwrap_or(0)
    }

    /// Non-zero terms in increasing species order.
    pub fn terms(&self) -> impl Iterator<Item = (SpeciesId, u32)> + '_ {
        self.coeffs.iter().map(|(&s, &k)| (s, k))
    }

    pub fn support(&self) -> impl Iterator<Item = SpeciesId> + '_ {
        self.coeffs.keys().copied()
    }

    /// Total stoichiometry `Σ y_i`.
    pub fn order(&self) -> u64 {
        self.coeffs.values().map(|&k| k as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_coefficient(&self) -> u32 {
        self.coeffs.values().copied().max().unwrap_or(0)
    }

    /// The single species of a unary complex `S`.
    pub fn as_unary(&self) -> Option<SpeciesId> {
        match self.coeffs.iter().next() {
            Some((&s, &1)) if self.coeffs.len() == 1 => Some(s),
            _ => None,
        }
    }

    /// The species `S` when this complex is `2S`.
    pub fn as_double(&self) -> Option<SpeciesId> {
        match self.coeffs.iter().next() {
            Some((&s, &2)) if self.coeffs.len() == 1 => Some(s),
            _ => None,
        }
    }

    /// Renders the complex with the given species names, `0` for the zero complex.
    pub fn display<'a>(&'a self, names: &'a [String]) -> ComplexDisplay<'a> {
        ComplexDisplay { complex: self, names }
    }
}

pub struct ComplexDisplay<'a> {
    complex: &'a Complex,
    names: &'a [String],
}

impl fmt::Display for ComplexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complex.is_zero() {
            return f.write_str("0");
        }
        for (n, (s, k)) in self.complex.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let name = self.names.get(s.0).map(String::as_str).unwrap_or("?");
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{k}{name}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("rate constant must be finite and positive, got {0}")]
    InvalidRate(f64),
    #[error("reaction source and product are the same complex")]
    SelfLoop,
    #[error("duplicate reaction {0}")]
    DuplicateReaction(String),
    #[error("species index {0} out of range")]
    UnknownSpecies(usize),
    #[error("invalid species name {0:?}")]
    InvalidSpeciesName(String),
    #[error("species name {0:?} declared twice")]
    DuplicateSpecies(String),
    #[error("per-species rate list has {got} entries, expected {expected}")]
    RateCount { expected: usize, got: usize },
}

/// A reaction `y -> y'` with mass-action rate constant `κ > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reaction {
    pub source: Complex,
    pub product: Complex,
    pub rate: f64,
}

impl Reaction {
    pub fn new(source: Complex, product: Complex, rate: f64) -> Result<Self, NetworkError> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(NetworkError::InvalidRate(rate));
        }
        if source == product {
            return Err(NetworkError::SelfLoop);
        }
        Ok(Reaction {
            source,
            product,
            rate,
        })
    }

    /// `S -> 0`.
    pub fn out_flow_species(&self) -> Option<SpeciesId> {
        if self.product.is_zero() {
            self.source.as_unary()
        } else {
            None
        }
    }

    /// `0 -> S`.
    pub fn in_flow_species(&self) -> Option<SpeciesId> {
        if self.source.is_zero() {
            self.product.as_unary()
        } else {
            None
        }
    }

    pub fn is_flow(&self) -> bool {
        self.out_flow_species().is_some() || self.in_flow_species().is_some()
    }

    /// Net change `y' - y` as a dense vector over `d` species.
    pub fn delta(&self, d: usize) -> Vec<i64> {
        let mut v = vec![0i64; d];
        for (s, k) in self.source.terms() {
            v[s.0] -= k as i64;
        }
        for (s, k) in self.product.terms() {
            v[s.0] += k as i64;
        }
        v
    }
}

/// The triple (species, complexes, reactions). Complexes are derived from the
/// reactions and kept in first-appearance order (source before product).
#[derive(Clone, Debug, PartialEq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    reactions: Vec<Reaction>,
    complexes: Vec<Complex>,
    source_index: Vec<usize>,
    product_index: Vec<usize>,
}

pub(crate) fn valid_species_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl ReactionNetwork {
    pub fn new(species: Vec<String>, reactions: Vec<Reaction>) -> Result<Self, NetworkError> {
        let mut seen = HashSet::new();
        for name in &species {
            if !valid_species_name(name) {
                return Err(NetworkError::InvalidSpeciesName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(NetworkError::DuplicateSpecies(name.clone()));
            }
        }
        let d = species.len();
        let mut complexes: Vec<Complex> = Vec::new();
        let mut lookup: HashMap<Complex, usize> = HashMap::new();
        let mut pairs = HashSet::new();
        let mut source_index = Vec::with_capacity(reactions.len());
        let mut product_index = Vec::with_capacity(reactions.len());
        for r in &reactions {
            if !(r.rate.is_finite() && r.rate > 0.0) {
                return Err(NetworkError::InvalidRate(r.rate));
            }
            if r.source == r.product {
                return Err(NetworkError::SelfLoop);
            }
            for s in r.source.support().chain(r.product.support()) {
                if s.0 >= d {
                    return Err(NetworkError::UnknownSpecies(s.0));
                }
            }
            let mut intern = |c: &Complex| -> usize {
                *lookup.entry(c.clone()).or_insert_with(|| {
                    complexes.push(c.clone());
                    complexes.len() - 1
                })
            };
            let si = intern(&r.source);
            let pi = intern(&r.product);
            if !pairs.insert((si, pi)) {
                return Err(NetworkError::DuplicateReaction(format!(
                    "{} -> {}",
                    r.source.display(&species),
                    r.product.display(&species)
                )));
            }
            source_index.push(si);
            product_index.push(pi);
        }
        Ok(ReactionNetwork {
            species,
            reactions,
            complexes,
            source_index,
            product_index,
        })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn species_id(&self, name: &str) -> Option<SpeciesId> {
        self.species.iter().position(|s| s == name).map(SpeciesId)
    }

    pub fn species_name(&self, id: SpeciesId) -> &str {
        &self.species[id.0]
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn complex_index(&self, c: &Complex) -> Option<usize> {
        self.complexes.iter().position(|x| x == c)
    }

    /// Complex index of the source of reaction `r`.
    pub fn source_of(&self, r: usize) -> usize {
        self.source_index[r]
    }

    /// Complex index of the product of reaction `r`.
    pub fn product_of(&self, r: usize) -> usize {
        self.product_index[r]
    }

    pub fn display_complex(&self, c: &Complex) -> String {
        c.display(&self.species).to_string()
    }

    pub fn display_reaction(&self, r: usize) -> String {
        let rx = &self.reactions[r];
        format!(
            "{} -> {}",
            rx.source.display(&self.species),
            rx.product.display(&self.species)
        )
    }

    /// Same species table and the same set of reactions (order ignored).
    pub fn same_network(&self, other: &ReactionNetwork) -> bool {
        if self.species != other.species || self.reactions.len() != other.reactions.len() {
            return false;
        }
        let key = |r: &Reaction| (r.source.clone(), r.product.clone(), r.rate.to_bits());
        let mut a: Vec<_> = self.reactions.iter().map(key).collect();
        let mut b: Vec<_> = other.reactions.iter().map(key).collect();
        a.sort();
        b.sort();
        a == b
    }

    /// Adds every missing in-flow `0 -> S` and out-flow `S -> 0`. Flows
    /// already present keep their rate.
    pub fn augment_flows(&self, rates_in: &[f64], rates_out: &[f64]) -> Result<Self, NetworkError> {
        let d = self.num_species();
        for rates in [rates_in, rates_out] {
            if rates.len() != d {
                return Err(NetworkError::RateCount {
                    expected: d,
                    got: rates.len(),
                });
            }
            if let Some(&bad) = rates.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
                return Err(NetworkError::InvalidRate(bad));
            }
        }
        let mut reactions = self.reactions.clone();
        let mut has_in = vec![false; d];
        let mut has_out = vec![false; d];
        for r in &self.reactions {
            if let Some(s) = r.in_flow_species() {
                has_in[s.0] = true;
            }
            if let Some(s) = r.out_flow_species() {
                has_out[s.0] = true;
            }
        }
        for i in 0..d {
            let s = Complex::species(SpeciesId(i), 1);
            if !has_in[i] {
                reactions.push(Reaction::new(Complex::zero(), s.clone(), rates_in[i])?);
            }
            if !has_out[i] {
                reactions.push(Reaction::new(s, Complex::zero(), rates_out[i])?);
            }
        }
        ReactionNetwork::new(self.species.clone(), reactions)
    }

    /// A network on the same species table keeping only the reactions for
    /// which `keep` returns true.
    pub fn filter_reactions<F: FnMut(&Reaction) -> bool>(&self, mut keep: F) -> Self {
        let reactions = self.reactions.iter().filter(|r| keep(r)).cloned().collect();
        ReactionNetwork::new(self.species.clone(), reactions)
            .expect("subset of a valid reaction list is valid")
    }
}

/// Species counts `x ∈ Z^d_{≥0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct State(pub Vec<u64>);

impl State {
    pub fn zeros(d: usize) -> Self {
        State(vec![0; d])
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `x + delta`, or `None` if a coordinate would go negative or overflow.
    pub fn shifted(&self, delta: &[i64]) -> Option<State> {
        let mut out = self.0.clone();
        for (x, &d) in out.iter_mut().zip(delta) {
            *x = x.checked_add_signed(d)?;
        }
        Some(State(out))
    }
}

impl From<Vec<u64>> for State {
    fn from(v: Vec<u64>) -> Self {
        State(v)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `λ_y(x) = ∏ x_i (x_i - 1) ⋯ (x_i - y_i + 1)`, zero when some `x_i < y_i`.
/// Saturates at `u128::MAX`.
pub fn complex_intensity(y: &Complex, x: &[u64]) -> u128 {
    let mut acc: u128 = 1;
    for (s, k) in y.terms() {
        let xi = x.get(s.0).copied().unwrap_or(0);
        if xi < k as u64 {
            return 0;
        }
        for j in 0..k as u64 {
            acc = acc.saturating_mul((xi - j) as u128);
        }
    }
    acc
}

/// Floating-point `λ_y(x)`, used where counts are large.
pub fn complex_intensity_f64(y: &Complex, x: &[u64]) -> f64 {
    let mut acc = 1.0f64;
    for (s, k) in y.terms() {
        let xi = x.get(s.0).copied().unwrap_or(0);
        if xi < k as u64 {
            return 0.0;
        }
        for j in 0..k as u64 {
            acc *= (xi - j) as f64;
        }
    }
    acc
}

/// Stochastic mass-action intensity `κ λ_y(x)`.
pub fn reaction_intensity(r: &Reaction, x: &[u64]) -> f64 {
    r.rate * complex_intensity_f64(&r.source, x)
}
