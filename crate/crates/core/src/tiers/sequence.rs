use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::TierError;
use crate::network::ReactionNetwork;

/// Asymptotic behaviour of one coordinate of a state sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GrowthLaw {
    /// `x_{n,i} = 0` for every `n`.
    Zero,
    /// `x_{n,i} = v` with `v ≥ 1`.
    Const(u64),
    /// `x_{n,i} = ⌊c n^e⌋` with `c, e > 0`.
    Power { coef: BigRational, exp: BigRational },
}

impl GrowthLaw {
    /// `⌊c n^e⌋` with integer `c` and `e`.
    pub fn power(coef: i64, exp: i64) -> Self {
        GrowthLaw::Power {
            coef: BigRational::from_integer(coef.into()),
            exp: BigRational::from_integer(exp.into()),
        }
    }

    pub fn power_ratio(coef: (i64, i64), exp: (i64, i64)) -> Self {
        GrowthLaw::Power {
            coef: BigRational::new(coef.0.into(), coef.1.into()),
            exp: BigRational::new(exp.0.into(), exp.1.into()),
        }
    }

    pub fn is_power(&self) -> bool {
        matches!(self, GrowthLaw::Power { .. })
    }

    fn validate(&self) -> Result<(), TierError> {
        match self {
            GrowthLaw::Zero => Ok(()),
            GrowthLaw::Const(0) => Err(TierError::InvalidLaw("constant must be ≥ 1".into())),
            GrowthLaw::Const(_) => Ok(()),
            GrowthLaw::Power { coef, exp } => {
                if !coef.is_positive() || !exp.is_positive() {
                    Err(TierError::InvalidLaw(format!(
                        "power law needs positive coefficient and exponent, got {self}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Real value of the coordinate at step `n` (floored for power laws).
    pub fn value_at(&self, n: u64) -> f64 {
        match self {
            GrowthLaw::Zero => 0.0,
            GrowthLaw::Const(v) => *v as f64,
            GrowthLaw::Power { coef, exp } => {
                let c = coef.to_f64().unwrap_or(f64::INFINITY);
                let raw = if exp.is_integer() {
                    c * (n as f64).powi(exp.to_integer().to_i32().unwrap_or(i32::MAX))
                } else {
                    c * (n as f64).powf(exp.to_f64().unwrap_or(f64::INFINITY))
                };
                // snap values that are integral up to rounding before flooring
                let r = raw.round();
                if (raw - r).abs() <= 1e-9 * raw.abs().max(1.0) {
                    r
                } else {
                    raw.floor()
                }
            }
        }
    }
}

impl fmt::Display for GrowthLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthLaw::Zero => f.write_str("0"),
            GrowthLaw::Const(v) => write!(f, "c{v}"),
            GrowthLaw::Power { coef, exp } => {
                f.write_str("n")?;
                if !exp.is_one() {
                    write!(f, "^{exp}")?;
                }
                if !coef.is_one() {
                    write!(f, "*{coef}")?;
                }
                Ok(())
            }
        }
    }
}

/// A state sequence `x_n` given coordinate-wise by growth laws, considered on
/// its tail `n ≥ tail_start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialSequence {
    laws: Vec<GrowthLaw>,
    tail_start: u64,
}

impl MonomialSequence {
    /// Requires at least one power law; `tail_start` is the first `n` from
    /// which every power coordinate is at least 2.
    pub fn new(laws: Vec<GrowthLaw>) -> Result<Self, TierError> {
        for law in &laws {
            law.validate()?;
        }
        if !laws.iter().any(GrowthLaw::is_power) {
            return Err(TierError::InvalidTierSequence);
        }
        let mut seq = MonomialSequence {
            laws,
            tail_start: 1,
        };
        seq.tail_start = seq.tail_start_for(2);
        Ok(seq)
    }

    pub fn laws(&self) -> &[GrowthLaw] {
        &self.laws
    }

    pub fn tail_start(&self) -> u64 {
        self.tail_start
    }

    /// Smallest `N` with `⌊c n^e⌋ ≥ min_value` for all `n ≥ N` and every
    /// power coordinate.
    pub fn tail_start_for(&self, min_value: u64) -> u64 {
        let target = min_value as f64;
        let mut start = 1u64;
        for law in &self.laws {
            let GrowthLaw::Power { coef, exp } = law else {
                continue;
            };
            let c = coef.to_f64().unwrap_or(1.0);
            let e = exp.to_f64().unwrap_or(1.0);
            let mut n = (target / c).powf(1.0 / e).ceil().max(1.0) as u64;
            while n > 1 && law.value_at(n - 1) >= target {
                n -= 1;
            }
            while law.value_at(n) < target {
                n += 1;
            }
            start = start.max(n);
        }
        start
    }

    /// `x_n` as real coordinates.
    pub fn point(&self, n: u64) -> Vec<f64> {
        self.laws.iter().map(|l| l.value_at(n)).collect()
    }

    /// `x_n` on the integer lattice, when every coordinate fits in `u64`.
    pub fn lattice_point(&self, n: u64) -> Option<Vec<u64>> {
        self.point(n)
            .into_iter()
            .map(|v| (v < 1.8e19).then_some(v as u64))
            .collect()
    }

    /// Renders as `A=n^2, B=0, C=n`.
    pub fn describe(&self, net: &ReactionNetwork) -> String {
        net.species()
            .iter()
            .zip(&self.laws)
            .map(|(name, law)| format!("{name}={law}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if !whole.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (whole.is_empty() && frac.is_empty())
            || frac.len() > 18
        {
            return None;
        }
        let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
        let scale = BigInt::from(10u64.pow(frac.len() as u32));
        return Some(BigRational::new(digits, scale));
    }
    if !t.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(BigRational::from_integer(t.parse().ok()?))
}

/// Parses one law: `0`, `cV` / `c=V`, or `n`, `n^E`, `n^E*C`, `C*n^E`.
pub fn parse_law(text: &str) -> Result<GrowthLaw, TierError> {
    let t = text.trim();
    let bad = || TierError::InvalidSpec(format!("cannot parse growth law {t:?}"));
    if t == "0" {
        return Ok(GrowthLaw::Zero);
    }
    if let Some(rest) = t.strip_prefix('c') {
        let v = rest.trim().trim_start_matches('=').trim();
        let v: u64 = v.parse().map_err(|_| bad())?;
        let law = GrowthLaw::Const(v);
        law.validate()?;
        return Ok(law);
    }
    let mut coef = BigRational::one();
    let mut body = t;
    if let Some((pre, post)) = t.split_once('*') {
        if post.trim_start().starts_with('n') {
            coef = parse_rational(pre).ok_or_else(bad)?;
            body = post.trim();
        }
    }
    let rest = body.strip_prefix('n').ok_or_else(bad)?.trim();
    let (exp_text, coef_text) = match rest.split_once('*') {
        Some((e, c)) => (e, Some(c)),
        None => (rest, None),
    };
    let exp = match exp_text.trim() {
        "" => BigRational::one(),
        e => parse_rational(e.strip_prefix('^').ok_or_else(bad)?).ok_or_else(bad)?,
    };
    if let Some(c) = coef_text {
        coef *= parse_rational(c).ok_or_else(bad)?;
    }
    let law = GrowthLaw::Power { coef, exp };
    law.validate()?;
    Ok(law)
}

/// Parses `"A=n^2, B=0, C=n"`; every species of `net` must appear exactly once.
pub fn parse_sequence_spec(text: &str, net: &ReactionNetwork) -> Result<MonomialSequence, TierError> {
    let mut laws: Vec<Option<GrowthLaw>> = vec![None; net.num_species()];
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (name, law) = item
            .split_once('=')
            .ok_or_else(|| TierError::InvalidSpec(format!("expected NAME=LAW, got {item:?}")))?;
        let name = name.trim();
        let id = net
            .species_id(name)
            .ok_or_else(|| TierError::UnknownSpecies(name.to_string()))?;
        if laws[id.0].is_some() {
            return Err(TierError::InvalidSpec(format!("species {name} given twice")));
        }
        laws[id.0] = Some(parse_law(law)?);
    }
    let laws = laws
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| TierError::MissingSpecies(net.species()[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    MonomialSequence::new(laws)
}
