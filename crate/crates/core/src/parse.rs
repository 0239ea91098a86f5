//! Line-oriented text format for reaction networks.
//!
//! ```text
//! # substrate-enzyme kinetics
//! S + E <-> SE @ 1.0, 2.0
//! SE -> E + P @ 3.0
//! 0 -> A @ 1       # zero complex, also written ∅
//! ```
//!
//! Each line holds one reaction: `complex ("->" | "<->") complex "@" rate ("," rate)?`.
//! A reversible arrow takes a forward and a backward rate and expands to two
//! reactions. Species are declared by first use.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::network::{valid_species_name, Complex, NetworkError, Reaction, ReactionNetwork, SpeciesId, State};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("rate must be a finite positive number, got {0:?}")]
    BadRate(String),
    #[error("stoichiometric coefficient {0:?} out of range")]
    CoefficientOverflow(String),
    #[error("duplicate reaction {0}")]
    DuplicateReaction(String),
    #[error("reaction has identical source and product")]
    SelfLoop,
    #[error("network has no reactions")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

struct LineCtx<'a> {
    line: usize,
    text: &'a str,
}

impl LineCtx<'_> {
    /// 1-based character column of byte offset `at`.
    fn column(&self, at: usize) -> usize {
        self.text[..at.min(self.text.len())].chars().count() + 1
    }

    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column(at),
            kind,
        }
    }

    fn syntax(&self, at: usize, msg: impl Into<String>) -> ParseError {
        self.err(at, ParseErrorKind::Syntax(msg.into()))
    }
}

#[derive(Default)]
struct SpeciesTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl SpeciesTable {
    fn intern(&mut self, name: &str) -> SpeciesId {
        if let Some(&i) = self.index.get(name) {
            return SpeciesId(i);
        }
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), self.names.len() - 1);
        SpeciesId(self.names.len() - 1)
    }
}

/// Parses a network from the text format.
pub fn parse_network(text: &str) -> Result<ReactionNetwork, ParseError> {
    let mut table = SpeciesTable::default();
    let mut reactions = Vec::new();
    // (source, product) -> line, for duplicate reporting
    let mut seen: HashMap<(Complex, Complex), usize> = HashMap::new();
    let mut last_line = 1;

    for (lineno, raw) in text.lines().enumerate() {
        let ctx = LineCtx {
            line: lineno + 1,
            text: raw,
        };
        last_line = lineno + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let parsed = parse_line(&ctx, body, &mut table)?;
        for (source, product, rate, at) in parsed {
            if source == product {
                return Err(ctx.err(at, ParseErrorKind::SelfLoop));
            }
            let key = (source.clone(), product.clone());
            if seen.insert(key, ctx.line).is_some() {
                let shown = format!(
                    "{} -> {}",
                    source.display(&table.names),
                    product.display(&table.names)
                );
                return Err(ctx.err(at, ParseErrorKind::DuplicateReaction(shown)));
            }
            reactions.push(Reaction {
                source,
                product,
                rate,
            });
        }
    }
    if reactions.is_empty() {
        return Err(ParseError {
            line: last_line,
            column: 1,
            kind: ParseErrorKind::Empty,
        });
    }
    ReactionNetwork::new(table.names, reactions).map_err(|e| ParseError {
        line: 1,
        column: 1,
        kind: match e {
            NetworkError::DuplicateReaction(s) => ParseErrorKind::DuplicateReaction(s),
            NetworkError::SelfLoop => ParseErrorKind::SelfLoop,
            other => ParseErrorKind::Syntax(other.to_string()),
        },
    })
}

type ParsedReaction = (Complex, Complex, f64, usize);

fn parse_line(
    ctx: &LineCtx<'_>,
    body: &str,
    table: &mut SpeciesTable,
) -> Result<Vec<ParsedReaction>, ParseError> {
    let at = body
        .find('@')
        .ok_or_else(|| ctx.syntax(body.trim_end().len(), "expected '@' followed by rate(s)"))?;
    let (lhs, rates_text) = (&body[..at], &body[at + 1..]);

    let (arrow_at, arrow_len, reversible) = find_arrow(ctx, lhs)?;
    let source_text = &lhs[..arrow_at];
    let product_text = &lhs[arrow_at + arrow_len..];
    let source = parse_complex(ctx, source_text, 0, table)?;
    let product = parse_complex(ctx, product_text, arrow_at + arrow_len, table)?;

    let rates = parse_rates(ctx, rates_text, at + 1)?;
    let expected = if reversible { 2 } else { 1 };
    if rates.len() != expected {
        return Err(ctx.syntax(
            at,
            format!(
                "'{}' takes {} rate(s), found {}",
                if reversible { "<->" } else { "->" },
                expected,
                rates.len()
            ),
        ));
    }
    let mut out = vec![(source.clone(), product.clone(), rates[0], arrow_at)];
    if reversible {
        out.push((product, source, rates[1], arrow_at));
    }
    Ok(out)
}

fn find_arrow(ctx: &LineCtx<'_>, lhs: &str) -> Result<(usize, usize, bool), ParseError> {
    let mut found = None;
    let mut chars = lhs.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let (len, rev) = if lhs[i..].starts_with("<->") {
            (3, true)
        } else if lhs[i..].starts_with("->") {
            (2, false)
        } else if c == '<' || c == '-' {
            return Err(ctx.syntax(i, format!("unexpected '{c}'")));
        } else {
            continue;
        };
        if found.is_some() {
            return Err(ctx.syntax(i, "more than one arrow on a line"));
        }
        found = Some((i, len, rev));
        for _ in 1..len {
            chars.next();
        }
    }
    found.ok_or_else(|| ctx.syntax(0, "expected '->' or '<->'"))
}

fn parse_complex(
    ctx: &LineCtx<'_>,
    text: &str,
    offset: usize,
    table: &mut SpeciesTable,
) -> Result<Complex, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ctx.syntax(offset + text.len(), "expected a complex"));
    }
    if trimmed == "0" || trimmed == "∅" {
        return Ok(Complex::zero());
    }
    let mut terms: Vec<(SpeciesId, u32)> = Vec::new();
    let mut start = 0;
    for piece in text.split('+') {
        let piece_at = offset + start;
        start += piece.len() + 1;
        let lead = piece.len() - piece.trim_start().len();
        let term = piece.trim();
        let term_at = piece_at + lead;
        if term.is_empty() {
            return Err(ctx.syntax(term_at, "expected a term"));
        }
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (coef_text, rest) = term.split_at(digits);
        let coef = if coef_text.is_empty() {
            1
        } else {
            match coef_text.parse::<u32>() {
                Ok(0) => {
                    return Err(ctx.syntax(term_at, "zero stoichiometric coefficient"));
                }
                Ok(k) => k,
                Err(_) => {
                    return Err(ctx.err(
                        term_at,
                        ParseErrorKind::CoefficientOverflow(coef_text.to_string()),
                    ))
                }
            }
        };
        let name_lead = rest.len() - rest.trim_start().len();
        let name = rest.trim_start();
        let name_at = term_at + digits + name_lead;
        if name.is_empty() {
            if term == "0" || term == "∅" {
                return Err(ctx.syntax(term_at, "zero complex cannot appear in a sum"));
            }
            return Err(ctx.syntax(name_at, "expected a species name"));
        }
        if !valid_species_name(name) {
            return Err(ctx.syntax(name_at, format!("invalid species name {name:?}")));
        }
        terms.push((table.intern(name), coef));
    }
    // repeated species are summed; guard overflow explicitly
    let mut totals: HashMap<SpeciesId, u64> = HashMap::new();
    for &(s, k) in &terms {
        let t = totals.entry(s).or_insert(0);
        *t += k as u64;
        if *t > u32::MAX as u64 {
            return Err(ctx.err(
                offset,
                ParseErrorKind::CoefficientOverflow(t.to_string()),
            ));
        }
    }
    Ok(Complex::from_terms(terms))
}

fn parse_rates(ctx: &LineCtx<'_>, text: &str, offset: usize) -> Result<Vec<f64>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let at = offset + start + (piece.len() - piece.trim_start().len());
        start += piece.len() + 1;
        let t = piece.trim();
        if t.is_empty() {
            return Err(ctx.syntax(at, "expected a rate"));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => out.push(v),
            _ => return Err(ctx.err(at, ParseErrorKind::BadRate(t.to_string()))),
        }
    }
    Ok(out)
}

/// Writes one `->` line per reaction, in reaction order. The output reparses
/// to an equal network.
pub fn format_network(net: &ReactionNetwork) -> String {
    let mut out = String::new();
    for r in net.reactions() {
        out.push_str(&format!(
            "{} -> {} @ {}\n",
            r.source.display(net.species()),
            r.product.display(net.species()),
            r.rate
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateParseError {
    #[error("expected {expected} comma-separated counts, found {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid count {0:?}")]
    BadCount(String),
}

/// Parses `"3,0,1"` into a state over `d` species. A single value is
/// broadcast to every species.
pub fn parse_state(text: &str, d: usize) -> Result<State, StateParseError> {
    let vals = text
        .split(',')
        .map(|p| {
            let t = p.trim();
            t.parse::<u64>()
                .map_err(|_| StateParseError::BadCount(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match vals.len() {
        1 => Ok(State(vec![vals[0]; d])),
        n if n == d => Ok(State(vals)),
        n => Err(StateParseError::Arity {
            expected: d,
            got: n,
        }),
    }
}
