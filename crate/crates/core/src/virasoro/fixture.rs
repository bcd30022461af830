//! The truncated `F_K(q)` fixture: JSON records of monomials and rational
//! coefficients, with a header naming the generating script and the weight
//! bound.

use std::collections::BTreeSet;

use serde::Deserialize;
use thiserror::Error;

use super::{Monomial, QPoly};
use crate::arith::{parse_rational, ParseRationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("malformed fixture JSON: {0}")]
    Json(String),
    #[error("record {record}: q-indices must be positive")]
    ZeroIndex { record: usize },
    #[error("record {record}: monomial {monomial} has weight above the bound {bound}")]
    AboveBound { record: usize, monomial: String, bound: u32 },
    #[error("record {record}: duplicate monomial {monomial}")]
    Duplicate { record: usize, monomial: String },
    #[error("record {record}: bad coefficient: {source}")]
    Coefficient { record: usize, source: ParseRationalError },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    oracle: String,
    weight_bound: u32,
    records: Vec<RawRecord>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    monomial: Vec<u32>,
    coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub oracle: String,
    pub weight_bound: u32,
    pub poly: QPoly,
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let raw: RawFixture = serde_json::from_str(text).map_err(|e| FixtureError::Json(e.to_string()))?;
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(raw.records.len());
    for (record, r) in raw.records.into_iter().enumerate() {
        if r.monomial.contains(&0) {
            return Err(FixtureError::ZeroIndex { record });
        }
        let m = Monomial::new(r.monomial);
        if m.weight() > raw.weight_bound {
            return Err(FixtureError::AboveBound { record, monomial: m.to_string(), bound: raw.weight_bound });
        }
        if !seen.insert(m.clone()) {
            return Err(FixtureError::Duplicate { record, monomial: m.to_string() });
        }
        let c = parse_rational(&r.coefficient).map_err(|source| FixtureError::Coefficient { record, source })?;
        terms.push((m, c));
    }
    Ok(Fixture { oracle: raw.oracle, weight_bound: raw.weight_bound, poly: QPoly::from_terms(terms) })
}

/// The fixture generated by `fixtures/gen_kw_fixture.py`, compiled in.
pub fn shipped() -> Fixture {
    parse_fixture(include_str!("../../fixtures/kw_fixture.json")).expect("shipped fixture parses")
}
