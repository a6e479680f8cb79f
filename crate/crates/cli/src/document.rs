//! Input documents: characteristic pairs and polynomials.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use wsr_core::{CharacteristicPair, SRPolynomial, Violation};

use crate::dec::Dec;

/// `{"lambda": [[a_1, b_1], ..., [a_m, b_m]]}`; a bare array of pairs is
/// accepted on input as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub lambda: Vec<[Dec; 2]>,
}

impl PairDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match value {
            Value::Array(_) => serde_json::from_value(value)
                .map(|lambda| PairDocument { lambda })
                .map_err(|e| format!("lambda: {e}")),
            Value::Object(_) => serde_json::from_value(value).map_err(|e| e.to_string()),
            _ => Err("expected [[a, b], ...] or {\"lambda\": [[a, b], ...]}".into()),
        }
    }

    pub fn from_pair(pair: &CharacteristicPair) -> Self {
        PairDocument {
            lambda: pair
                .lambdas()
                .iter()
                .map(|l| [Dec(l.a.clone()), Dec(l.b.clone())])
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<CharacteristicPair, Vec<Violation>> {
        let raw: Vec<(BigInt, BigInt)> = self
            .lambda
            .iter()
            .map(|[a, b]| (a.0.clone(), b.0.clone()))
            .collect();
        CharacteristicPair::validate(&raw)
    }
}

/// One monomial `coeff * x^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Dec,
    pub exp: Vec<u32>,
}

/// `{"linear": [c_1, ..., c_m]}` or `{"terms": [{"coeff": k, "exp": [...]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyDocument {
    Linear(Vec<Dec>),
    Terms(Vec<Term>),
}

impl PolyDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Builds the polynomial in `m` variables, rejecting exponent vectors of
    /// the wrong length.
    pub fn to_polynomial(&self, m: usize) -> Result<SRPolynomial, String> {
        match self {
            PolyDocument::Linear(c) => {
                if c.len() != m {
                    return Err(format!("linear form has {} coefficients, pair has m = {m}", c.len()));
                }
                Ok(SRPolynomial::linear(&Dec::unwrap_vec(c)))
            }
            PolyDocument::Terms(terms) => {
                if let Some((k, t)) = terms.iter().enumerate().find(|(_, t)| t.exp.len() != m) {
                    return Err(format!(
                        "term {} has {} exponents, pair has m = {m}",
                        k + 1,
                        t.exp.len()
                    ));
                }
                Ok(SRPolynomial::from_terms(
                    m,
                    terms.iter().map(|t| (t.exp.clone(), t.coeff.0.clone())),
                ))
            }
        }
    }
}

/// Nonzero terms of `f` in canonical order.
pub fn terms_of(f: &SRPolynomial) -> Vec<Term> {
    f.terms()
        .map(|(exp, c)| Term {
            coeff: Dec(c.clone()),
            exp: exp.to_vec(),
        })
        .collect()
}
