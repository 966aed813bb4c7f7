//! Lossless JSON documents for polynomials.
//!
//! Coefficients serialize as exact fraction strings (`"p/q"`, or `"p"` for
//! integers), never decimals. Terms are listed in canonical descending
//! monomial order, so identical polynomials always produce byte-identical
//! documents.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use kdvtau_core::ring::{Monomial, Polynomial, Rational, Variable};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolynomialDocument {
    pub schema_version: String,
    /// Variables occurring in the polynomial, in canonical order.
    pub variables: Vec<String>,
    /// Terms in canonical descending monomial order.
    pub terms: Vec<TermDocument>,
    pub metadata: DocumentMetadata,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermDocument {
    /// Exact fraction string, e.g. `"-7/3"`.
    pub coeff: String,
    /// Variable name to (possibly negative, for lambda powers) exponent.
    pub exponents: BTreeMap<String, i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DocumentMetadata {
    /// Sequence index n.
    pub index: u32,
    /// Construction route of the sequence the polynomial belongs to.
    pub route: String,
    /// Grading weight when the polynomial is weight-homogeneous.
    pub weight: Option<i64>,
}

/// Parse failure when reading a document back into a polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DocumentError {
    BadCoefficient(String),
    BadVariable(String),
    SchemaVersion(String),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::BadCoefficient(s) => write!(f, "unparseable coefficient {s:?}"),
            DocumentError::BadVariable(s) => write!(f, "unknown variable {s:?}"),
            DocumentError::SchemaVersion(s) => write!(f, "unsupported schema version {s:?}"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl PolynomialDocument {
    pub fn from_polynomial(p: &Polynomial, index: u32, route: &str) -> Self {
        let variables = p.variables().iter().map(|v| v.to_string()).collect();
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| TermDocument {
                coeff: c.to_string(),
                exponents: m.factors().map(|(v, e)| (v.to_string(), e as i64)).collect(),
            })
            .collect();
        PolynomialDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            variables,
            terms,
            metadata: DocumentMetadata {
                index,
                route: route.to_string(),
                weight: p.graded_degree().ok(),
            },
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version.clone()));
        }
        let mut out = Polynomial::zero();
        for term in &self.terms {
            let coeff: Rational = term
                .coeff
                .parse()
                .map_err(|_| DocumentError::BadCoefficient(term.coeff.clone()))?;
            let mut pairs: Vec<(Variable, i32)> = Vec::with_capacity(term.exponents.len());
            for (name, &exp) in &term.exponents {
                let var = Variable::parse_name(name)
                    .ok_or_else(|| DocumentError::BadVariable(name.clone()))?;
                pairs.push((var, exp as i32));
            }
            out = out.add(&Polynomial::term(Monomial::from_pairs(&pairs), coeff));
        }
        Ok(out)
    }
}
