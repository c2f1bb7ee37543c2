//! Rooted block constructions for the distinct-cycle-length problem and its
//! multiples-of-`m` variant, plus exact audits of their closed forms.

mod audit;
pub mod theorem5;
pub mod theorem6;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::graph::PlanError;
use crate::Rational;

pub use audit::{audit_plan, audit_theorem5, audit_theorem6, Audit, AuditRow};
pub use theorem5::{build_theorem5, n_t_theorem5, validate5, Params5};
pub use theorem6::{build_theorem6, n_t_theorem6, validate6, Params6};

/// A failed parameter constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("invalid parameters: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("block {block}: {what} = {value} is not an integer")]
    NonIntegral {
        block: String,
        what: &'static str,
        value: Rational,
    },
    #[error("block {block}: {reason}")]
    Geometry { block: String, reason: String },
    #[error("n_t = {0} is not an integer")]
    NonIntegralThreshold(Rational),
    #[error("value {0} does not fit in 64 bits")]
    Overflow(Rational),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.0.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

pub(crate) fn q(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact nonnegative integer value of `v`, or the reason it has none.
pub(crate) fn exact_u64(v: &Rational, block: &str, what: &'static str) -> Result<u64, BuildError> {
    if !v.is_integer() {
        return Err(BuildError::NonIntegral {
            block: block.to_string(),
            what,
            value: v.clone(),
        });
    }
    if v.is_negative() {
        return Err(BuildError::Geometry {
            block: block.to_string(),
            reason: format!("{what} = {v} is negative"),
        });
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| BuildError::Overflow(v.clone()))
}

/// Integer value of a threshold polynomial, or the non-integral finding.
pub(crate) fn integral(v: Rational) -> Result<BigInt, BuildError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(BuildError::NonIntegralThreshold(v))
    }
}
