//! Structured outcomes of identity checks.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::TruncatedSeries;

/// First failing comparison, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub what: String,
    pub coefficient: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "mismatch", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Mismatch),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(what: impl Into<String>, coefficient: Option<usize>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Verdict::Fails(Mismatch { what: what.into(), coefficient, lhs: lhs.to_string(), rhs: rhs.to_string() })
    }

    /// Keeps the first failure.
    pub fn and(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds => next(),
            failed => failed,
        }
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().find(|v| !v.holds()).unwrap_or(Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Fails(m) => {
                write!(f, "fails: {}", m.what)?;
                if let Some(c) = m.coefficient {
                    write!(f, " at t^{c}")?;
                }
                write!(f, ": lhs = {}, rhs = {}", m.lhs, m.rhs)
            }
        }
    }
}

/// Both halves of a double shuffle check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsrVerdict {
    pub harmonic: Verdict,
    pub shuffle: Verdict,
}

impl DsrVerdict {
    pub fn holds(&self) -> bool {
        self.harmonic.holds() && self.shuffle.holds()
    }

    pub fn combined(self) -> Verdict {
        self.harmonic.and(|| self.shuffle)
    }
}

pub fn compare_series(what: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Verdict {
    if lhs.order() != rhs.order() {
        return Verdict::fails(format!("{what} (order mismatch)"), None, lhs, rhs);
    }
    for i in 0..lhs.order() {
        if lhs.coeff(i) != rhs.coeff(i) {
            return Verdict::fails(what, Some(i), lhs.coeff(i), rhs.coeff(i));
        }
    }
    Verdict::Holds
}

pub fn compare_rational(what: &str, lhs: &BigRational, rhs: &BigRational) -> Verdict {
    if lhs == rhs {
        Verdict::Holds
    } else {
        Verdict::fails(what, None, lhs, rhs)
    }
}
