//! Evaluators and verification suites behind common traits, looked up by name.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::regularization::{zeta_reg, RegPolynomial};
use crate::suites;
use crate::truncated::{hat_series, z_trunc};
use crate::verdict::Verdict;
use crate::{Bullet, Error, Index, Result, TruncatedSeries, TruncationParams};

/// Inputs shared by all evaluators; each reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalRequest {
    pub index: Index,
    pub m: u64,
    pub order: usize,
    pub bullet: Bullet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EvalOutput {
    Series(TruncatedSeries),
    Rational(#[serde(serialize_with = "as_fraction")] BigRational),
    Regularized(RegPolynomial),
}

fn as_fraction<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalOutput::Series(s) => write!(f, "{s}"),
            EvalOutput::Rational(q) => write!(f, "{q}"),
            EvalOutput::Regularized(p) => write!(f, "{p}"),
        }
    }
}

pub trait Evaluator: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn evaluate(&self, req: &EvalRequest) -> Result<EvalOutput>;
}

struct HatEvaluator(Bullet);

impl Evaluator for HatEvaluator {
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn description(&self) -> &'static str {
        match self.0 {
            Bullet::Star => "t-adic symmetric value with every chain bounded by M",
            Bullet::Shuffle => "t-adic symmetric value with the split gap bounded by M",
        }
    }

    fn evaluate(&self, req: &EvalRequest) -> Result<EvalOutput> {
        Ok(EvalOutput::Series(hat_series(&req.index, self.0, TruncationParams::new(req.m, req.order)?)))
    }
}

struct TruncatedSum;

impl Evaluator for TruncatedSum {
    fn name(&self) -> &'static str {
        "zM"
    }

    fn description(&self) -> &'static str {
        "truncated multiple harmonic sum Z_M"
    }

    fn evaluate(&self, req: &EvalRequest) -> Result<EvalOutput> {
        z_trunc(&req.index, req.m).map(EvalOutput::Rational)
    }
}

struct Regularized;

impl Evaluator for Regularized {
    fn name(&self) -> &'static str {
        "reg"
    }

    fn description(&self) -> &'static str {
        "regularized value as a polynomial in T over admissible symbols"
    }

    fn evaluate(&self, req: &EvalRequest) -> Result<EvalOutput> {
        Ok(EvalOutput::Regularized(zeta_reg(&req.index, req.bullet)))
    }
}

/// Parameters for a suite run; unset fields fall back to the suite's defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    pub wt_max: u32,
    pub m_list: Vec<u64>,
    pub order: usize,
    pub primes: Vec<u64>,
    pub n_max: u32,
    pub depth_max: usize,
    pub max_vertices: usize,
    pub max_label: u32,
    pub tree_count: usize,
    pub seed: u64,
    /// Cap on the estimated number of summation points; `None` is unlimited.
    pub max_work: Option<u64>,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            wt_max: 6,
            m_list: vec![2, 5, 13],
            order: 4,
            primes: vec![5, 7, 11, 13],
            n_max: 3,
            depth_max: 3,
            max_vertices: 7,
            max_label: 3,
            tree_count: 200,
            seed: 20240601,
            max_work: None,
        }
    }
}

impl SuiteBounds {
    pub(crate) fn check_work(&self, estimate: u64) -> Result<()> {
        match self.max_work {
            Some(cap) if estimate > cap => Err(Error::InvalidArgument(format!(
                "estimated work {estimate} exceeds the cap {cap}; lower the bounds or raise SZV_MAX_WORK"
            ))),
            _ => Ok(()),
        }
    }
}

/// One checked identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub key: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub statement: String,
    pub instances: Vec<InstanceResult>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    /// Instances are kept in generation order, which is deterministic.
    pub fn new(suite: &str, statement: &str, instances: Vec<InstanceResult>) -> Self {
        let failed = instances.iter().filter(|i| !i.verdict.holds()).count();
        SuiteReport {
            suite: suite.to_string(),
            statement: statement.to_string(),
            passed: instances.len() - failed,
            failed,
            instances,
        }
    }

    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}", self.suite, self.statement)?;
        for inst in &self.instances {
            match &inst.verdict {
                Verdict::Holds => writeln!(f, "PASS {}", inst.key)?,
                v => writeln!(f, "FAIL {} {}", inst.key, v)?,
            }
        }
        write!(f, "{} passed, {} failed", self.passed, self.failed)
    }
}

pub trait VerificationSuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn statement(&self) -> &'static str;
    fn default_bounds(&self) -> SuiteBounds;
    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport>;
}

pub struct Registry {
    evaluators: BTreeMap<&'static str, Box<dyn Evaluator>>,
    suites: BTreeMap<&'static str, Box<dyn VerificationSuite>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { evaluators: BTreeMap::new(), suites: BTreeMap::new() }
    }

    /// All built-in evaluators and suites.
    pub fn standard() -> Self {
        let mut r = Registry::empty();
        r.register_evaluator(Box::new(HatEvaluator(Bullet::Star)));
        r.register_evaluator(Box::new(HatEvaluator(Bullet::Shuffle)));
        r.register_evaluator(Box::new(TruncatedSum));
        r.register_evaluator(Box::new(Regularized));
        for s in suites::all() {
            r.register_suite(s);
        }
        r
    }

    pub fn register_evaluator(&mut self, e: Box<dyn Evaluator>) {
        self.evaluators.insert(e.name(), e);
    }

    pub fn register_suite(&mut self, s: Box<dyn VerificationSuite>) {
        self.suites.insert(s.name(), s);
    }

    pub fn evaluator(&self, name: &str) -> Result<&dyn Evaluator> {
        self.evaluators
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "evaluator", name: name.to_string() })
    }

    pub fn suite(&self, name: &str) -> Result<&dyn VerificationSuite> {
        self.suites
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "suite", name: name.to_string() })
    }

    pub fn evaluator_names(&self) -> Vec<&'static str> {
        self.evaluators.keys().copied().collect()
    }

    pub fn suite_names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name() {
        let r = Registry::standard();
        assert_eq!(r.evaluator_names(), vec!["reg", "sh", "star", "zM"]);
        assert_eq!(r.suite_names(), vec!["dsr", "finite", "lemma23", "mt", "taylor", "trees"]);
        assert!(r.evaluator("nope").err().is_some_and(|e| e.is_parse()));
        let req = EvalRequest { index: "1".parse().unwrap(), m: 3, order: 3, bullet: Bullet::Star };
        let out = r.evaluator("star").unwrap().evaluate(&req).unwrap();
        assert_eq!(out.to_string(), TruncatedSeries::from_coeffs(vec![
            BigRational::from_integer(0.into()),
            BigRational::new((-5).into(), 4.into()),
            BigRational::new((-9).into(), 8.into()),
        ]).unwrap().to_string());
        let empty = EvalRequest { index: Index::empty(), m: 10, order: 1, bullet: Bullet::Star };
        assert_eq!(serde_json::to_string(&r.evaluator("zM").unwrap().evaluate(&empty).unwrap()).unwrap(), "\"1\"");
    }

    #[test]
    fn work_cap() {
        let b = SuiteBounds { max_work: Some(10), ..SuiteBounds::default() };
        assert!(b.check_work(11).is_err());
        assert!(b.check_work(10).is_ok());
    }
}
