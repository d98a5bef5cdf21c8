use super::{index_pairs, run_jobs};
use crate::finite::check_hat_a_dsr;
use crate::registry::{InstanceResult, SuiteBounds, SuiteReport, VerificationSuite};
use crate::{Index, Result};

pub struct FiniteSuite;

impl VerificationSuite for FiniteSuite {
    fn name(&self) -> &'static str {
        "finite"
    }

    fn statement(&self) -> &'static str {
        "harmonic and shuffle congruences for Z_p modulo p^n"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { wt_max: 5, primes: vec![5, 7, 11, 13], n_max: 3, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let pairs = index_pairs(bounds.wt_max, false);
        let pairs = &pairs;
        let max_p = bounds.primes.iter().copied().max().unwrap_or(2);
        bounds.check_work(pairs.len() as u64 * bounds.primes.len() as u64 * bounds.n_max as u64 * max_p * bounds.wt_max as u64)?;
        let jobs: Vec<(u64, u32, &(Index, Index))> = bounds
            .primes
            .iter()
            .flat_map(|&p| (1..=bounds.n_max).flat_map(move |n| pairs.iter().map(move |kl| (p, n, kl))))
            .collect();
        let instances = run_jobs(&jobs, |&(p, n, (k, l))| {
            Ok(vec![InstanceResult {
                key: format!("k=({k}) l=({l}) p={p} n={n}"),
                verdict: check_hat_a_dsr(k, l, p, n)?.combined(),
            }])
        })?;
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}
