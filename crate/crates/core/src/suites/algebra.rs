use super::{index_pairs, run_jobs};
use crate::index::indices_up_to_weight;
use crate::registry::{InstanceResult, SuiteBounds, SuiteReport, VerificationSuite};
use crate::truncated::check_partial_fraction_lemma;
use crate::{Bullet, Index, Result, TruncatedValues, TruncationParams};

fn max_m(bounds: &SuiteBounds) -> u64 {
    bounds.m_list.iter().copied().max().unwrap_or(1)
}

pub struct DsrSuite;

impl VerificationSuite for DsrSuite {
    fn name(&self) -> &'static str {
        "dsr"
    }

    fn statement(&self) -> &'static str {
        "harmonic and shuffle double shuffle relations for truncated t-adic symmetric values, exact mod t^N"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { wt_max: 6, m_list: vec![2, 5, 13], order: 4, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let pairs = index_pairs(bounds.wt_max, false);
        bounds.check_work(pairs.len() as u64 * bounds.m_list.len() as u64 * max_m(bounds).pow(2) * bounds.order as u64)?;
        let left: Vec<Index> = indices_up_to_weight(bounds.wt_max);
        let jobs: Vec<(u64, &Index)> = bounds.m_list.iter().flat_map(|&m| left.iter().map(move |k| (m, k))).collect();
        let instances = run_jobs(&jobs, |&(m, k)| {
            let values = TruncatedValues::new(TruncationParams::new(m, bounds.order)?);
            let mut out = Vec::new();
            for (_, l) in pairs.iter().filter(|(a, _)| a == k) {
                let v = values.check_dsr(k, l)?;
                out.push(InstanceResult { key: format!("k=({k}) l=({l}) M={m}"), verdict: v.combined() });
            }
            Ok(out)
        })?;
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}

pub struct TaylorSuite;

impl VerificationSuite for TaylorSuite {
    fn name(&self) -> &'static str {
        "taylor"
    }

    fn statement(&self) -> &'static str {
        "each t^n coefficient is Z_M of an explicit H^0 word, for both bullets"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { wt_max: 6, m_list: vec![2, 5, 13], order: 4, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let indices = indices_up_to_weight(bounds.wt_max);
        bounds.check_work(indices.len() as u64 * 2 * bounds.m_list.len() as u64 * max_m(bounds).pow(2) * bounds.order as u64)?;
        let jobs: Vec<(u64, Bullet)> =
            bounds.m_list.iter().flat_map(|&m| Bullet::ALL.into_iter().map(move |b| (m, b))).collect();
        let instances = run_jobs(&jobs, |&(m, bullet)| {
            let values = TruncatedValues::new(TruncationParams::new(m, bounds.order)?);
            indices
                .iter()
                .map(|k| {
                    Ok(InstanceResult {
                        key: format!("k=({k}) bullet={bullet} M={m}"),
                        verdict: values.check_taylor_identity(k, bullet)?,
                    })
                })
                .collect()
        })?;
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}

pub struct PartialFractionSuite;

impl VerificationSuite for PartialFractionSuite {
    fn name(&self) -> &'static str {
        "lemma23"
    }

    fn statement(&self) -> &'static str {
        "paired increasing chains with m_r + n_s < M sum to Z_M(z_k sh z_l)"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { wt_max: 5, m_list: (1..=15).collect(), order: 1, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let pairs = index_pairs(bounds.wt_max, true);
        bounds.check_work(pairs.len() as u64 * bounds.m_list.len() as u64 * max_m(bounds).pow(2))?;
        let jobs: Vec<(u64, &(Index, Index))> =
            bounds.m_list.iter().flat_map(|&m| pairs.iter().map(move |p| (m, p))).collect();
        let instances = run_jobs(&jobs, |&(m, (k, l))| {
            Ok(vec![InstanceResult {
                key: format!("k=({k}) l=({l}) M={m}"),
                verdict: check_partial_fraction_lemma(k, l, m)?,
            }])
        })?;
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}
