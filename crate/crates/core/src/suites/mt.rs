use super::run_jobs;
use crate::index::indices_up_to_weight;
use crate::mt::{check_mt_corollary_t0, check_mt_root_relation, check_mt_t_expansion, check_mt_tree, MtIndex};
use crate::registry::{InstanceResult, SuiteBounds, SuiteReport, VerificationSuite};
use crate::verdict::Verdict;
use crate::{Result, TruncationParams};

pub struct MtSuite;

impl VerificationSuite for MtSuite {
    fn name(&self) -> &'static str {
        "mt"
    }

    fn statement(&self) -> &'static str {
        "Mordell-Tornheim words match star-tree values, their t-expansion and the root exchange relation"
    }

    fn default_bounds(&self) -> SuiteBounds {
        SuiteBounds { wt_max: 5, depth_max: 3, m_list: vec![2, 4, 7], order: 3, ..SuiteBounds::default() }
    }

    fn run(&self, bounds: &SuiteBounds) -> Result<SuiteReport> {
        let indices = MtIndex::all_up_to(bounds.wt_max, bounds.depth_max);
        let max_m = bounds.m_list.iter().copied().max().unwrap_or(1);
        bounds.check_work(
            indices.len() as u64 * bounds.m_list.len() as u64 * max_m.saturating_pow(bounds.depth_max as u32 + 1),
        )?;
        let jobs: Vec<(u64, &MtIndex)> =
            bounds.m_list.iter().flat_map(|&m| indices.iter().map(move |i| (m, i))).collect();
        let mut instances = run_jobs(&jobs, |&(m, idx)| {
            let params = TruncationParams::new(m, bounds.order)?;
            let verdict = Verdict::all([
                check_mt_tree(idx, params)?,
                check_mt_t_expansion(idx, params)?,
                check_mt_root_relation(idx, params)?,
            ]);
            Ok(vec![InstanceResult { key: format!("({idx}) M={m}"), verdict }])
        })?;
        // constant-term corollary: k positive of depth <= depth_max, with or without a trailing x^l
        let mut cases: Vec<(Vec<u32>, Option<u32>)> = Vec::new();
        for k in indices_up_to_weight(bounds.wt_max) {
            if k.is_empty() || k.depth() > bounds.depth_max {
                continue;
            }
            cases.push((k.entries().to_vec(), None));
            for l in 1..=bounds.wt_max.saturating_sub(k.weight()) {
                cases.push((k.entries().to_vec(), Some(l)));
            }
        }
        let jobs: Vec<(u64, &(Vec<u32>, Option<u32>))> =
            bounds.m_list.iter().flat_map(|&m| cases.iter().map(move |c| (m, c))).collect();
        instances.extend(run_jobs(&jobs, |&(m, (k, l))| {
            let key = match l {
                None => format!("corollary k={k:?} M={m}"),
                Some(l) => format!("corollary k={k:?} l={l} M={m}"),
            };
            Ok(vec![InstanceResult { key, verdict: check_mt_corollary_t0(k, *l, m)? }])
        })?);
        Ok(SuiteReport::new(self.name(), self.statement(), instances))
    }
}
