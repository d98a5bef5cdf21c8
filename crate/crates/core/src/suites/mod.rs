//! Built-in verification suites. Instances run in parallel; results keep generation order.

mod algebra;
mod finite;
mod mt;
mod trees;

use rayon::prelude::*;

use crate::index::indices_up_to_weight;
use crate::registry::{InstanceResult, VerificationSuite};
use crate::{Index, Result};

pub use algebra::{DsrSuite, PartialFractionSuite, TaylorSuite};
pub use finite::FiniteSuite;
pub use mt::MtSuite;
pub use trees::TreeSuite;

pub fn all() -> Vec<Box<dyn VerificationSuite>> {
    vec![
        Box::new(DsrSuite),
        Box::new(TaylorSuite),
        Box::new(PartialFractionSuite),
        Box::new(TreeSuite),
        Box::new(MtSuite),
        Box::new(FiniteSuite),
    ]
}

/// Runs `task` on every job in parallel and concatenates the results in job order.
pub(crate) fn run_jobs<J: Sync>(
    jobs: &[J],
    task: impl Fn(&J) -> Result<Vec<InstanceResult>> + Sync + Send,
) -> Result<Vec<InstanceResult>> {
    let parts: Vec<Vec<InstanceResult>> = jobs.par_iter().map(task).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Ordered pairs `(k, l)` with `wt(k) + wt(l) <= wt_max`.
pub(crate) fn index_pairs(wt_max: u32, non_empty: bool) -> Vec<(Index, Index)> {
    let all: Vec<Index> = indices_up_to_weight(wt_max).into_iter().filter(|k| !non_empty || !k.is_empty()).collect();
    let mut out = Vec::new();
    for k in &all {
        for l in &all {
            if k.weight() + l.weight() <= wt_max {
                out.push((k.clone(), l.clone()));
            }
        }
    }
    out
}
