//! Parallel batch scoring with per-slot error isolation.

use layoutsim_core::reward::group_advantages;
use layoutsim_core::score::score_pair_with;
use layoutsim_core::{PageSnapshot, ScoreOptions, ScoreReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ErrorBody;

/// One batch input: a parsed candidate/reference pair, or the reason it
/// could not be parsed.
pub type BatchItem = Result<(PageSnapshot, PageSnapshot), ErrorBody>;

/// Outcome of one slot. Failed slots carry reward 0 so a group's advantages
/// can still be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchSlot {
    Scored(ScoreReport),
    Failed { reward: f64, error: ErrorBody },
}

impl BatchSlot {
    pub fn failed(error: ErrorBody) -> Self {
        BatchSlot::Failed { reward: 0.0, error }
    }

    pub fn reward(&self) -> f64 {
        match self {
            BatchSlot::Scored(r) => r.reward,
            BatchSlot::Failed { reward, .. } => *reward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchOutcome {
    pub reports: Vec<BatchSlot>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advantages: Option<Vec<Vec<f64>>>,
}

/// Scores batches on a dedicated worker pool.
pub struct BatchScorer {
    pool: rayon::ThreadPool,
}

impl BatchScorer {
    pub fn new(workers: usize) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .thread_name(|i| format!("layoutsim-worker-{i}"))
            .build()?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Scores every item; reports come back in input order whatever the
    /// evaluation order. With `group_size`, advantages are computed over each
    /// consecutive run of that many slots.
    pub fn score_batch(
        &self,
        items: &[BatchItem],
        options: &ScoreOptions,
        group_size: Option<usize>,
    ) -> Result<BatchOutcome, layoutsim_core::Error> {
        if let Some(n) = group_size {
            if n == 0 || !items.len().is_multiple_of(n) {
                return Err(layoutsim_core::Error::GroupSize { len: items.len(), group_size: n });
            }
        }
        let reports: Vec<BatchSlot> = self.pool.install(|| items.par_iter().map(|item| score_item(item, options)).collect());
        let advantages = match group_size {
            Some(n) => {
                let rewards: Vec<f64> = reports.iter().map(BatchSlot::reward).collect();
                Some(group_advantages(&rewards, n)?)
            }
            None => None,
        };
        Ok(BatchOutcome { reports, advantages })
    }

    /// Runs `f` on the worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

fn score_item(item: &BatchItem, options: &ScoreOptions) -> BatchSlot {
    match item {
        Ok((candidate, reference)) => match score_pair_with(candidate, reference, options) {
            Ok(report) => BatchSlot::Scored(report),
            Err(e) => BatchSlot::failed(ErrorBody::from(&e)),
        },
        Err(e) => BatchSlot::failed(e.clone()),
    }
}
