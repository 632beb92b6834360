//! Reward combination and group-relative advantages.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Standard deviation below which a reward group carries no signal.
pub const ADVANTAGE_EPSILON: f64 = 1e-8;

/// Weights of RDA, GDA and SDA in the reward.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RewardWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for RewardWeights {
    fn default() -> Self {
        Self { alpha: 0.6, beta: 0.2, gamma: 0.2 }
    }
}

impl RewardWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, Error> {
        let w = Self { alpha, beta, gamma };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(self.alpha) && ok(self.beta) && ok(self.gamma)) || self.sum() <= 0.0 {
            return Err(Error::Weights);
        }
        Ok(())
    }

    fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

/// Weighted mean of three percentages, rescaled to `[0, 1]`. Weights are
/// normalized by their sum.
pub fn combine_reward(rda: f64, gda: f64, sda: f64, weights: &RewardWeights) -> Result<f64, Error> {
    weights.validate()?;
    let raw = weights.alpha * rda + weights.beta * gda + weights.gamma * sda;
    Ok(raw / (100.0 * weights.sum()))
}

/// `(r - mean) / std` with the population standard deviation. Groups whose
/// spread is below [`ADVANTAGE_EPSILON`] (including single rollouts) map to
/// zeros.
pub fn advantages(rewards: &[f64]) -> Vec<f64> {
    let n = rewards.len();
    if n == 0 {
        return Vec::new();
    }
    let mean = rewards.iter().sum::<f64>() / n as f64;
    let var = rewards.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n as f64;
    let std = libm::sqrt(var);
    if std.is_nan() || std <= ADVANTAGE_EPSILON {
        return vec![0.0; n];
    }
    rewards.iter().map(|r| (r - mean) / std).collect()
}

/// Advantages for each consecutive run of `group_size` rewards.
pub fn group_advantages(rewards: &[f64], group_size: usize) -> Result<Vec<Vec<f64>>, Error> {
    if group_size == 0 || !rewards.len().is_multiple_of(group_size) {
        return Err(Error::GroupSize { len: rewards.len(), group_size });
    }
    Ok(rewards.chunks(group_size).map(advantages).collect())
}
