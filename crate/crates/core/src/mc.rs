//! Seeded Monte Carlo estimates of the averaged measure.
//!
//! Samples are split into fixed blocks of [`BLOCK_LEN`] draws. Block k
//! draws from the ChaCha8 stream k of the seed, and block statistics are
//! merged in ascending block order, so the estimate does not depend on how
//! blocks are scheduled across workers.

use alloc::vec::Vec;

use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fading::{ChannelModel, Sampler};
use crate::perf::{conditional_up, MetricSpec};

/// Draws per block.
pub const BLOCK_LEN: u64 = 1 << 14;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: u64 = 1000;

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation over √n.
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two accumulators (Chan et al. pairwise update).
    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / n;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.count as f64 * w;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero below two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }
}

/// A prepared estimate: samplers for each branch plus the block layout.
#[derive(Debug, Clone)]
pub struct McPlan {
    samplers: Vec<Sampler>,
    metric: MetricSpec,
    n_samples: u64,
    seed: u64,
}

impl McPlan {
    /// The combined SNR of each trial is the sum of one draw per model.
    pub fn new(models: &[ChannelModel], metric: MetricSpec, n_samples: u64, seed: u64) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::Parameter { name: "branches", value: 0.0, reason: "at least one branch is required" });
        }
        if n_samples < MIN_SAMPLES {
            return Err(Error::Parameter {
                name: "n_samples",
                value: n_samples as f64,
                reason: "at least 1000 samples are required",
            });
        }
        metric.validate()?;
        let samplers = models.iter().map(ChannelModel::sampler).collect::<Result<_>>()?;
        Ok(Self { samplers, metric, n_samples, seed })
    }

    pub fn n_blocks(&self) -> u64 {
        self.n_samples.div_ceil(BLOCK_LEN)
    }

    /// Runs block `k` (0-based); the last block may be short.
    pub fn run_block(&self, k: u64) -> Result<RunningStats> {
        let start = k * BLOCK_LEN;
        let len = BLOCK_LEN.min(self.n_samples.saturating_sub(start));
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k);
        let mut stats = RunningStats::default();
        for _ in 0..len {
            let snr: f64 = self.samplers.iter().map(|s| s.sample(&mut rng)).sum();
            stats.push(conditional_up(&self.metric, snr)?);
        }
        Ok(stats)
    }

    /// Merges block results, which must be given in ascending block order.
    pub fn finish(&self, blocks: impl IntoIterator<Item = RunningStats>) -> McEstimate {
        let mut total = RunningStats::default();
        for b in blocks {
            total.merge(&b);
        }
        let n = total.count().max(1) as f64;
        McEstimate {
            value: total.mean(),
            stderr: (total.variance() / n).sqrt(),
            n_samples: total.count(),
            seed: self.seed,
        }
    }
}

/// Sequential Monte Carlo estimate of the averaged measure over the sum of
/// independent branch SNRs.
pub fn estimate_aup_mc(models: &[ChannelModel], metric: &MetricSpec, n_samples: u64, seed: u64) -> Result<McEstimate> {
    let plan = McPlan::new(models, *metric, n_samples, seed)?;
    let blocks = (0..plan.n_blocks()).map(|k| plan.run_block(k)).collect::<Result<Vec<_>>>()?;
    Ok(plan.finish(blocks))
}
