//! Evaluation of a sweep over the SNR grid.

use fadeperf_core::fading::ChannelModel;
use fadeperf_core::mc::McPlan;
use fadeperf_core::perf::{
    aup_mrc_independent, aup_mrc_with_rule, aup_nakagami_identical_mrc, aup_single_closed, aup_single_quadrature,
    IndependentBranches, MetricSpec, MrcRule,
};
use rayon::prelude::*;

use crate::config::{Method, SweepConfig};
use crate::error::CliError;

/// One output line. `outcome` carries the error text for failed points.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub snr_db: f64,
    pub method: Method,
    pub outcome: Result<Value, String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Value {
    pub value: f64,
    /// Standard error for Monte Carlo rows.
    pub stderr: Option<f64>,
}

/// Evaluates every (point, method) pair in grid order.
///
/// Failures do not abort the sweep; they come back as rows with an error.
/// Every Monte Carlo point uses the configured seed.
pub fn run(cfg: &SweepConfig) -> Result<Vec<Row>, CliError> {
    let metric = cfg.metric()?;
    let jobs: Vec<(f64, Method)> = cfg
        .snr_grid_db
        .points()
        .into_iter()
        .flat_map(|p| cfg.methods.iter().map(move |&m| (p, m)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(snr_db, method)| Row { snr_db, method, outcome: evaluate(cfg, &metric, snr_db, method) })
        .collect())
}

fn evaluate(cfg: &SweepConfig, metric: &MetricSpec, snr_db: f64, method: Method) -> Result<Value, String> {
    let models = cfg
        .channels
        .iter()
        .map(|c| c.at_snr_db(snr_db))
        .collect::<Result<Vec<ChannelModel>, _>>()
        .map_err(|e| e.to_string())?;
    let analytic = |v: fadeperf_core::Result<f64>| {
        v.map(|value| Value { value, stderr: None }).map_err(|e| e.to_string())
    };
    let single = models.len() == 1;
    match method {
        Method::Closed if single => {
            analytic(models[0].to_hyper_foxh().and_then(|h| aup_single_closed(&h, metric)))
        }
        Method::Closed => {
            let m = cfg.identical_nakagami().ok_or("no closed form for these branches")?;
            let mean = models[0].mean().map_err(|e| e.to_string())?;
            analytic(aup_nakagami_identical_mrc(m, mean, models.len(), metric))
        }
        Method::Quadrature if single => analytic(aup_single_quadrature(&models[0], metric)),
        Method::Quadrature => analytic(
            IndependentBranches::new(models)
                .and_then(|joint| aup_mrc_with_rule(&joint, metric, cfg.gcq_nodes, MrcRule::Adaptive)),
        ),
        Method::Gcq => analytic(aup_mrc_independent(&models, metric, cfg.gcq_nodes)),
        Method::Mc => monte_carlo(&models, *metric, cfg.mc_samples, cfg.mc_seed),
    }
}

// Blocks run in parallel; merging in block order keeps the result
// independent of the thread count.
fn monte_carlo(models: &[ChannelModel], metric: MetricSpec, n: u64, seed: u64) -> Result<Value, String> {
    let plan = McPlan::new(models, metric, n, seed).map_err(|e| e.to_string())?;
    let blocks = (0..plan.n_blocks())
        .into_par_iter()
        .map(|k| plan.run_block(k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let est = plan.finish(blocks);
    Ok(Value { value: est.value, stderr: Some(est.stderr) })
}
