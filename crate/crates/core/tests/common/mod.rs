#![allow(dead_code)]

use fadeperf_core::fading::{ChannelModel, GammaBranch};
use fadeperf_core::perf::MetricSpec;

/// One instance of every catalogue model at the given average SNR.
pub fn catalog(mean: f64) -> Vec<ChannelModel> {
    use ChannelModel as M;
    let gg = M::GeneralizedGamma { m: 2.0, shape: 0.5, mean };
    // μ_dB chosen so the lognormal mean equals `mean` at σ = 4 dB
    let db = 10.0 / std::f64::consts::LN_10;
    vec![
        M::OneSidedGaussian { mean },
        M::Exponential { mean },
        M::Nakagami { m: 2.5, mean },
        M::Weibull { shape: 1.7, mean },
        M::HyperGamma {
            branches: vec![
                GammaBranch { weight: 0.3, m: 1.0, mean: 0.5 * mean },
                GammaBranch { weight: 0.7, m: 3.0, mean: mean * 17.0 / 14.0 },
            ],
        },
        M::hoyt(0.4, mean),
        M::rice(1.5, mean),
        M::Maxwell { mean },
        M::lognormal(10.0 * mean.log10() - 0.5 * 16.0 / db, 4.0),
        M::KDist { ms: 2.0, mean },
        M::GeneralizedK { m: 1.5, ms: 3.0, mean },
        gg.clone(),
        M::Egk { m: 1.5, shape: 0.8, ms: 2.0, shadow_shape: 1.3, mean },
        M::Custom(gg.to_hyper_foxh().unwrap()),
    ]
}

/// The named metric rows.
pub fn table_rows() -> Vec<MetricSpec> {
    let mut rows = MetricSpec::BEP_ROWS.to_vec();
    rows.push(MetricSpec::bep_correlated(0.3).unwrap());
    rows.push(MetricSpec::capacity(1.0).unwrap());
    rows
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
