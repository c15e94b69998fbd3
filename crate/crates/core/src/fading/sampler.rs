use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal, StandardNormal};

use super::model::{gg_beta, ChannelModel};
use crate::error::{Error, Result};

/// Generalized-Gamma draw: scale · G^(1/shape) with G ~ Gamma(m, 1).
#[derive(Debug, Clone, Copy)]
struct PoweredGamma {
    gamma: Gamma<f64>,
    exponent: f64,
    scale: f64,
}

impl PoweredGamma {
    fn new(m: f64, shape: f64, mean: f64) -> Result<Self> {
        let gamma = Gamma::new(m, 1.0).map_err(|_| Error::Parameter {
            name: "m",
            value: m,
            reason: "invalid Gamma shape",
        })?;
        Ok(Self { gamma, exponent: 1.0 / shape, scale: mean / gg_beta(m, shape)? })
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g = self.gamma.sample(rng);
        if self.exponent == 1.0 {
            self.scale * g
        } else {
            self.scale * g.powf(self.exponent)
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Powered(PoweredGamma),
    Product(PoweredGamma, PoweredGamma),
    Mixture { cumulative: Vec<f64>, parts: Vec<PoweredGamma> },
    Envelope { sigma_x: f64, sigma_y: f64, los: f64 },
    Lognormal(Normal<f64>),
}

/// Draws instantaneous SNR values for one catalogue model.
#[derive(Debug, Clone)]
pub struct Sampler {
    kind: Kind,
}

impl Sampler {
    pub(crate) fn new(model: &ChannelModel) -> Result<Self> {
        use ChannelModel as M;
        let kind = match model {
            M::OneSidedGaussian { mean } => Kind::Powered(PoweredGamma::new(0.5, 1.0, *mean)?),
            M::Exponential { mean } => Kind::Powered(PoweredGamma::new(1.0, 1.0, *mean)?),
            M::Nakagami { m, mean } => Kind::Powered(PoweredGamma::new(*m, 1.0, *mean)?),
            M::Maxwell { mean } => Kind::Powered(PoweredGamma::new(1.5, 1.0, *mean)?),
            M::Weibull { shape, mean } => Kind::Powered(PoweredGamma::new(1.0, *shape, *mean)?),
            M::GeneralizedGamma { m, shape, mean } => Kind::Powered(PoweredGamma::new(*m, *shape, *mean)?),
            M::HyperGamma { branches } => {
                let mut acc = 0.0;
                let mut cumulative = Vec::with_capacity(branches.len());
                let mut parts = Vec::with_capacity(branches.len());
                for b in branches {
                    acc += b.weight;
                    cumulative.push(acc);
                    parts.push(PoweredGamma::new(b.m, 1.0, b.mean)?);
                }
                Kind::Mixture { cumulative, parts }
            }
            M::Hoyt { q, mean, .. } => {
                let var_x = mean / (1.0 + q * q);
                Kind::Envelope { sigma_x: var_x.sqrt(), sigma_y: (q * q * var_x).sqrt(), los: 0.0 }
            }
            M::Rice { n, mean, .. } => {
                let k = n * n;
                let sigma = (0.5 * mean / (1.0 + k)).sqrt();
                Kind::Envelope { sigma_x: sigma, sigma_y: sigma, los: (k * mean / (1.0 + k)).sqrt() }
            }
            M::Lognormal { mu_db, sigma_db, .. } => Kind::Lognormal(Normal::new(*mu_db, *sigma_db).map_err(|_| {
                Error::Parameter { name: "sigma_db", value: *sigma_db, reason: "invalid spread" }
            })?),
            M::KDist { ms, mean } => {
                Kind::Product(PoweredGamma::new(1.0, 1.0, 1.0)?, PoweredGamma::new(*ms, 1.0, *mean)?)
            }
            M::GeneralizedK { m, ms, mean } => {
                Kind::Product(PoweredGamma::new(*m, 1.0, 1.0)?, PoweredGamma::new(*ms, 1.0, *mean)?)
            }
            M::Egk { m, shape, ms, shadow_shape, mean } => Kind::Product(
                PoweredGamma::new(*m, *shape, 1.0)?,
                PoweredGamma::new(*ms, *shadow_shape, *mean)?,
            ),
            M::Custom(_) => return Err(Error::Unsupported("sampling a custom hyper-Fox model")),
        };
        Ok(Self { kind })
    }

    /// One draw of γ.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Powered(p) => p.draw(rng),
            Kind::Product(fading, shadow) => fading.draw(rng) * shadow.draw(rng),
            Kind::Mixture { cumulative, parts } => {
                let u: f64 = rng.random::<f64>() * cumulative[cumulative.len() - 1];
                let i = cumulative.partition_point(|&c| c <= u).min(parts.len() - 1);
                parts[i].draw(rng)
            }
            Kind::Envelope { sigma_x, sigma_y, los } => {
                let x: f64 = StandardNormal.sample(rng);
                let y: f64 = StandardNormal.sample(rng);
                let re = los + sigma_x * x;
                let im = sigma_y * y;
                re * re + im * im
            }
            Kind::Lognormal(normal) => 10f64.powf(normal.sample(rng) / 10.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::GammaBranch;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::vec;

    fn draws(model: &ChannelModel, n: usize, seed: u64) -> Vec<f64> {
        let sampler = model.sampler().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| sampler.sample(&mut rng)).collect()
    }

    fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn sample_means_hit_the_average_snr() {
        let cases = [
            (ChannelModel::Exponential { mean: 5.0 }, 3.0),
            (ChannelModel::GeneralizedGamma { m: 2.0, shape: 0.25, mean: 1.0 }, 3.0),
        ];
        for (model, k) in &cases {
            let (m, se) = mean_and_stderr(&draws(model, 1_000_000, 11));
            let want = model.mean().unwrap();
            assert!((m - want).abs() < k * se, "{}: {m} ± {se}", model.name());
        }
    }

    #[test]
    fn empirical_mgf_matches_closed_form() {
        use ChannelModel as M;
        let models = [
            M::OneSidedGaussian { mean: 2.0 },
            M::Exponential { mean: 2.0 },
            M::Nakagami { m: 2.5, mean: 2.0 },
            M::Weibull { shape: 1.7, mean: 2.0 },
            M::HyperGamma {
                branches: vec![
                    GammaBranch { weight: 0.4, m: 1.0, mean: 1.0 },
                    GammaBranch { weight: 0.6, m: 3.0, mean: 8.0 / 3.0 },
                ],
            },
            M::hoyt(0.4, 2.0),
            M::rice(1.5, 2.0),
            M::Maxwell { mean: 2.0 },
            M::lognormal(1.0, 4.0),
            M::KDist { ms: 2.0, mean: 2.0 },
            M::GeneralizedK { m: 1.5, ms: 3.0, mean: 2.0 },
            M::GeneralizedGamma { m: 2.0, shape: 0.5, mean: 2.0 },
            M::Egk { m: 1.5, shape: 0.8, ms: 2.0, shadow_shape: 1.3, mean: 2.0 },
        ];
        for (i, model) in models.iter().enumerate() {
            let xs = draws(model, 1_000_000, 100 + i as u64);
            for s in [0.5, 2.0] {
                let ys: Vec<f64> = xs.iter().map(|g| (-s * g).exp()).collect();
                let (m, se) = mean_and_stderr(&ys);
                let want = model.mgf(s).unwrap();
                assert!((m - want).abs() < 4.0 * se, "{} s={s}: {m} ± {se} vs {want}", model.name());
            }
        }
    }

    #[test]
    fn unit_shape_egk_draws_follow_generalized_k() {
        // two-sample Kolmogorov–Smirnov at the 1% level
        let n = 100_000;
        let mut a = draws(&ChannelModel::Egk { m: 1.5, shape: 1.0, ms: 3.0, shadow_shape: 1.0, mean: 2.0 }, n, 1);
        let mut b = draws(&ChannelModel::GeneralizedK { m: 1.5, ms: 3.0, mean: 2.0 }, n, 2);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let (mut i, mut j, mut d) = (0, 0, 0.0f64);
        while i < n && j < n {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 - j as f64).abs() / n as f64);
        }
        let critical = 1.628 * (2.0 / n as f64).sqrt();
        assert!(d < critical, "D = {d}");
    }

    #[test]
    fn draws_are_positive_and_reproducible() {
        let model = ChannelModel::rice(2.0, 1.0);
        let a = draws(&model, 1000, 5);
        assert_eq!(a, draws(&model, 1000, 5));
        assert!(a.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn custom_models_have_no_sampler() {
        let h = ChannelModel::Exponential { mean: 1.0 }.to_hyper_foxh().unwrap();
        assert!(matches!(ChannelModel::Custom(h).sampler(), Err(Error::Unsupported(_))));
    }
}
