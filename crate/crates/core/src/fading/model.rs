use alloc::vec::Vec;
use core::f64::consts::{LN_10, PI};

use num_traits::Float;

use super::hyper::{HyperFoxH, HyperTerm};
use super::sampler::Sampler;
use crate::error::{check_param, Error, Result};
use crate::mellin::{ContourConfig, FoxHParams};
use crate::specfn::{bessel_i0_scaled, bessel_k_scaled, gauss_hermite_nodes, ln_gamma};

/// One component of a hyper-Gamma mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBranch {
    /// Probability of this component.
    pub weight: f64,
    pub m: f64,
    pub mean: f64,
}

/// The fading-model catalogue. Every power parameter is a linear SNR.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelModel {
    OneSidedGaussian { mean: f64 },
    Exponential { mean: f64 },
    Nakagami { m: f64, mean: f64 },
    Weibull { shape: f64, mean: f64 },
    HyperGamma { branches: Vec<GammaBranch> },
    /// Nakagami-q; `terms` truncates the Gamma-mixture series of the hyper-Fox form.
    Hoyt { q: f64, mean: f64, terms: usize },
    /// Nakagami-n with K = n²; `terms` truncates the Poisson-Gamma series.
    Rice { n: f64, mean: f64, terms: usize },
    Maxwell { mean: f64 },
    /// Mean and spread of 10·log10(γ); `nodes` Gauss–Hermite points for the mixture form.
    Lognormal { mu_db: f64, sigma_db: f64, nodes: usize },
    KDist { ms: f64, mean: f64 },
    GeneralizedK { m: f64, ms: f64, mean: f64 },
    GeneralizedGamma { m: f64, shape: f64, mean: f64 },
    /// Extended generalized-K: generalized-Gamma fading (m, shape) over
    /// generalized-Gamma shadowing (ms, shadow_shape).
    Egk { m: f64, shape: f64, ms: f64, shadow_shape: f64, mean: f64 },
    Custom(HyperFoxH),
}

pub(crate) const DEFAULT_SERIES_TERMS: usize = 30;
pub(crate) const DEFAULT_HERMITE_NODES: usize = 20;

// 10 / ln 10, converts natural log to dB.
const DB: f64 = 10.0 / LN_10;

/// β = Γ(m + 1/ξ) / Γ(m), the generalized-Gamma mean normalisation.
pub(crate) fn gg_beta(m: f64, shape: f64) -> Result<f64> {
    Ok((ln_gamma(m + 1.0 / shape)? - ln_gamma(m)?).exp())
}

fn gg_term(weight: f64, m: f64, shape: f64, mean: f64) -> Result<HyperTerm> {
    let c = gg_beta(m, shape)? / mean;
    let h = FoxHParams::new(1, 0, Vec::new(), alloc::vec![(m - 1.0 / shape, 1.0 / shape)])?;
    Ok(HyperTerm::from_ln_eta(weight.ln() + c.ln() - ln_gamma(m)?, c, h))
}

fn egk_term(m: f64, shape: f64, ms: f64, shadow_shape: f64, mean: f64) -> Result<HyperTerm> {
    let c = gg_beta(m, shape)? * gg_beta(ms, shadow_shape)? / mean;
    let h = FoxHParams::new(
        2,
        0,
        Vec::new(),
        alloc::vec![(m - 1.0 / shape, 1.0 / shape), (ms - 1.0 / shadow_shape, 1.0 / shadow_shape)],
    )?;
    Ok(HyperTerm::from_ln_eta(c.ln() - ln_gamma(m)? - ln_gamma(ms)?, c, h))
}

// (1 + x)^(-m) and its x-derivative, for Gamma-type MGFs.
fn gamma_mgf(m: f64, mean: f64, s: f64) -> f64 {
    (-m * (mean * s / m).ln_1p()).exp()
}

fn gamma_dmgf(m: f64, mean: f64, s: f64) -> f64 {
    -mean * (-(m + 1.0) * (mean * s / m).ln_1p()).exp()
}

fn gamma_pdf(m: f64, mean: f64, g: f64) -> Result<f64> {
    let rate = m / mean;
    Ok((m * rate.ln() + (m - 1.0) * g.ln() - rate * g - ln_gamma(m)?).exp())
}

impl ChannelModel {
    /// Hoyt with the default series truncation.
    pub fn hoyt(q: f64, mean: f64) -> Self {
        Self::Hoyt { q, mean, terms: DEFAULT_SERIES_TERMS }
    }

    /// Rice with the default series truncation.
    pub fn rice(n: f64, mean: f64) -> Self {
        Self::Rice { n, mean, terms: DEFAULT_SERIES_TERMS }
    }

    /// Lognormal with the default number of Hermite nodes.
    pub fn lognormal(mu_db: f64, sigma_db: f64) -> Self {
        Self::Lognormal { mu_db, sigma_db, nodes: DEFAULT_HERMITE_NODES }
    }

    /// Short lower-case name, used in diagnostics and the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Self::OneSidedGaussian { .. } => "one_sided_gaussian",
            Self::Exponential { .. } => "exponential",
            Self::Nakagami { .. } => "nakagami",
            Self::Weibull { .. } => "weibull",
            Self::HyperGamma { .. } => "hyper_gamma",
            Self::Hoyt { .. } => "hoyt",
            Self::Rice { .. } => "rice",
            Self::Maxwell { .. } => "maxwell",
            Self::Lognormal { .. } => "lognormal",
            Self::KDist { .. } => "k_dist",
            Self::GeneralizedK { .. } => "generalized_k",
            Self::GeneralizedGamma { .. } => "generalized_gamma",
            Self::Egk { .. } => "egk",
            Self::Custom(_) => "custom",
        }
    }

    /// Checks the parameter ranges of the catalogue.
    pub fn validate(&self) -> Result<()> {
        let mean_ok = |mean: f64| check_param("mean", mean, mean > 0.0, "average SNR must be positive");
        let m_ok = |name, m: f64| check_param(name, m, m >= 0.5, "fading figure must be at least 1/2");
        let shape_ok = |name, x: f64| check_param(name, x, x > 0.0, "shape must be positive");
        match self {
            Self::OneSidedGaussian { mean } | Self::Exponential { mean } | Self::Maxwell { mean } => mean_ok(*mean),
            Self::Nakagami { m, mean } => {
                m_ok("m", *m)?;
                mean_ok(*mean)
            }
            Self::Weibull { shape, mean } => {
                shape_ok("shape", *shape)?;
                mean_ok(*mean)
            }
            Self::HyperGamma { branches } => {
                if branches.is_empty() {
                    return Err(Error::Parameter { name: "branches", value: 0.0, reason: "at least one component" });
                }
                let mut total = 0.0;
                for b in branches {
                    check_param("weight", b.weight, b.weight > 0.0, "component weights must be positive")?;
                    m_ok("m", b.m)?;
                    mean_ok(b.mean)?;
                    total += b.weight;
                }
                check_param("weights", total, (total - 1.0).abs() <= 1e-9, "component weights must sum to one")
            }
            Self::Hoyt { q, mean, terms } => {
                check_param("q", *q, *q > 0.0 && *q < 1.0, "must lie in (0, 1)")?;
                check_param("terms", *terms as f64, *terms >= 1, "need at least one series term")?;
                mean_ok(*mean)
            }
            Self::Rice { n, mean, terms } => {
                check_param("n", *n, *n > 0.0, "line-of-sight figure must be positive")?;
                check_param("terms", *terms as f64, *terms >= 1, "need at least one series term")?;
                mean_ok(*mean)
            }
            Self::Lognormal { mu_db, sigma_db, nodes } => {
                check_param("mu_db", *mu_db, true, "must be finite")?;
                check_param("sigma_db", *sigma_db, *sigma_db >= 0.0, "spread must be non-negative")?;
                check_param("nodes", *nodes as f64, *nodes >= 1, "need at least one Hermite node")
            }
            Self::KDist { ms, mean } => {
                m_ok("ms", *ms)?;
                mean_ok(*mean)
            }
            Self::GeneralizedK { m, ms, mean } => {
                m_ok("m", *m)?;
                m_ok("ms", *ms)?;
                mean_ok(*mean)
            }
            Self::GeneralizedGamma { m, shape, mean } => {
                m_ok("m", *m)?;
                shape_ok("shape", *shape)?;
                mean_ok(*mean)
            }
            Self::Egk { m, shape, ms, shadow_shape, mean } => {
                m_ok("m", *m)?;
                m_ok("ms", *ms)?;
                shape_ok("shape", *shape)?;
                shape_ok("shadow_shape", *shadow_shape)?;
                mean_ok(*mean)
            }
            Self::Custom(h) => HyperFoxH::new(h.terms().to_vec()).map(|_| ()),
        }
    }

    /// E[γ].
    pub fn mean(&self) -> Result<f64> {
        Ok(match self {
            Self::OneSidedGaussian { mean }
            | Self::Exponential { mean }
            | Self::Maxwell { mean }
            | Self::Nakagami { mean, .. }
            | Self::Weibull { mean, .. }
            | Self::Hoyt { mean, .. }
            | Self::Rice { mean, .. }
            | Self::KDist { mean, .. }
            | Self::GeneralizedK { mean, .. }
            | Self::GeneralizedGamma { mean, .. }
            | Self::Egk { mean, .. } => *mean,
            Self::HyperGamma { branches } => branches.iter().map(|b| b.weight * b.mean).sum(),
            Self::Lognormal { mu_db, sigma_db, .. } => {
                let sigma = sigma_db / DB;
                (mu_db / DB + 0.5 * sigma * sigma).exp()
            }
            Self::Custom(h) => h.moment(1.0)?,
        })
    }

    /// The same model with its power scaled by `gain` (> 0).
    pub fn scaled(&self, gain: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            Self::OneSidedGaussian { mean }
            | Self::Exponential { mean }
            | Self::Maxwell { mean }
            | Self::Nakagami { mean, .. }
            | Self::Weibull { mean, .. }
            | Self::Hoyt { mean, .. }
            | Self::Rice { mean, .. }
            | Self::KDist { mean, .. }
            | Self::GeneralizedK { mean, .. }
            | Self::GeneralizedGamma { mean, .. }
            | Self::Egk { mean, .. } => *mean *= gain,
            Self::HyperGamma { branches } => branches.iter_mut().for_each(|b| b.mean *= gain),
            Self::Lognormal { mu_db, .. } => *mu_db += DB * gain.ln(),
            Self::Custom(h) => *h = h.scaled(gain),
        }
        out
    }

    /// Density of the instantaneous SNR at γ > 0.
    pub fn pdf(&self, gamma: f64) -> Result<f64> {
        self.validate()?;
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain { name: "gamma", value: gamma, expected: "finite gamma > 0" });
        }
        let g = gamma;
        Ok(match self {
            Self::OneSidedGaussian { mean } => gamma_pdf(0.5, *mean, g)?,
            Self::Exponential { mean } => (-g / mean).exp() / mean,
            Self::Nakagami { m, mean } => gamma_pdf(*m, *mean, g)?,
            Self::Maxwell { mean } => gamma_pdf(1.5, *mean, g)?,
            Self::Weibull { shape, mean } => gg_pdf(1.0, *shape, *mean, g)?,
            Self::GeneralizedGamma { m, shape, mean } => gg_pdf(*m, *shape, *mean, g)?,
            Self::HyperGamma { branches } => {
                let mut sum = 0.0;
                for b in branches {
                    sum += b.weight * gamma_pdf(b.m, b.mean, g)?;
                }
                sum
            }
            Self::Hoyt { q, mean, .. } => {
                let q2 = q * q;
                let x = (1.0 - q2 * q2) * g / (4.0 * q2 * mean);
                let decay = (1.0 + q2) * g / (2.0 * mean);
                (1.0 + q2) / (2.0 * q * mean) * (-decay).exp() * bessel_i0_scaled(x)?
            }
            Self::Rice { n, mean, .. } => {
                let k = n * n;
                let a = 1.0 + k;
                let y = 2.0 * (k * a * g / mean).sqrt();
                a / mean * (-k - a * g / mean + y).exp() * bessel_i0_scaled(y)?
            }
            Self::Lognormal { mu_db, sigma_db, .. } => {
                if *sigma_db == 0.0 {
                    return Err(Error::Unsupported("density of a degenerate lognormal"));
                }
                let z = (DB * g.ln() - mu_db) / sigma_db;
                DB / ((2.0 * PI).sqrt() * sigma_db * g) * (-0.5 * z * z).exp()
            }
            Self::KDist { ms, mean } => gk_pdf(1.0, *ms, *mean, g)?,
            Self::GeneralizedK { m, ms, mean } => gk_pdf(*m, *ms, *mean, g)?,
            Self::Egk { .. } | Self::Custom(_) => self.to_hyper_foxh()?.pdf(g, &ContourConfig::default())?,
        })
    }

    /// M(s) = E[e^(-sγ)] for s >= 0.
    pub fn mgf(&self, s: f64) -> Result<f64> {
        self.validate()?;
        check_s(s)?;
        if s == 0.0 {
            return Ok(1.0);
        }
        Ok(match self {
            Self::OneSidedGaussian { mean } => gamma_mgf(0.5, *mean, s),
            Self::Exponential { mean } => 1.0 / (1.0 + mean * s),
            Self::Nakagami { m, mean } => gamma_mgf(*m, *mean, s),
            Self::Maxwell { mean } => gamma_mgf(1.5, *mean, s),
            Self::HyperGamma { branches } => branches.iter().map(|b| b.weight * gamma_mgf(b.m, b.mean, s)).sum(),
            Self::Hoyt { q, mean, .. } => {
                let (base, _) = hoyt_base(*q, *mean, s);
                base.powf(-0.5)
            }
            Self::Rice { n, mean, .. } => {
                let a = 1.0 + n * n;
                let x = mean * s;
                a / (a + x) * (-n * n * x / (a + x)).exp()
            }
            Self::Lognormal { .. } => {
                let mut sum = 0.0;
                for (w, omega) in self.lognormal_atoms()? {
                    sum += w * (-omega * s).exp();
                }
                sum
            }
            _ => self.to_hyper_foxh()?.mgf(s, &ContourConfig::default())?,
        })
    }

    /// dM/ds for s >= 0; equals -E[γ] at zero.
    pub fn dmgf(&self, s: f64) -> Result<f64> {
        self.validate()?;
        check_s(s)?;
        if s == 0.0 {
            return Ok(-self.mean()?);
        }
        Ok(match self {
            Self::OneSidedGaussian { mean } => gamma_dmgf(0.5, *mean, s),
            Self::Exponential { mean } => -mean / ((1.0 + mean * s) * (1.0 + mean * s)),
            Self::Nakagami { m, mean } => gamma_dmgf(*m, *mean, s),
            Self::Maxwell { mean } => gamma_dmgf(1.5, *mean, s),
            Self::HyperGamma { branches } => branches.iter().map(|b| b.weight * gamma_dmgf(b.m, b.mean, s)).sum(),
            Self::Hoyt { q, mean, .. } => {
                let (base, slope) = hoyt_base(*q, *mean, s);
                -0.5 * slope * base.powf(-1.5)
            }
            Self::Rice { n, mean, .. } => {
                let a = 1.0 + n * n;
                let x = mean * s;
                let r = 1.0 + x / a;
                -mean * (1.0 + x / (a * a)) / (r * r * r) * (-n * n * x / (a + x)).exp()
            }
            Self::Lognormal { .. } => {
                let mut sum = 0.0;
                for (w, omega) in self.lognormal_atoms()? {
                    sum -= w * omega * (-omega * s).exp();
                }
                sum
            }
            _ => self.to_hyper_foxh()?.dmgf(s, &ContourConfig::default())?,
        })
    }

    /// (probability, location) pairs of the Gauss–Hermite lognormal mixture.
    fn lognormal_atoms(&self) -> Result<Vec<(f64, f64)>> {
        let Self::Lognormal { mu_db, sigma_db, nodes } = self else {
            return Err(Error::Unsupported("Hermite atoms of a non-lognormal model"));
        };
        let rule = gauss_hermite_nodes(*nodes)?;
        Ok(rule
            .iter()
            .map(|(u, w)| {
                let omega = 10f64.powf((2f64.sqrt() * sigma_db * u + mu_db) / 10.0);
                (w / PI.sqrt(), omega)
            })
            .collect())
    }

    /// Hyper-Fox H form. Hoyt, Rice and lognormal are truncated series; the
    /// rest are exact.
    pub fn to_hyper_foxh(&self) -> Result<HyperFoxH> {
        self.validate()?;
        let terms = match self {
            Self::OneSidedGaussian { mean } => alloc::vec![gg_term(1.0, 0.5, 1.0, *mean)?],
            Self::Exponential { mean } => alloc::vec![gg_term(1.0, 1.0, 1.0, *mean)?],
            Self::Nakagami { m, mean } => alloc::vec![gg_term(1.0, *m, 1.0, *mean)?],
            Self::Maxwell { mean } => alloc::vec![gg_term(1.0, 1.5, 1.0, *mean)?],
            Self::Weibull { shape, mean } => alloc::vec![gg_term(1.0, 1.0, *shape, *mean)?],
            Self::GeneralizedGamma { m, shape, mean } => alloc::vec![gg_term(1.0, *m, *shape, *mean)?],
            Self::HyperGamma { branches } => branches
                .iter()
                .map(|b| gg_term(b.weight, b.m, 1.0, b.mean))
                .collect::<Result<_>>()?,
            Self::Hoyt { q, mean, terms } => {
                let q2 = q * q;
                let r2 = ((1.0 - q2) / (1.0 + q2)).powi(2);
                let mut out = Vec::with_capacity(*terms);
                // Φ_k = 2q/(√π (1+q²)) Γ(k+1/2)/k! r^(2k), built by recurrence
                let mut phi = 2.0 * q / (1.0 + q2);
                for k in 0..*terms {
                    let kf = k as f64;
                    let m = 2.0 * kf + 1.0;
                    let omega = 4.0 * m * q2 * mean / ((1.0 + q2) * (1.0 + q2));
                    out.push(gg_term(phi, m, 1.0, omega)?);
                    phi *= (kf + 0.5) / (kf + 1.0) * r2;
                }
                out
            }
            Self::Rice { n, mean, terms } => {
                let k_factor = n * n;
                let mut out = Vec::with_capacity(*terms);
                let mut psi = (-k_factor).exp();
                for k in 0..*terms {
                    let m = k as f64 + 1.0;
                    out.push(gg_term(psi, m, 1.0, m * mean / (1.0 + k_factor))?);
                    psi *= k_factor / m;
                }
                out
            }
            Self::Lognormal { .. } => self
                .lognormal_atoms()?
                .into_iter()
                .map(|(w, omega)| HyperTerm::point_mass(w, omega))
                .collect(),
            Self::KDist { ms, mean } => alloc::vec![egk_term(1.0, 1.0, *ms, 1.0, *mean)?],
            Self::GeneralizedK { m, ms, mean } => alloc::vec![egk_term(*m, 1.0, *ms, 1.0, *mean)?],
            Self::Egk { m, shape, ms, shadow_shape, mean } => {
                alloc::vec![egk_term(*m, *shape, *ms, *shadow_shape, *mean)?]
            }
            Self::Custom(h) => return Ok(h.clone()),
        };
        HyperFoxH::new(terms)
    }

    /// A sampler for this model. Custom hyper-Fox models have no generic sampler.
    pub fn sampler(&self) -> Result<Sampler> {
        self.validate()?;
        Sampler::new(self)
    }
}

fn check_s(s: f64) -> Result<()> {
    if s >= 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { name: "s", value: s, expected: "finite s >= 0" })
    }
}

// 1 + 2γ̄s + (2γ̄s q)²/(1+q²)² and its s-derivative.
fn hoyt_base(q: f64, mean: f64, s: f64) -> (f64, f64) {
    let k = q * q / ((1.0 + q * q) * (1.0 + q * q));
    let x = 2.0 * mean * s;
    (1.0 + x + x * x * k, 2.0 * mean * (1.0 + 2.0 * x * k))
}

fn gg_pdf(m: f64, shape: f64, mean: f64, g: f64) -> Result<f64> {
    let scale = gg_beta(m, shape)? / mean;
    let y = scale * g;
    Ok((shape.ln() - ln_gamma(m)? + scale.ln() + (m * shape - 1.0) * y.ln() - y.powf(shape)).exp())
}

// 2 (m ms/γ̄)^((m+ms)/2) γ^((m+ms)/2 - 1) K_{ms-m}(2√(m ms γ/γ̄)) / (Γ(m) Γ(ms))
fn gk_pdf(m: f64, ms: f64, mean: f64, g: f64) -> Result<f64> {
    let rate = m * ms / mean;
    let half = 0.5 * (m + ms);
    let arg = 2.0 * (rate * g).sqrt();
    let log = 2f64.ln() + half * rate.ln() + (half - 1.0) * g.ln() - ln_gamma(m)? - ln_gamma(ms)? - arg;
    Ok(log.exp() * bessel_k_scaled(ms - m, arg)?)
}
