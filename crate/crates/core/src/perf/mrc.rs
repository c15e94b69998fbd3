use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_traits::Float;

use super::conditional::meijer_config;
use super::metric::MetricSpec;
use crate::error::{check_param, Error, Result};
use crate::fading::ChannelModel;
use crate::integrate::{integrate, Tolerance};
use crate::mellin::{meijer_g, ContourConfig};
use crate::specfn::{beta_reg, exp_integral_e1, gamma, gcq_nodes};

/// Default number of Chebyshev nodes.
pub const DEFAULT_GCQ_NODES: usize = 64;

// v = λ cot φ spreads the nodes over about ±λ·2N/π on the log scale.
const SPLIT_LAMBDA: f64 = 6.0;

/// Joint MGF E[e^(-s Σ γ_ℓ)] of the branch SNRs feeding the combiner.
pub trait JointMgf {
    fn mgf(&self, s: f64) -> Result<f64>;

    /// dM/ds. The default is a central difference with step
    /// 1e-5·max(1, s), one-sided near s = 0.
    fn dmgf(&self, s: f64) -> Result<f64> {
        finite_difference(|x| self.mgf(x), s)
    }

    /// Mean combined SNR when known; only used to place nodes.
    fn mean(&self) -> Option<f64> {
        None
    }
}

fn finite_difference(f: impl Fn(f64) -> Result<f64>, s: f64) -> Result<f64> {
    let h = 1e-5 * s.max(1.0);
    if s >= h {
        Ok((f(s + h)? - f(s - h)?) / (2.0 * h))
    } else {
        Ok((4.0 * f(s + h)? - 3.0 * f(s)? - f(s + 2.0 * h)?) / (2.0 * h))
    }
}

/// A joint MGF given by closures.
pub struct JointMgfFn<F, D = fn(f64) -> Result<f64>> {
    eval: F,
    deriv: Option<D>,
    mean: Option<f64>,
}

impl<F: Fn(f64) -> Result<f64>> JointMgfFn<F> {
    /// MGF only; the derivative falls back to finite differences.
    pub fn new(eval: F) -> Self {
        Self { eval, deriv: None, mean: None }
    }
}

impl<F: Fn(f64) -> Result<f64>, D: Fn(f64) -> Result<f64>> JointMgfFn<F, D> {
    pub fn with_derivative(eval: F, deriv: D) -> Self {
        Self { eval, deriv: Some(deriv), mean: None }
    }

    pub fn with_mean(mut self, mean: f64) -> Self {
        self.mean = Some(mean);
        self
    }
}

impl<F: Fn(f64) -> Result<f64>, D: Fn(f64) -> Result<f64>> JointMgf for JointMgfFn<F, D> {
    fn mgf(&self, s: f64) -> Result<f64> {
        (self.eval)(s)
    }

    fn dmgf(&self, s: f64) -> Result<f64> {
        match &self.deriv {
            Some(d) => d(s),
            None => finite_difference(&self.eval, s),
        }
    }

    fn mean(&self) -> Option<f64> {
        self.mean
    }
}

/// Independent branches: the joint MGF is the product of branch MGFs.
///
/// Identical branches are grouped, so L copies of one model cost a single
/// MGF evaluation per point.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependentBranches {
    models: Vec<ChannelModel>,
    groups: Vec<(ChannelModel, i32)>,
}

impl IndependentBranches {
    pub fn new(models: Vec<ChannelModel>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::Parameter { name: "branches", value: 0.0, reason: "at least one branch is required" });
        }
        let mut groups: Vec<(ChannelModel, i32)> = Vec::new();
        for m in &models {
            m.validate()?;
            match groups.iter_mut().find(|g| g.0 == *m) {
                Some(g) => g.1 += 1,
                None => groups.push((m.clone(), 1)),
            }
        }
        Ok(Self { models, groups })
    }

    pub fn models(&self) -> &[ChannelModel] {
        &self.models
    }
}

impl JointMgf for IndependentBranches {
    fn mgf(&self, s: f64) -> Result<f64> {
        self.groups.iter().try_fold(1.0, |acc, (m, k)| Ok(acc * m.mgf(s)?.powi(*k)))
    }

    // product rule over groups: Σ_g k_g M_g^(k_g - 1) M'_g Π_{h≠g} M_h^k_h
    fn dmgf(&self, s: f64) -> Result<f64> {
        let values: Vec<f64> = self.groups.iter().map(|(m, _)| m.mgf(s)).collect::<Result<_>>()?;
        let mut sum = 0.0;
        for (g, (m, k)) in self.groups.iter().enumerate() {
            let others: f64 = self
                .groups
                .iter()
                .zip(&values)
                .enumerate()
                .filter(|&(h, _)| h != g)
                .map(|(_, ((_, kh), v))| v.powi(*kh))
                .product();
            let own = f64::from(*k) * values[g].powi(k - 1);
            if others != 0.0 && own != 0.0 {
                sum += own * m.dmgf(s)? * others;
            }
        }
        Ok(sum)
    }

    fn mean(&self) -> Option<f64> {
        self.models.iter().map(|m| m.mean().ok()).sum()
    }
}

/// How the integral over s is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MrcRule {
    /// Chebyshev midpoint nodes on a logarithmic map of the complementary
    /// integrand, which has no cancellation for small error rates.
    #[default]
    Split,
    /// The tangent-mapped Chebyshev rule applied literally to
    /// 1 - n/2 {1 + (-1)^n Σ w G(a/s) M'(s)}.
    Tangent,
    /// Adaptive Gauss–Kronrod over s = tan θ.
    Adaptive,
}

/// G^{1,n}_{n+1,2}[x | 1,...,1; b, 0] / Γ(b), the weight of M'(s) at x = a/s.
///
/// For n = 1 this is I_x(b, 1-b) below x = 1 and 1 above, a step at
/// x = 1 when b = 1. For the capacity row it is E1(1/x). Other n = 2 rows
/// go through the contour.
pub fn mrc_kernel(metric: &MetricSpec, x: f64) -> Result<f64> {
    metric.validate()?;
    if !(x >= 0.0) {
        return Err(Error::Domain { name: "x", value: x, expected: "x >= 0" });
    }
    let b = metric.b;
    if metric.n == 1 {
        return Ok(if x >= 1.0 {
            1.0
        } else if b == 1.0 {
            0.0
        } else {
            beta_reg(x, b, 1.0 - b)?
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if metric.is_capacity() {
        return exp_integral_e1(1.0 / x);
    }
    Ok(meijer_g(1, 2, &[1.0, 1.0, 1.0], &[b, 0.0], x, &ContourConfig::default())? / gamma(b)?)
}

// Weight of -M'(s) in the complementary form P = ∫ weight(s) (-M'(s)) ds.
// `excess` is s - a, passed separately to keep 1 - a/s accurate near s = a.
fn complement_weight(metric: &MetricSpec, s: f64, excess: f64) -> Result<f64> {
    if metric.n == 2 {
        return mrc_kernel(metric, metric.a / s);
    }
    if excess <= 0.0 {
        return Ok(0.0);
    }
    let b = metric.b;
    let half = if b == 1.0 { 1.0 } else { beta_reg((excess / s).min(1.0), 1.0 - b, b)? };
    Ok(0.5 * half)
}

fn check_nodes(n_nodes: usize) -> Result<()> {
    if n_nodes == 0 {
        Err(Error::Domain { name: "n_nodes", value: 0.0, expected: "at least one node" })
    } else {
        Ok(())
    }
}

/// Average measure after maximal ratio combining, with the default rule.
pub fn aup_mrc(joint: &dyn JointMgf, metric: &MetricSpec, n_nodes: usize) -> Result<f64> {
    aup_mrc_with_rule(joint, metric, n_nodes, MrcRule::Split)
}

/// Average measure after maximal ratio combining.
///
/// `n_nodes` is ignored by [`MrcRule::Adaptive`].
pub fn aup_mrc_with_rule(joint: &dyn JointMgf, metric: &MetricSpec, n_nodes: usize, rule: MrcRule) -> Result<f64> {
    metric.validate()?;
    match rule {
        MrcRule::Split => split(joint, metric, n_nodes),
        MrcRule::Tangent => tangent(joint, metric, n_nodes),
        MrcRule::Adaptive => adaptive(joint, metric),
    }
}

fn split(joint: &dyn JointMgf, metric: &MetricSpec, n_nodes: usize) -> Result<f64> {
    check_nodes(n_nodes)?;
    let a = metric.a;
    let mean = joint.mean().filter(|m| *m > 0.0 && m.is_finite());
    // error rates start at s = a; capacity spans both sides of its scale
    let scale = match (metric.n, mean) {
        (1, Some(mu)) => (a * a.max(1.0 / mu)).sqrt(),
        (1, None) => a,
        (_, Some(mu)) => (a / mu).sqrt(),
        (_, None) => a,
    };
    let nf = n_nodes as f64;
    let mut sum = 0.0;
    for k in 1..=n_nodes {
        let phi = (2 * k - 1) as f64 * PI / (2.0 * nf);
        let sin = phi.sin();
        let v = SPLIT_LAMBDA * phi.cos() / sin;
        let stretch = scale * v.exp();
        let (s, excess) = if metric.n == 1 { (a + stretch, stretch) } else { (stretch, stretch - a) };
        if !s.is_finite() || stretch == 0.0 {
            continue;
        }
        let weight = complement_weight(metric, s, excess)?;
        if weight == 0.0 {
            continue;
        }
        let d = joint.dmgf(s)?;
        if !d.is_finite() {
            return Err(Error::NonFinite { what: "MGF derivative", at: s });
        }
        sum -= weight * d * stretch * SPLIT_LAMBDA / (sin * sin);
    }
    Ok(sum * PI / nf)
}

fn tangent(joint: &dyn JointMgf, metric: &MetricSpec, n_nodes: usize) -> Result<f64> {
    check_nodes(n_nodes)?;
    let rule = gcq_nodes(n_nodes)?;
    let mut sum = 0.0;
    for (s, w) in rule.iter() {
        let d = joint.dmgf(s)?;
        if !d.is_finite() {
            return Err(Error::NonFinite { what: "MGF derivative", at: s });
        }
        sum += w * mrc_kernel(metric, metric.a / s)? * d;
    }
    Ok(if metric.n == 1 { 0.5 * (1.0 + sum) } else { -sum })
}

fn adaptive(joint: &dyn JointMgf, metric: &MetricSpec) -> Result<f64> {
    let a = metric.a;
    let f = |theta: f64| -> Result<f64> {
        let (sin, cos) = theta.sin_cos();
        let s = sin / cos;
        if !s.is_finite() || cos <= 0.0 {
            return Ok(0.0);
        }
        let weight = complement_weight(metric, s, s - a)?;
        if weight == 0.0 {
            return Ok(0.0);
        }
        Ok(-weight * joint.dmgf(s)? / (cos * cos))
    };
    // MGF derivatives from the contour carry ~1e-9 relative noise
    let tol = Tolerance::new(1e-15, 1e-8);
    let knee = a.atan();
    let mut total = integrate(f, knee, FRAC_PI_2, tol)?.value;
    if metric.n == 2 {
        total += integrate(f, 0.0, knee, tol)?.value;
    }
    Ok(total)
}

/// Maximal ratio combining over independent branches.
pub fn aup_mrc_independent(models: &[ChannelModel], metric: &MetricSpec, n_nodes: usize) -> Result<f64> {
    aup_mrc(&IndependentBranches::new(models.to_vec())?, metric, n_nodes)
}

/// Closed form for L identical Nakagami-m branches, whose sum is Gamma
/// distributed with shape mL and scale mean/m.
pub fn aup_nakagami_identical_mrc(m: f64, mean: f64, branches: usize, metric: &MetricSpec) -> Result<f64> {
    check_param("m", m, m >= 0.5, "must be at least 0.5")?;
    check_param("mean", mean, mean > 0.0, "must be positive")?;
    if branches == 0 {
        return Err(Error::Parameter { name: "branches", value: 0.0, reason: "at least one branch is required" });
    }
    metric.validate()?;
    let (a, b) = (metric.a, metric.b);
    let ml = m * branches as f64;
    let x = m / (a * mean);
    let cfg = meijer_config();
    if metric.n == 1 {
        let g = meijer_g(1, 2, &[1.0, 1.0 - b], &[ml, 0.0], x, &cfg)?;
        Ok(g / (2.0 * gamma(b)? * gamma(ml)?))
    } else {
        let g = meijer_g(3, 1, &[1.0 - b, 1.0], &[0.0, 0.0, ml], x, &cfg)?;
        Ok(g / (gamma(b)? * gamma(ml)?))
    }
}
