use alloc::vec::Vec;

use num_traits::Float;

use super::metric::MetricSpec;
use crate::error::{Error, Result};
use crate::mellin::{meijer_g, ContourConfig};
use crate::specfn::{gamma, gamma_q, incomplete_beta, incomplete_beta_reflected, ln_gamma, pfq};

/// Finite stand-in for d → ∞ in the incomplete-beta representation.
pub const BETA_LIMIT_D: f64 = 1e6;

// The n = 1 G form is subtracted from 1, so it needs a tighter contour.
pub(crate) fn meijer_config() -> ContourConfig {
    ContourConfig { rel_tol: 1e-12, ..ContourConfig::default() }
}

fn check_snr(snr: f64) -> Result<()> {
    if snr >= 0.0 && !snr.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain { name: "snr", value: snr, expected: "snr >= 0" })
    }
}

// ½(1 - x) for error probability, x for n = 2; x is the normalised G or series term
fn assemble(n: u8, x: f64) -> f64 {
    if n == 1 {
        0.5 * (1.0 - x)
    } else {
        x
    }
}

/// Conditional measure at SNR γ: Γ(b, aγ)/(2Γ(b)) for n = 1, log(1 + aγ)
/// for the capacity row, the Meijer G form otherwise.
pub fn conditional_up(metric: &MetricSpec, snr: f64) -> Result<f64> {
    check_snr(snr)?;
    let x = metric.a * snr;
    match metric.n {
        1 => Ok(0.5 * gamma_q(metric.b, x)?),
        _ if metric.b == 1.0 => Ok(x.ln_1p()),
        _ => conditional_up_meijer(metric, snr),
    }
}

/// The unified Meijer G form
/// 1 - n/2 {1 - (-1)^n G^{1,n}_{n,2}[aγ | 1,...,1; b, 0] / Γ(b)}.
pub fn conditional_up_meijer(metric: &MetricSpec, snr: f64) -> Result<f64> {
    metric.validate()?;
    check_snr(snr)?;
    if snr == 0.0 {
        return Ok(if metric.n == 1 { 0.5 } else { 0.0 });
    }
    let n = usize::from(metric.n);
    let ones: Vec<f64> = core::iter::repeat_n(1.0, n).collect();
    let g = meijer_g(1, n, &ones, &[metric.b, 0.0], metric.a * snr, &meijer_config())?;
    Ok(assemble(metric.n, g / gamma(metric.b)?))
}

/// The hypergeometric form
/// 1 - n/2 {1 - (-1)^n (aγ)^b/Γ(b+1) nF1(b,...,b; b+1; -aγ)}.
///
/// It matches the other forms on every named metric row. For n = 2 with
/// b < 1 it is smaller than [`conditional_up_meijer`] by the factor Γ(b).
pub fn conditional_up_hypergeometric(metric: &MetricSpec, snr: f64) -> Result<f64> {
    metric.validate()?;
    check_snr(snr)?;
    let (a, b) = (metric.a, metric.b);
    let x = a * snr;
    let numer: Vec<f64> = core::iter::repeat_n(b, usize::from(metric.n)).collect();
    let series = pfq(&numer, &[b + 1.0], -x)?;
    Ok(assemble(metric.n, x.powf(b) / gamma(b + 1.0)? * series))
}

/// Alternative representations of the conditional measure, for
/// cross-checking. Entries that only exist for one family are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalIdentities {
    /// [`conditional_up`].
    pub closed: f64,
    /// [`conditional_up_meijer`].
    pub meijer: f64,
    /// [`conditional_up_hypergeometric`].
    pub hypergeometric: f64,
    /// Incomplete-beta form with d = [`BETA_LIMIT_D`] (error probability).
    pub beta_limit: Option<f64>,
    /// -B(-aγ; 1, 0) (capacity).
    pub beta_capacity: Option<f64>,
    /// aγ 2F1(1, 1; 2; -aγ) (capacity).
    pub gauss: Option<f64>,
}

impl ConditionalIdentities {
    /// Every available value, `closed` first.
    pub fn values(&self) -> Vec<f64> {
        let mut v = alloc::vec![self.closed, self.meijer, self.hypergeometric];
        v.extend([self.beta_limit, self.beta_capacity, self.gauss].into_iter().flatten());
        v
    }
}

/// Evaluates every representation of the conditional measure at γ > 0.
pub fn conditional_up_identities(metric: &MetricSpec, snr: f64) -> Result<ConditionalIdentities> {
    metric.validate()?;
    if !(snr > 0.0 && snr.is_finite()) {
        return Err(Error::Domain { name: "snr", value: snr, expected: "finite snr > 0" });
    }
    let x = metric.a * snr;
    let beta_limit = if metric.n == 1 {
        // 1/2 - d^b/(2Γ(b)) e^{-iπb} B(-aγ/d; b, 1-d)
        let d = BETA_LIMIT_D;
        let b = metric.b;
        let v = incomplete_beta_reflected(x / d, b, 1.0 - d)?;
        Some(0.5 - (b * d.ln() - ln_gamma(b)?).exp() * v / 2.0)
    } else {
        None
    };
    let capacity = metric.is_capacity();
    let beta_capacity = if capacity { Some(-incomplete_beta(-x, 1.0, 0.0)?) } else { None };
    let gauss = if capacity { Some(x * pfq(&[1.0, 1.0], &[2.0], -x)?) } else { None };
    Ok(ConditionalIdentities {
        closed: conditional_up(metric, snr)?,
        meijer: conditional_up_meijer(metric, snr)?,
        hypergeometric: conditional_up_hypergeometric(metric, snr)?,
        beta_limit,
        beta_capacity,
        gauss,
    })
}
