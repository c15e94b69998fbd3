use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::mellin::{fox_h_scaled, ContourConfig, FoxHParams};

/// One term η · H[c γ] of a hyper-Fox density.
///
/// The weight is kept as ln η as well, since normalisers such as 1/Γ(m_s)
/// underflow for heavy shadowing while the Fox kernel overflows.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperTerm {
    ln_eta: f64,
    c: f64,
    h: FoxHParams,
}

impl HyperTerm {
    pub fn new(eta: f64, c: f64, h: FoxHParams) -> Self {
        Self { ln_eta: eta.ln(), c, h }
    }

    /// Builds a term from ln η.
    pub fn from_ln_eta(ln_eta: f64, c: f64, h: FoxHParams) -> Self {
        Self { ln_eta, c, h }
    }

    /// A point mass of weight `weight` at γ = `at`, written as η H^{0,0}_{0,0}[c γ].
    pub fn point_mass(weight: f64, at: f64) -> Self {
        Self::new(weight / at, 1.0 / at, FoxHParams::point_mass())
    }

    pub fn eta(&self) -> f64 {
        self.ln_eta.exp()
    }

    pub fn ln_eta(&self) -> f64 {
        self.ln_eta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn h(&self) -> &FoxHParams {
        &self.h
    }

    /// ∫ γ^(k) η H[c γ] dγ.
    fn moment(&self, k: f64) -> Result<f64> {
        let ln_pre = self.ln_eta - (k + 1.0) * self.c.ln();
        if self.h.is_point_mass() {
            return Ok(ln_pre.exp());
        }
        let strip = self.h.strip()?;
        if !strip.contains(k + 1.0) {
            return Err(Error::Domain {
                name: "moment order",
                value: k,
                expected: "k + 1 inside the Mellin strip of the density",
            });
        }
        let v = self.h.ln_kernel(Complex64::new(k + 1.0, 0.0));
        Ok((ln_pre + v.re).exp() * v.im.cos())
    }

    // ln η + ln prefactor combined with a scaled contour value.
    fn weighted(&self, ln_pre: f64, params: &FoxHParams, z: f64, cfg: &ContourConfig) -> Result<f64> {
        let v = fox_h_scaled(params, z, cfg)?;
        if v.mantissa == 0.0 {
            return Ok(0.0);
        }
        Ok(v.mantissa.signum() * (self.ln_eta + ln_pre + v.ln_abs()).exp())
    }

    // Lead pair (1,1) gives the MGF kernel, (0,1) the derivative kernel.
    fn transform_params(&self, lead: f64) -> Result<FoxHParams> {
        fn shift(v: &[(f64, f64)]) -> impl Iterator<Item = (f64, f64)> + '_ {
            v.iter().map(|&(x, s)| (x + s, s))
        }
        let n = self.h.n();
        let mut upper = Vec::with_capacity(self.h.p() + 1);
        upper.push((lead, 1.0));
        upper.extend(shift(self.h.upper()));
        let lower = shift(self.h.lower()).collect();
        FoxHParams::new(self.h.m(), n + 1, upper, lower)
    }
}

/// A finite mixture of Fox H densities, the common form every catalogue
/// model is mapped to.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperFoxH {
    terms: Vec<HyperTerm>,
}

impl HyperFoxH {
    /// Validates the terms: positive finite scales, finite weights, a
    /// non-empty strip for every non-point-mass term and a non-empty
    /// intersection of those strips.
    pub fn new(terms: Vec<HyperTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Parameter { name: "terms", value: 0.0, reason: "at least one term is required" });
        }
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for t in &terms {
            if !(t.c > 0.0 && t.c.is_finite()) {
                return Err(Error::Parameter { name: "c", value: t.c, reason: "must be positive and finite" });
            }
            if t.ln_eta.is_nan() || t.ln_eta == f64::INFINITY {
                return Err(Error::Parameter { name: "eta", value: t.eta(), reason: "must be positive and finite" });
            }
            if !t.h.is_point_mass() {
                let s = t.h.strip()?;
                lo = lo.max(s.lower);
                hi = hi.min(s.upper);
            }
        }
        if lo >= hi {
            return Err(Error::EmptyStrip { left: lo, right: hi });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[HyperTerm] {
        &self.terms
    }

    /// The density of the power scaled by `gain` (mean multiplied by `gain`).
    pub fn scaled(&self, gain: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| HyperTerm { ln_eta: t.ln_eta - gain.ln(), c: t.c / gain, h: t.h.clone() })
            .collect();
        Self { terms }
    }

    /// Density at γ > 0. Point-mass terms have no density and give an error.
    pub fn pdf(&self, gamma: f64, cfg: &ContourConfig) -> Result<f64> {
        if !(gamma > 0.0) {
            return Err(Error::Domain { name: "gamma", value: gamma, expected: "gamma > 0" });
        }
        let mut sum = 0.0;
        for t in &self.terms {
            if t.h.is_point_mass() {
                return Err(Error::Unsupported("density of a point-mass mixture"));
            }
            sum += t.weighted(0.0, &t.h, t.c * gamma, cfg)?;
        }
        Ok(sum)
    }

    /// Total probability mass Σ η/c Θ(1).
    pub fn mass(&self) -> Result<f64> {
        self.terms.iter().map(|t| t.moment(0.0)).sum()
    }

    /// E[γ^k] for real k with k + 1 inside every strip.
    pub fn moment(&self, k: f64) -> Result<f64> {
        self.terms.iter().map(|t| t.moment(k)).sum()
    }

    /// E[e^(-sγ)] from the shifted Fox H kernels at argument c/s.
    pub fn mgf(&self, s: f64, cfg: &ContourConfig) -> Result<f64> {
        check_s(s)?;
        if s == 0.0 {
            return self.mass();
        }
        let mut sum = 0.0;
        for t in &self.terms {
            sum += if t.h.is_point_mass() {
                (t.ln_eta - t.c.ln() - s / t.c).exp()
            } else {
                t.weighted(-t.c.ln(), &t.transform_params(1.0)?, t.c / s, cfg)?
            };
        }
        Ok(sum)
    }

    /// dM/ds.
    pub fn dmgf(&self, s: f64, cfg: &ContourConfig) -> Result<f64> {
        check_s(s)?;
        if s == 0.0 {
            return Ok(-self.moment(1.0)?);
        }
        let mut sum = 0.0;
        for t in &self.terms {
            sum -= if t.h.is_point_mass() {
                (t.ln_eta - 2.0 * t.c.ln() - s / t.c).exp()
            } else {
                t.weighted(-(t.c * s).ln(), &t.transform_params(0.0)?, t.c / s, cfg)?
            };
        }
        Ok(sum)
    }
}

fn check_s(s: f64) -> Result<()> {
    if s >= 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { name: "s", value: s, expected: "finite s >= 0" })
    }
}

/// MGF of a hyper-Fox density with the default contour settings.
pub fn hyper_mgf(h: &HyperFoxH, s: f64) -> Result<f64> {
    h.mgf(s, &ContourConfig::default())
}

/// Derivative of [`hyper_mgf`].
pub fn hyper_dmgf(h: &HyperFoxH, s: f64) -> Result<f64> {
    h.dmgf(s, &ContourConfig::default())
}
