use alloc::vec::Vec;

use num_traits::Float;

use super::conditional::conditional_up;
use super::metric::MetricSpec;
use crate::error::Result;
use crate::fading::{ChannelModel, HyperFoxH};
use crate::integrate::{integrate_positive, Tolerance};
use crate::mellin::{fox_h_scaled, ContourConfig, FoxHParams};
use crate::specfn::{gamma, gauss_hermite_nodes};

// Tighter than the 1e-8 absolute target so that small error rates keep
// relative accuracy too.
const QUADRATURE_TOL: Tolerance = Tolerance::new(1e-16, 1e-10);

/// Averages the conditional measure over the model density by adaptive
/// quadrature on a logarithmic scale.
pub fn aup_single_quadrature(model: &ChannelModel, metric: &MetricSpec) -> Result<f64> {
    model.validate()?;
    metric.validate()?;
    if let ChannelModel::Lognormal { mu_db, sigma_db: s, .. } = *model {
        if s == 0.0 {
            return conditional_up(metric, 10f64.powf(mu_db / 10.0));
        }
    }
    let center = model.mean()?;
    let est = integrate_positive(
        |g| {
            let p = model.pdf(g)?;
            if p == 0.0 {
                return Ok(0.0);
            }
            Ok(conditional_up(metric, g)? * p)
        },
        center,
        QUADRATURE_TOL,
    )?;
    Ok(est.value)
}

fn shift(v: &[(f64, f64)]) -> impl Iterator<Item = (f64, f64)> + '_ {
    v.iter().map(|&(x, s)| (x + s, s))
}

// Parameters of ∫ P(γ) H[cγ] dγ as one Fox H function of c/a.
//
// For n = 1 this is the error probability itself, with kernel
// Γ(-u) Γ(b-u) / Γ(1-u) against the shifted density kernel. For n = 2 the
// kernel is Γ(u)² Γ(b-u) / Γ(1+u). `direct` builds the n = 1 form that
// integrates the lower incomplete gamma instead, so the result is
// ½(1 - Σ/Γ(b)).
fn average_params(h: &FoxHParams, b: f64, n: u8, direct: bool) -> Result<FoxHParams> {
    let (m, nn) = (h.m(), h.n());
    let mut upper = Vec::with_capacity(h.p() + 2);
    let mut lower = Vec::with_capacity(h.q() + 2);
    if n == 1 && !direct {
        upper.extend([(1.0, 1.0), (1.0 - b, 1.0)]);
        upper.extend(shift(h.upper()));
        lower.extend(shift(h.lower()));
        lower.push((0.0, 1.0));
        return FoxHParams::new(m, nn + 2, upper, lower);
    }
    upper.push((1.0 - b, 1.0));
    upper.extend(shift(h.upper()));
    upper.push((1.0, 1.0));
    lower.extend(core::iter::repeat_n((0.0, 1.0), usize::from(n)));
    lower.extend(shift(h.lower()));
    FoxHParams::new(m + usize::from(n), nn + 1, upper, lower)
}

// Σ over terms of the averaged measure. Contour terms are divided by
// Γ(b), and by 2 as well for the n = 1 probability; point masses use the
// conditional measure directly. With `direct` each term is the x of
// ½(1 - x) for n = 1 instead of its share of the probability.
fn term_sum(h: &HyperFoxH, metric: &MetricSpec, direct: bool) -> Result<f64> {
    let cfg = ContourConfig::default();
    let bep = metric.n == 1;
    let norm = gamma(metric.b)? * if bep && !direct { 2.0 } else { 1.0 };
    let mut sum = 0.0;
    for t in h.terms() {
        // η/c is the term's mass
        let ln_w = t.ln_eta() - t.c().ln();
        if t.h().is_point_mass() {
            let p = conditional_up(metric, 1.0 / t.c())?;
            sum += ln_w.exp() * if direct && bep { 1.0 - 2.0 * p } else { p };
            continue;
        }
        let params = average_params(t.h(), metric.b, metric.n, direct)?;
        let v = fox_h_scaled(&params, t.c() / metric.a, &cfg)?;
        if v.mantissa != 0.0 {
            sum += v.mantissa.signum() * (ln_w + v.ln_abs()).exp() / norm;
        }
    }
    Ok(sum)
}

/// Closed form over a hyper-Fox density: one Fox H function per term.
///
/// Error probabilities are evaluated directly rather than as ½(1 - x),
/// so small values keep their relative accuracy.
pub fn aup_single_closed(h: &HyperFoxH, metric: &MetricSpec) -> Result<f64> {
    metric.validate()?;
    term_sum(h, metric, false)
}

/// The unified closed form 1 - n/2 {1 - (-1)^n Σ/Γ(b)} term by term, kept
/// as a cross-check on [`aup_single_closed`]. It loses relative accuracy
/// once the error probability drops far below one half.
pub fn aup_single_closed_direct(h: &HyperFoxH, metric: &MetricSpec) -> Result<f64> {
    metric.validate()?;
    let x = term_sum(h, metric, true)?;
    Ok(if metric.n == 1 { 0.5 * (1.0 - x) } else { x })
}

/// Generalized Nakagami-m (generalized Gamma) closed form.
pub fn aup_gnm(m: f64, shape: f64, mean: f64, metric: &MetricSpec) -> Result<f64> {
    let model = ChannelModel::GeneralizedGamma { m, shape, mean };
    model.validate()?;
    aup_single_closed(&model.to_hyper_foxh()?, metric)
}

/// Lognormal shadowing by Gauss–Hermite: (1/√π) Σ w_k P(ω_k).
pub fn aup_lognormal(mu_db: f64, sigma_db: f64, nodes: usize, metric: &MetricSpec) -> Result<f64> {
    let model = ChannelModel::Lognormal { mu_db, sigma_db, nodes };
    model.validate()?;
    metric.validate()?;
    let rule = gauss_hermite_nodes(nodes)?;
    let mut sum = 0.0;
    for (u, w) in rule.iter() {
        let omega = 10f64.powf((2f64.sqrt() * sigma_db * u + mu_db) / 10.0);
        sum += w * conditional_up(metric, omega)?;
    }
    Ok(sum / core::f64::consts::PI.sqrt())
}

/// Extended generalized-K closed form.
pub fn aup_egk(m: f64, shape: f64, ms: f64, shadow_shape: f64, mean: f64, metric: &MetricSpec) -> Result<f64> {
    let model = ChannelModel::Egk { m, shape, ms, shadow_shape, mean };
    model.validate()?;
    aup_single_closed(&model.to_hyper_foxh()?, metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfn::exp_integral_e1;

    fn rayleigh_bpsk(mean: f64) -> f64 {
        0.5 * (1.0 - (mean / (1.0 + mean)).sqrt())
    }

    #[test]
    fn exponential_examples() {
        let e10 = ChannelModel::Exponential { mean: 10.0 };
        let dpsk = aup_single_quadrature(&e10, &MetricSpec::bep_dpsk()).unwrap();
        assert!((dpsk - 1.0 / 22.0).abs() < 1e-12);
        let bpsk = aup_single_quadrature(&e10, &MetricSpec::bep_coherent_psk()).unwrap();
        assert!((bpsk - rayleigh_bpsk(10.0)).abs() < 1e-12);
        assert!((bpsk - 0.023_268_7).abs() < 1e-7);

        let cap = MetricSpec::capacity(1.0).unwrap();
        let want = core::f64::consts::E * exp_integral_e1(1.0).unwrap();
        assert!((want - 0.596_347_4).abs() < 1e-7);
        let e1 = ChannelModel::Exponential { mean: 1.0 };
        assert!((aup_single_quadrature(&e1, &cap).unwrap() - want).abs() < 1e-12);
        let h = e1.to_hyper_foxh().unwrap();
        assert!((aup_single_closed(&h, &cap).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let h = ChannelModel::Exponential { mean: 10.0 }.to_hyper_foxh().unwrap();
        let v = aup_single_closed(&h, &MetricSpec::bep_coherent_psk()).unwrap();
        assert!((v - rayleigh_bpsk(10.0)).abs() < 1e-12);

        let gg = ChannelModel::GeneralizedGamma { m: 2.0, shape: 1.0, mean: 10.0 };
        let dpsk = MetricSpec::bep_dpsk();
        let closed = aup_single_closed(&gg.to_hyper_foxh().unwrap(), &dpsk).unwrap();
        let quad = aup_single_quadrature(&gg, &dpsk).unwrap();
        // Nakagami-2: E[e^-γ]/2 = (1 + γ̄/m)^-m / 2
        assert!((closed - 0.5 / 36.0).abs() < 1e-12);
        assert!((closed - quad).abs() < 1e-6 * quad);

        let nak = ChannelModel::Nakagami { m: 1.0, mean: 1.0 };
        let cap = aup_single_closed(&nak.to_hyper_foxh().unwrap(), &MetricSpec::capacity(1.0).unwrap()).unwrap();
        assert!((cap - 0.596_347_4).abs() < 1e-7);
    }

    #[test]
    fn direct_form_agrees_at_moderate_values() {
        for model in [
            ChannelModel::GeneralizedGamma { m: 2.0, shape: 0.5, mean: 3.0 },
            ChannelModel::lognormal(2.0, 4.0),
        ] {
            let h = model.to_hyper_foxh().unwrap();
            for metric in MetricSpec::BEP_ROWS {
                let a = aup_single_closed(&h, &metric).unwrap();
                let b = aup_single_closed_direct(&h, &metric).unwrap();
                assert!((a - b).abs() < 1e-9, "{model:?} {metric:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn special_case_examples() {
        let bpsk = MetricSpec::bep_coherent_psk();
        assert!((aup_gnm(1.0, 1.0, 10.0, &bpsk).unwrap() - rayleigh_bpsk(10.0)).abs() < 1e-12);

        let cap = MetricSpec::capacity(1.0).unwrap();
        let ln = aup_lognormal(0.0, 0.0, 20, &cap).unwrap();
        assert!((ln - core::f64::consts::LN_2).abs() < 1e-14);

        let dpsk = MetricSpec::bep_dpsk();
        let egk = aup_egk(1.0, 1.0, 500.0, 1.0, 10.0, &dpsk).unwrap();
        assert!((egk - 1.0 / 22.0).abs() < 0.01 / 22.0);
    }

    #[test]
    fn lognormal_mixture_matches_closed_form() {
        let model = ChannelModel::lognormal(5.0, 6.0);
        let h = model.to_hyper_foxh().unwrap();
        for metric in [MetricSpec::bep_dpsk(), MetricSpec::capacity(1.0).unwrap()] {
            let a = aup_lognormal(5.0, 6.0, 20, &metric).unwrap();
            let b = aup_single_closed(&h, &metric).unwrap();
            assert!((a - b).abs() < 1e-12 * a);
        }
    }
}
