use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::params::{FoxHParams, Strip};
use crate::error::{ContourFailure, Error, Result};

// |ln H| beyond which the result is reported as zero (or an overflow).
const FAR_TAIL: f64 = 1e6;

/// Controls for the Mellin–Barnes contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    /// Where the contour crosses the real axis, as a fraction of a finite
    /// strip's width. `None` (the default) uses the real saddle point of the
    /// integrand, which keeps cancellation low for extreme arguments.
    pub abscissa_fraction: Option<f64>,
    /// Largest |Im u| the integrand may still be significant at.
    pub truncation_height: f64,
    /// Node budget for the trapezoid rule on the half line.
    pub max_panels: usize,
    /// Target relative error.
    pub rel_tol: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            abscissa_fraction: None,
            truncation_height: 200.0,
            max_panels: 1 << 18,
            rel_tol: 1e-9,
        }
    }
}

impl ContourConfig {
    fn validate(&self) -> Result<()> {
        if let Some(f) = self.abscissa_fraction {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::Parameter {
                    name: "abscissa_fraction",
                    value: f,
                    reason: "must lie in (0, 1)",
                });
            }
        }
        if !(self.truncation_height > 0.0) {
            return Err(Error::Parameter {
                name: "truncation_height",
                value: self.truncation_height,
                reason: "must be positive",
            });
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Parameter { name: "rel_tol", value: self.rel_tol, reason: "must be positive" });
        }
        if self.max_panels == 0 {
            return Err(Error::Parameter { name: "max_panels", value: 0.0, reason: "must be positive" });
        }
        Ok(())
    }
}

/// A value stored as mantissa · e^log_scale so that results far below the
/// f64 range can still be inspected in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl Scaled {
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa.signum() * (self.mantissa.abs().ln() + self.log_scale).exp()
    }

    /// ln |value|.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.log_scale
    }
}

/// H^{m,n}_{p,q}[z] for real z > 0.
pub fn fox_h(params: &FoxHParams, z: f64, cfg: &ContourConfig) -> Result<f64> {
    Ok(fox_h_scaled(params, z, cfg)?.value())
}

/// Meijer G^{m,n}_{p,q}[z | a; b] for real z > 0.
pub fn meijer_g(m: usize, n: usize, a: &[f64], b: &[f64], z: f64, cfg: &ContourConfig) -> Result<f64> {
    fox_h(&FoxHParams::meijer(m, n, a, b)?, z, cfg)
}

/// [`meijer_g`] in scaled form.
pub fn meijer_g_scaled(m: usize, n: usize, a: &[f64], b: &[f64], z: f64, cfg: &ContourConfig) -> Result<Scaled> {
    fox_h_scaled(&FoxHParams::meijer(m, n, a, b)?, z, cfg)
}

/// [`fox_h`] in scaled form.
///
/// The integrand Θ(u) z^(-u) is integrated along c + i t (bent outward for
/// balanced Meijer kernels, whose integrand does not decay on vertical
/// lines) with a trapezoid rule that halves its step until two levels agree.
/// Conjugate symmetry folds the line onto t >= 0, so the result is real by
/// construction.
pub fn fox_h_scaled(params: &FoxHParams, z: f64, cfg: &ContourConfig) -> Result<Scaled> {
    cfg.validate()?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain { name: "z", value: z, expected: "finite z > 0" });
    }
    let h = params.simplified();
    if h.m() == 0 && h.n() == 0 {
        return Err(Error::Contour(ContourFailure::Degenerate));
    }
    let strip = h.strip()?;
    let ln_z = z.ln();

    let decay = h.decay_rate();
    let bend = if decay > 1e-12 {
        0.0
    } else if decay > -1e-12 && h.is_meijer() && h.p() == h.q() {
        if ln_z.abs() < 1e-9 {
            return Err(Error::Contour(ContourFailure::BoundaryArgument));
        }
        ln_z.signum()
    } else {
        return Err(Error::Contour(ContourFailure::NoDecay));
    };

    let log_f = |u: Complex64| h.ln_kernel(u) - u * ln_z;
    let probe = |c: f64| log_f(Complex64::new(c, 0.5)).re;
    let c = abscissa(&strip, &probe, cfg.abscissa_fraction, ln_z);
    let dist = (c - strip.lower).min(strip.upper - c);
    let log_scale = match probe(c) {
        v if v.is_finite() => v,
        _ => 0.0,
    };
    // Far beyond the f64 range the gamma logs lose all relative accuracy;
    // the value is zero for every practical purpose.
    if log_scale < -FAR_TAIL {
        return Ok(Scaled { mantissa: 0.0, log_scale });
    }
    if log_scale > FAR_TAIL {
        return Err(Error::NonFinite { what: "Fox H magnitude", at: z });
    }

    let sample = |t: f64| -> Result<(f64, f64)> {
        let (u, du) = if bend == 0.0 {
            (Complex64::new(c, t), Complex64::new(0.0, 1.0))
        } else {
            let r = (t * t + 1.0).sqrt();
            (Complex64::new(c + bend * (r - 1.0), t), Complex64::new(bend * t / r, 1.0))
        };
        let w = (log_f(u) - log_scale).exp() * du;
        let g = w.im;
        if !g.is_finite() {
            return Err(Error::NonFinite { what: "contour integrand", at: t });
        }
        Ok((g, w.norm()))
    };

    // Width of the saddle along the contour. Far-out saddles (large |ln z|)
    // are wide, so both the step and the search height scale with it.
    let width = if bend == 0.0 { saddle_width(&log_f, c, dist) } else { 1.0 };
    let height = cfg.truncation_height.max(64.0 * width);

    let tol = cfg.rel_tol;
    let mut step = 0.5 * dist.min(width);
    let (g0, m0) = sample(0.0)?;
    let mut peak = m0;
    let mut sum = 0.5 * g0;
    let mut abs_sum = 0.5 * g0.abs();
    let mut nodes = 1usize;
    let mut last_big = 0.0;
    let cutoff;
    let mut k = 1.0;
    loop {
        let t = k * step;
        if t > height {
            return Err(Error::Contour(ContourFailure::TruncationExhausted));
        }
        let (g, mag) = sample(t)?;
        sum += g;
        abs_sum += g.abs();
        nodes += 1;
        peak = peak.max(mag);
        if mag > 1e-3 * tol * peak {
            last_big = t;
        }
        if t >= width && t - last_big >= (2.0 * width).max(8.0 * step) {
            cutoff = t;
            break;
        }
        if nodes > cfg.max_panels {
            return Err(Error::Contour(ContourFailure::NodeBudget));
        }
        k += 1.0;
    }

    let mut estimate = sum * step / PI;
    loop {
        step *= 0.5;
        let mut j = 1.0;
        while j * step <= cutoff {
            let (g, _) = sample(j * step)?;
            sum += g;
            abs_sum += g.abs();
            nodes += 1;
            j += 2.0;
        }
        let refined = sum * step / PI;
        let floor = 1e-15 * abs_sum * step / PI;
        if (refined - estimate).abs() <= tol * refined.abs() + floor {
            return Ok(Scaled { mantissa: refined, log_scale });
        }
        if nodes > cfg.max_panels {
            return Err(Error::Contour(ContourFailure::NodeBudget));
        }
        estimate = refined;
    }
}

// 1/√(d²/dc² Re ln F) on the real axis, at least 1.
fn saddle_width(log_f: &impl Fn(Complex64) -> Complex64, c: f64, dist: f64) -> f64 {
    let d = (0.5 * dist).min(1e-2 * (1.0 + c.abs()));
    let at = |x: f64| log_f(Complex64::new(x, 0.0)).re;
    let curv = (at(c + d) - 2.0 * at(c) + at(c - d)) / (d * d);
    if curv.is_finite() && curv > 0.0 {
        (1.0 / curv.sqrt()).max(1.0)
    } else {
        1.0
    }
}

fn abscissa(strip: &Strip, probe: &impl Fn(f64) -> f64, fraction: Option<f64>, ln_z: f64) -> f64 {
    let (lo, hi) = (strip.lower, strip.upper);
    let width = strip.width();
    if let (Some(f), true) = (fraction, width.is_finite()) {
        return lo + f * width;
    }
    // Near a pole the saddle sits about 1/|ln z| from it.
    let margin = (0.25 * width).min(0.25).min(1.0 / ln_z.abs());
    let (a, b) = (lo + margin, hi - margin);
    let c = if a.is_finite() && b.is_finite() {
        let (x, y) = scan(probe, a, b);
        golden(probe, x, y)
    } else if a.is_finite() {
        let (x, y) = descend(probe, a, 1.0);
        golden(probe, x, y)
    } else {
        let (x, y) = descend(probe, b, -1.0);
        golden(probe, x, y)
    };
    c.clamp(a.min(b), b.max(a))
}

// Coarse uniform scan returning a bracket around the smallest sample.
fn scan(probe: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    const N: usize = 16;
    let dx = (b - a) / N as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=N {
        let v = probe(a + dx * i as f64);
        if v < best.1 {
            best = (i, v);
        }
    }
    let i = best.0 as f64;
    ((a + dx * (i - 1.0)).max(a), (a + dx * (i + 1.0)).min(b))
}

// Walk away from `start` with doubling steps while the probe decreases.
fn descend(probe: &impl Fn(f64) -> f64, start: f64, dir: f64) -> (f64, f64) {
    let mut before = start;
    let mut at = start;
    let mut f_at = probe(start);
    let mut stride = 0.5;
    loop {
        let x = at + dir * stride;
        let fx = probe(x);
        if !(fx < f_at) || !x.is_finite() {
            return (before.min(x), before.max(x));
        }
        before = at;
        at = x;
        f_at = fx;
        stride *= 2.0;
    }
}

fn golden(probe: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const R: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - R * (b - a);
    let mut x2 = a + R * (b - a);
    let mut f1 = probe(x1);
    let mut f2 = probe(x2);
    for _ in 0..40 {
        if (b - a).abs() < 1e-6 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 <= f2 || f2.is_nan() {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - R * (b - a);
            f1 = probe(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + R * (b - a);
            f2 = probe(x2);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfn::{beta_reg, bessel_k, gamma};
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg() -> ContourConfig {
        ContourConfig::default()
    }

    fn rel(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    fn log_grid(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
        let (a, b) = (lo.ln(), hi.ln());
        (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
    }

    #[test]
    fn exponential_identity() {
        let h = FoxHParams::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap();
        for z in log_grid(25, 1e-3, 1e3) {
            let s = fox_h_scaled(&h, z, &cfg()).unwrap();
            assert!((s.ln_abs() + z).abs() < 1e-8 * z.max(1.0), "z = {z}: {}", s.ln_abs());
            if z < 700.0 {
                assert!(rel(s.value(), (-z).exp()) < 1e-8, "z = {z}");
            }
        }
    }

    #[test]
    fn rational_identity() {
        for z in log_grid(25, 1e-3, 1e3) {
            let v = meijer_g(1, 1, &[1.0], &[1.0], z, &cfg()).unwrap();
            assert!(rel(v, z / (1.0 + z)) < 1e-8, "z = {z}: {v}");
        }
        assert!(rel(meijer_g(1, 1, &[1.0], &[1.0], 3.0, &cfg()).unwrap(), 0.75) < 1e-9);
    }

    #[test]
    fn far_tail_in_log_form() {
        let h = FoxHParams::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap();
        let s = fox_h_scaled(&h, 1000.0, &cfg()).unwrap();
        assert!(s.mantissa > 0.0);
        assert!(rel(s.ln_abs(), -1000.0) < 1e-10);
    }

    #[test]
    fn stretched_exponential() {
        // H^{1,0}_{0,1}[z | (b, B)] = z^(b/B) e^(-z^(1/B)) / B
        let h = FoxHParams::new(1, 0, vec![], vec![(1.5, 0.5)]).unwrap();
        let want = 2.0 * 8.0 * (-4.0f64).exp();
        assert!(rel(fox_h(&h, 2.0, &cfg()).unwrap(), want) < 1e-9);
        let h = FoxHParams::new(1, 0, vec![], vec![(-0.75, 0.25)]).unwrap();
        for z in [0.01, 0.3, 1.0, 1.7] {
            let want = 4.0 * z.powf(-3.0) * (-z.powi(4)).exp();
            assert!(rel(fox_h(&h, z, &cfg()).unwrap(), want) < 1e-8, "z = {z}");
        }
    }

    #[test]
    fn extreme_arguments() {
        // H^{1,0}_{0,1}[z | (0.25, 1.25)] = z^0.2 e^(-z^0.8) / 1.25
        let h = FoxHParams::new(1, 0, vec![], vec![(0.25, 1.25)]).unwrap();
        for z in [1e-300, 1e-100, 1e-20] {
            let want = z.powf(0.2) / 1.25;
            assert!(rel(fox_h(&h, z, &cfg()).unwrap(), want) < 1e-8, "z = {z}");
        }
        let s = fox_h_scaled(&h, 1e200, &cfg()).unwrap();
        assert_eq!(s.value(), 0.0);
    }

    #[test]
    fn double_pole_is_bessel() {
        // G^{2,0}_{0,2}[z | 0, 0] = 2 K_0(2√z)
        for z in [0.01, 0.5, 2.0, 30.0] {
            let want = 2.0 * bessel_k(0.0, 2.0 * z.sqrt()).unwrap();
            assert!(rel(meijer_g(2, 0, &[], &[0.0, 0.0], z, &cfg()).unwrap(), want) < 1e-9, "z = {z}");
        }
    }

    #[test]
    fn product_kernel_mgf_value() {
        // G^{2,1}_{1,2}[1 | 1; 1, 1] = ∫_0^∞ e^(-t) / (1 + t) dt = e E1(1)
        let want = 0.596_347_362_323_194_1;
        assert!(rel(meijer_g(2, 1, &[1.0], &[1.0, 1.0], 1.0, &cfg()).unwrap(), want) < 1e-9);
    }

    #[test]
    fn balanced_kernel_needs_bent_contour() {
        // G^{1,1}_{2,2}[x | 1, 1; b, 0] / Γ(b) = I_x(b, 1-b) for x < 1 and 1 beyond
        for b in [0.25f64, 0.5, 0.75] {
            for x in [0.05, 0.3, 0.9, 1.2, 5.0, 100.0] {
                let g = meijer_g(1, 1, &[1.0, 1.0], &[b, 0.0], x, &cfg()).unwrap() / gamma(b).unwrap();
                let want = if x < 1.0 { beta_reg(x, b, 1.0 - b).unwrap() } else { 1.0 };
                assert!((g - want).abs() < 1e-9, "b = {b}, x = {x}: {g} vs {want}");
            }
        }
        let err = meijer_g(1, 1, &[1.0, 1.0], &[0.5, 0.0], 1.0, &cfg());
        assert_eq!(err, Err(Error::Contour(ContourFailure::BoundaryArgument)));
    }

    #[test]
    fn cancellation_rescues_printed_order() {
        // numerator Γ(1 - 1 - u) against denominator Γ(1 - 0 - u)... nothing
        // cancels here, so the printed set with b = mL ahead of 0 is empty
        let bad = FoxHParams::meijer(1, 2, &[1.0, 0.5], &[0.0, 2.0]).unwrap();
        assert!(matches!(bad.strip(), Err(Error::EmptyStrip { .. })));
        let good = FoxHParams::meijer(1, 2, &[1.0, 0.5], &[2.0, 0.0]).unwrap();
        assert!(good.strip().is_ok());
    }

    #[test]
    fn degenerate_sets_are_rejected() {
        assert_eq!(
            fox_h(&FoxHParams::point_mass(), 1.0, &cfg()),
            Err(Error::Contour(ContourFailure::Degenerate))
        );
        assert!(fox_h(&FoxHParams::meijer(1, 0, &[], &[0.0]).unwrap(), -1.0, &cfg()).is_err());
    }

    #[test]
    fn fixed_fraction_matches_saddle() {
        let h = FoxHParams::meijer(1, 1, &[1.0], &[1.0]).unwrap();
        let c = ContourConfig { abscissa_fraction: Some(0.5), ..cfg() };
        for z in [0.1, 1.0, 10.0] {
            assert!(rel(fox_h(&h, z, &c).unwrap(), fox_h(&h, z, &cfg()).unwrap()) < 1e-9);
        }
    }

    fn params() -> impl Strategy<Value = (FoxHParams, f64)> {
        // H^{1,1}_{1,2}-type sets with a guaranteed non-empty strip
        (0.1f64..2.0, 0.3f64..2.0, 0.1f64..1.5, 0.3f64..2.0, -1.0f64..1.0, 0.1f64..0.8, 0.05f64..20.0).prop_map(
            |(b0, bs0, a0, as0, b1, frac, z)| {
                let bs1 = frac * (as0 + bs0);
                let h = FoxHParams::new(1, 1, vec![(1.0 - a0, as0)], vec![(b0, bs0), (b1, bs1)]).unwrap();
                (h, z)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mellin_shift_law((h, z) in params(), sigma in -0.2f64..0.2) {
            let s = h.strip().unwrap();
            prop_assume!(s.contains(s.lower + 0.3) && s.width() > 0.6);
            let base = fox_h(&h, z, &cfg()).unwrap();
            let moved = fox_h(&h.shifted(sigma), z, &cfg()).unwrap();
            prop_assert!((moved - z.powf(sigma) * base).abs() <= 1e-8 * moved.abs().max(1e-12));
        }

        #[test]
        fn truncation_height_is_not_binding((h, z) in params()) {
            let a = fox_h(&h, z, &cfg()).unwrap();
            let wide = ContourConfig { truncation_height: 400.0, ..cfg() };
            let b = fox_h(&h, z, &wide).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12));
        }

        #[test]
        fn meijer_is_unit_scale_fox(b0 in 0.1f64..2.0, a0 in -1.0f64..0.9, z in 0.01f64..50.0) {
            let g = meijer_g(1, 1, &[a0], &[b0], z, &cfg()).unwrap();
            let h = fox_h(&FoxHParams::new(1, 1, vec![(a0, 1.0)], vec![(b0, 1.0)]).unwrap(), z, &cfg()).unwrap();
            prop_assert_eq!(g, h);
            // closed form Γ(1 - a + b) z^b (1 + z)^(a - b - 1)
            let want = gamma(1.0 - a0 + b0).unwrap() * z.powf(b0) * (1.0 + z).powf(a0 - b0 - 1.0);
            prop_assert!(rel(g, want) < 1e-8);
        }
    }
}
