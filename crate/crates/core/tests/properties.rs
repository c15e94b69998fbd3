use fadeperf_core::fading::ChannelModel;
use fadeperf_core::integrate::{integrate_positive, Tolerance};
use fadeperf_core::mc::estimate_aup_mc;
use fadeperf_core::mellin::{fox_h, meijer_g, ContourConfig, FoxHParams};
use fadeperf_core::perf::{conditional_up, MetricSpec};
use proptest::prelude::*;

fn fine() -> ContourConfig {
    ContourConfig { abscissa_fraction: Some(0.5), truncation_height: 400.0, rel_tol: 1e-12, ..ContourConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unit_scales_give_meijer(b1 in 0.1f64..2.0, b2 in 0.1f64..2.0, a1 in -1.0f64..0.9, z in 0.05f64..20.0) {
        let h = FoxHParams::meijer(2, 1, &[a1], &[b1, b2]).unwrap();
        let cfg = ContourConfig::default();
        let fox = fox_h(&h, z, &cfg).unwrap();
        let g = meijer_g(2, 1, &[a1], &[b1, b2], z, &cfg).unwrap();
        prop_assert!((fox - g).abs() <= 1e-10 * g.abs());
    }

    #[test]
    fn mellin_shift_law(b in 0.2f64..2.0, scale in 0.3f64..2.0, a in -0.5f64..0.8, sigma in -0.15f64..0.5, z in 0.1f64..10.0) {
        let h = FoxHParams::new(1, 1, vec![(a, 1.0)], vec![(b, scale)]).unwrap();
        prop_assume!(h.strip().map(|s| s.width() > 0.3).unwrap_or(false));
        let shifted = h.shifted(sigma);
        prop_assume!(shifted.strip().map(|s| s.width() > 0.3).unwrap_or(false));
        let lhs = z.powf(sigma) * fox_h(&h, z, &ContourConfig::default()).unwrap();
        let rhs = fox_h(&shifted, z, &fine()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs().max(1e-300), "{lhs} vs {rhs}");
    }

    #[test]
    fn generalized_gamma_is_normalised_with_unit_mgf_at_zero(m in 0.5f64..4.0, shape in 0.3f64..3.0, mean in 0.1f64..50.0) {
        let model = ChannelModel::GeneralizedGamma { m, shape, mean };
        let mass = integrate_positive(|g| model.pdf(g), mean, Tolerance::new(1e-14, 1e-11)).unwrap().value;
        prop_assert!((mass - 1.0).abs() < 1e-6);
        prop_assert!((model.mgf(1e-12).unwrap() - 1.0).abs() < 1e-8);
        let (m1, m2) = (model.mgf(0.5).unwrap(), model.mgf(2.0).unwrap());
        prop_assert!(0.0 < m2 && m2 < m1 && m1 <= 1.0);
    }

    #[test]
    fn monte_carlo_is_reproducible(seed in any::<u64>(), mean in 0.5f64..20.0) {
        let models = [ChannelModel::Nakagami { m: 1.5, mean }];
        let metric = MetricSpec::bep_coherent_psk();
        let a = estimate_aup_mc(&models, &metric, 5_000, seed).unwrap();
        let b = estimate_aup_mc(&models, &metric, 5_000, seed).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        prop_assert!(a.stderr >= 0.0);
    }

    #[test]
    fn capacity_is_concave_in_snr(a in 0.1f64..3.0, g in 0.0f64..100.0, d in 0.01f64..5.0) {
        let m = MetricSpec::capacity(a).unwrap();
        let (c0, c1, c2) = (conditional_up(&m, g).unwrap(), conditional_up(&m, g + d).unwrap(), conditional_up(&m, g + 2.0 * d).unwrap());
        prop_assert!(c1 - c0 >= c2 - c1 - 1e-12);
    }
}
