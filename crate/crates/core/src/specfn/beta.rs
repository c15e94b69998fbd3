use num_traits::Float;

use super::gamma::{gamma, ln_gamma};
use super::hyper::pfq;
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 5000;

/// Complete beta function B(a, b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    if a > 0.0 && b > 0.0 {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
    } else {
        Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
    }
}

/// Incomplete beta B(z; a, b) = ∫_0^z u^(a-1) (1-u)^(b-1) du.
///
/// `z` may be negative when `a` is an integer (the integrand is then real on
/// the path). For non-integer `a` and negative `z` use
/// [`incomplete_beta_reflected`], which strips the phase e^(iπa).
pub fn incomplete_beta(z: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain { name: "a", value: a, expected: "a > 0" });
    }
    if !b.is_finite() {
        return Err(Error::Domain { name: "b", value: b, expected: "finite b" });
    }
    if z.is_nan() || z > 1.0 || (z == 1.0 && b <= 0.0) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            expected: "z < 1 (z = 1 allowed when b > 0)",
        });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return beta(a, b);
    }
    if z > 0.0 {
        if b > 0.0 && z > 0.5 {
            return Ok(beta(a, b)? - power_series(1.0 - z, b, a)?);
        }
        return power_series(z, a, b);
    }
    if a != a.floor() {
        return Err(Error::Domain {
            name: "a",
            value: a,
            expected: "integer a when z < 0",
        });
    }
    let sign = if (a as i64) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * incomplete_beta_reflected(-z, a, b)?)
}

/// ∫_0^t v^(a-1) (1+v)^(b-1) dv for t >= 0, which equals e^(-iπa) B(-t; a, b).
pub fn incomplete_beta_reflected(t: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain { name: "a", value: a, expected: "a > 0" });
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain { name: "t", value: t, expected: "finite t >= 0" });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t > 1.0 && a == a.floor() && a <= 32.0 {
        return Ok(binomial_expansion(t, a as usize, b));
    }
    Ok((a * t.ln()).exp() / a * pfq(&[a, 1.0 - b], &[a + 1.0], -t)?)
}

// v^(a-1) = ((1+v) - 1)^(a-1) expanded, each power of (1+v) integrated exactly.
fn binomial_expansion(t: f64, a: usize, b: f64) -> f64 {
    let lt = t.ln_1p();
    let mut binom = 1.0;
    let mut sum = 0.0;
    for k in 0..a {
        let e = k as f64 + b;
        let piece = if e == 0.0 { lt } else { (e * lt).exp_m1() / e };
        let sign = if (a - 1 - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        sum += sign * binom * piece;
        binom = binom * (a - 1 - k) as f64 / (k + 1) as f64;
    }
    sum
}

fn power_series(z: f64, a: f64, b: f64) -> Result<f64> {
    Ok((a * z.ln()).exp() / a * pfq(&[a, 1.0 - b], &[a + 1.0], z)?)
}

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1.
pub fn beta_reg(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain {
            name: "a, b",
            value: if a > 0.0 { b } else { a },
            expected: "a > 0 and b > 0",
        });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain { name: "x", value: x, expected: "0 <= x <= 1" });
    }
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    let front = (ln_gamma(a + b)? - ln_gamma(a)? - ln_gamma(b)? + a * x.ln() + b * (-x).ln_1p()).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * fraction(a, b, x)? / a)
    } else {
        Ok(1.0 - front * fraction(b, a, 1.0 - x)? / b)
    }
}

fn fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::Series { terms: MAX_ITER, partial: h, last_term: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn close(got: f64, want: f64, rel: f64) -> bool {
        (got - want).abs() <= rel * want.abs().max(1e-300)
    }

    #[test]
    fn reference_points() {
        let ln2 = core::f64::consts::LN_2;
        assert!(close(incomplete_beta(0.5, 1.0, 0.0).unwrap(), ln2, 1e-14));
        assert!(close(incomplete_beta(-1.0, 1.0, 0.0).unwrap(), -ln2, 1e-14));
        assert!(close(incomplete_beta(0.3, 2.5, -0.7).unwrap(), 0.030_138_864_771_308_595, 1e-13));
        assert!(close(incomplete_beta(0.8, 1.5, 2.2).unwrap(), 0.221_889_162_307_987_76, 1e-13));
        assert!(close(
            incomplete_beta_reflected(3.0, 0.5, 0.4).unwrap(),
            2.507_290_320_115_619_8,
            1e-13
        ));
        // ∫_0^5 v² (1+v)^(-2.5) dv
        assert!(close(incomplete_beta_reflected(5.0, 3.0, -1.5).unwrap(), 1.153_278_392_925_823_5, 1e-13));
    }

    #[test]
    fn domain_errors() {
        assert!(incomplete_beta(1.0, 1.0, 0.0).is_err());
        assert!(incomplete_beta(1.5, 1.0, 1.0).is_err());
        assert!(incomplete_beta(-0.5, 0.5, 1.0).is_err());
        assert!(incomplete_beta(0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn regularized_reference_points() {
        assert!(close(beta_reg(0.3, 0.5, 0.5).unwrap(), 0.369_010_119_565_545_4, 1e-13));
        assert!(close(beta_reg(0.7, 0.25, 0.75).unwrap(), 0.864_148_735_485_965_4, 1e-13));
        assert!(close(beta_reg(0.01, 3.0, 4.5).unwrap(), 2.611_568_086_152_658e-5, 1e-12));
    }

    proptest! {
        #[test]
        fn integer_order_paths_agree(t in 0.5f64..2.0, a in 1u32..5, b in -2.0f64..2.0) {
            let series = (a as f64 * t.ln()).exp() / a as f64
                * pfq(&[a as f64, 1.0 - b], &[a as f64 + 1.0], -t).unwrap();
            let exact = binomial_expansion(t, a as usize, b);
            prop_assert!(close(exact, series, 1e-12));
        }

        #[test]
        fn log_identity(x in 1e-6f64..1e6) {
            let got = -incomplete_beta(-x, 1.0, 0.0).unwrap();
            prop_assert!(close(got, x.ln_1p(), 1e-12));
        }

        #[test]
        fn arcsine_law(y in 0.0f64..1.0) {
            let want = 2.0 / PI * y.sqrt().asin();
            prop_assert!((beta_reg(y, 0.5, 0.5).unwrap() - want).abs() < 1e-14);
        }

        #[test]
        fn regularized_symmetry(x in 0.0f64..1.0, a in 0.05f64..20.0, b in 0.05f64..20.0) {
            let s = beta_reg(x, a, b).unwrap() + beta_reg(1.0 - x, b, a).unwrap();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn unregularized_matches_regularized(x in 0.0f64..0.99, a in 0.2f64..6.0, b in 0.2f64..6.0) {
            let raw = incomplete_beta(x, a, b).unwrap();
            let reg = beta_reg(x, a, b).unwrap() * beta(a, b).unwrap();
            prop_assert!((raw - reg).abs() < 1e-11 * beta(a, b).unwrap());
        }
    }
}
