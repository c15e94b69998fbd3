use num_traits::Float;

use crate::error::{Error, Result};

/// e^(-x) I_0(x) for x >= 0.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain { name: "x", value: x, expected: "x >= 0" });
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 15.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > 1e-17 * sum {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        return Ok(sum * (-x).exp());
    }
    // Hankel asymptotic series, truncated at its smallest term.
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if next >= term || next < 1e-17 * sum {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    Ok(sum / (2.0 * core::f64::consts::PI * x).sqrt())
}

/// e^x K_nu(x) for x > 0.
///
/// Trapezoid rule on ∫_0^∞ exp(-x (cosh t - 1)) cosh(nu t) dt, which converges
/// geometrically because the integrand is entire and decays doubly exponentially.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { name: "x", value: x, expected: "x > 0" });
    }
    if !nu.is_finite() {
        return Err(Error::Domain { name: "nu", value: nu, expected: "finite order" });
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let nu = nu.abs();
    let f = |t: f64| (-x * (t.cosh() - 1.0) + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp());
    let mut h = 0.5;
    let mut prev = trapezoid(&f, h);
    for _ in 0..8 {
        h *= 0.5;
        let cur = trapezoid(&f, h);
        if (cur - prev).abs() <= 1e-15 * cur {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

fn trapezoid(f: &impl Fn(f64) -> f64, h: f64) -> f64 {
    let mut sum = 0.5 * f(0.0);
    let mut k = 1.0;
    loop {
        let v = f(k * h);
        sum += v;
        if v < 1e-18 * sum || k * h > 800.0 {
            break;
        }
        k += 1.0;
    }
    sum * h
}

/// Modified Bessel function of the second kind K_nu(x) for x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(nu, x)? * (-x).exp())
}
