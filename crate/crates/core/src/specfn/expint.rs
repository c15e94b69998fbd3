use num_traits::Float;

use super::EULER_GAMMA;
use crate::error::{Error, Result};

const EPS: f64 = 1e-17;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 1000;

/// Exponential integral E1(x) = ∫_x^∞ e^(-t)/t dt for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { name: "x", value: x, expected: "x > 0" });
    }
    // e^-x underflows
    if x > 746.0 {
        return Ok(0.0);
    }
    if x <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..MAX_ITER {
            let k = k as f64;
            term *= -x / k;
            let add = -term / k;
            sum += add;
            if add.abs() < sum.abs() * EPS {
                return Ok(-EULER_GAMMA - x.ln() + sum);
            }
        }
        return Err(Error::Series { terms: MAX_ITER, partial: sum, last_term: term });
    }
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= f64::EPSILON {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::Series { terms: MAX_ITER, partial: h, last_term: 0.0 })
}

/// Exponential integral Ei(x) (Cauchy principal value) for x != 0.
pub fn exp_integral_ei(x: f64) -> Result<f64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::Pole(0.0));
    }
    if x < 0.0 {
        return Ok(-exp_integral_e1(-x)?);
    }
    if x <= 40.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..MAX_ITER {
            let k = k as f64;
            term *= x / k;
            let add = term / k;
            sum += add;
            if add < sum * EPS {
                return Ok(EULER_GAMMA + x.ln() + sum);
            }
        }
        return Err(Error::Series { terms: MAX_ITER, partial: sum, last_term: term });
    }
    // asymptotic: e^x/x Σ k!/x^k, truncated at the smallest term
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        let next = term * k as f64 / x;
        if next > term || next < EPS * sum {
            break;
        }
        term = next;
        sum += term;
    }
    Ok(x.exp() / x * sum)
}
