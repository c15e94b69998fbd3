use num_traits::Float;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;

/// Generalized hypergeometric function pFq(numer; denom; z) for real arguments.
///
/// Series summation with two stabilising transformations for negative
/// arguments: Kummer's transformation for 1F1 and Pfaff's for 2F1, both
/// chosen so the transformed series has non-negative terms.
pub fn pfq(numer: &[f64], denom: &[f64], z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain { name: "z", value: z, expected: "finite z" });
    }
    for &b in denom {
        if b <= 0.0 && b == b.floor() {
            return Err(Error::Pole(b));
        }
    }
    if z < 0.0 {
        match (numer, denom) {
            (&[a], &[c]) if c - a >= 0.0 && z < -1.0 => {
                return Ok(z.exp() * series(&[c - a], denom, -z)?);
            }
            (&[a, b], &[c]) if !terminates(numer) => {
                let w = z / (z - 1.0);
                // (1-z)^(-b) 2F1(c-a, b; c; w) or (1-z)^(-a) 2F1(a, c-b; c; w)
                let (pre, p, q) = if c - a >= 0.0 { (b, c - a, b) } else { (a, a, c - b) };
                if c - a >= 0.0 || c - b >= 0.0 || z < -0.5 {
                    return Ok((-pre * (-z).ln_1p()).exp() * series(&[p, q], denom, w)?);
                }
            }
            _ => {}
        }
    }
    series(numer, denom, z)
}

fn terminates(numer: &[f64]) -> bool {
    numer.iter().any(|&a| a <= 0.0 && a == a.floor())
}

fn series(numer: &[f64], denom: &[f64], z: f64) -> Result<f64> {
    let finite = terminates(numer);
    if !finite {
        if numer.len() > denom.len() + 1 {
            return Err(Error::Domain {
                name: "p",
                value: numer.len() as f64,
                expected: "p <= q + 1 for a non-terminating series",
            });
        }
        if numer.len() == denom.len() + 1 && z.abs() >= 1.0 {
            return Err(Error::Domain { name: "z", value: z, expected: "|z| < 1 when p = q + 1" });
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &a in numer {
            ratio *= a + kf;
        }
        for &b in denom {
            ratio /= b + kf;
        }
        term *= ratio;
        sum += term;
        if term == 0.0 || term.abs() < EPS * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Series { terms: MAX_TERMS, partial: sum, last_term: term })
}
