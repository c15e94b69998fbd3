use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// B_{2k} / (2k (2k - 1)), k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Principal-branch log Γ(z) for complex z.
///
/// The branch is the analytic continuation from the positive real axis with
/// the cut along the non-positive real axis; on the cut the value is the limit
/// from above. Accurate to about 1e-14 absolute in the real part.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain {
            name: "z",
            value: if z.re.is_finite() { z.im } else { z.re },
            expected: "finite complex number",
        });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::Pole(z.re));
    }
    Ok(ln_gamma_unchecked(z))
}

/// Same as [`ln_gamma_complex`] without the pole check; poles return infinities.
pub(crate) fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        if z.im < 0.0 {
            return ln_gamma_unchecked(z.conj()).conj();
        }
        // Γ(z)Γ(1-z) = π / sin(πz), with ln sin written so that it stays
        // analytic on the closed upper half plane.
        let w = z * PI;
        let e = (Complex64::i() * w * 2.0).exp();
        let ln_sin = Complex64::new(-core::f64::consts::LN_2, PI / 2.0) - Complex64::i() * w
            + (Complex64::new(1.0, 0.0) - e).ln();
        return Complex64::new(LN_PI, 0.0) - ln_sin - ln_gamma_unchecked(Complex64::new(1.0, 0.0) - z);
    }
    if z.norm() >= 10.0 {
        return stirling(z);
    }
    let shift = (10.0 - z.re).ceil().max(1.0) as usize;
    let mut acc = Complex64::zero();
    let mut w = z;
    for _ in 0..shift {
        acc += w.ln();
        w += 1.0;
    }
    stirling(w) - acc
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = Complex64::zero();
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// ln |Γ(x)| for real x.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    Ok(libm::lgamma_r(x).0)
}

/// Γ(x) for real x.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    Ok(libm::tgamma(x))
}
