//! Adaptive Gauss–Kronrod quadrature on finite and infinite intervals.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

/// Absolute and relative error targets; the looser of the two wins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-14, 1e-10)
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut fv = [(0.0, 0.0); 7];
    for (j, &x) in XGK[..7].iter().enumerate() {
        let dx = half * x;
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kron * half;
    let asc = asc * half.abs();
    let mut error = ((kron - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * abs_sum * half.abs();
    if round > error {
        error = round;
    }
    Ok(Segment { a, b, value, error })
}

fn eval<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64) -> Result<f64> {
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what: "integrand", at: x })
    }
}

/// ∫_a^b f(x) dx on a finite interval by globally adaptive GK15.
pub fn integrate<F: FnMut(f64) -> Result<f64>>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain { name: "interval", value: if a.is_finite() { b } else { a }, expected: "finite bounds" });
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let mut segs: Vec<Segment> = alloc::vec![kronrod(&mut f, a, b)?];
    loop {
        let (value, error) = segs.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Estimate { value, error });
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::Quadrature { estimate: value, error });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Err(Error::Quadrature { estimate: value, error });
        }
        segs.push(kronrod(&mut f, s.a, mid)?);
        segs.push(kronrod(&mut f, mid, s.b)?);
    }
}

/// ∫_a^∞ f(x) dx through x = a + scale·t/(1-t).
pub fn integrate_to_infinity<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    scale: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    integrate(
        |t| {
            let r = 1.0 - t;
            let x = a + scale * t / r;
            if x.is_infinite() {
                return Ok(0.0);
            }
            Ok(f(x)? * scale / (r * r))
        },
        0.0,
        1.0,
        tol,
    )
}

/// ∫_0^∞ f(x) dx through x = center·e^u, u = t/(1-t²), t ∈ (-1, 1).
///
/// Suited to integrands spread over many decades, such as heavy-tailed
/// densities; `center` should sit near the bulk of the mass.
pub fn integrate_positive<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    center: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    integrate(
        |t| {
            let d = 1.0 - t * t;
            let u = t / d;
            let du = (1.0 + t * t) / (d * d);
            let x = center * u.exp();
            if x == 0.0 || x.is_infinite() {
                return Ok(0.0);
            }
            Ok(f(x)? * x * du)
        },
        -1.0,
        1.0,
        tol,
    )
}
