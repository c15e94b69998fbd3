use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::specfn::ln_gamma_unchecked;

/// Parameters of H^{m,n}_{p,q}[z | (a_j, A_j); (b_j, B_j)].
///
/// `upper` holds the p pairs (a_j, A_j), the first `n` of which feed
/// Γ(1 - a_j - A_j u) in the numerator. `lower` holds the q pairs
/// (b_j, B_j), the first `m` of which feed Γ(b_j + B_j u) in the numerator.
/// The remaining pairs go to the denominator.
///
/// The all-empty set H^{0,0}_{0,0} is accepted and stands for a unit point
/// mass at z = 1; the hyper-Fox layer gives it that meaning.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHParams {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

/// Open interval of Re u between the two pole families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub lower: f64,
    pub upper: f64,
}

impl Strip {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }
}

fn same(x: (f64, f64), y: (f64, f64)) -> bool {
    let tol = |a: f64, b: f64| (a - b).abs() <= 1e-14 * a.abs().max(b.abs()).max(1.0);
    tol(x.0, y.0) && tol(x.1, y.1)
}

impl FoxHParams {
    /// Builds a parameter set, checking 0 <= m <= q, 0 <= n <= p, positive
    /// finite scales and finite shifts.
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        if m > lower.len() {
            return Err(Error::Parameter { name: "m", value: m as f64, reason: "m must not exceed q" });
        }
        if n > upper.len() {
            return Err(Error::Parameter { name: "n", value: n as f64, reason: "n must not exceed p" });
        }
        for &(shift, scale) in upper.iter().chain(lower.iter()) {
            if !shift.is_finite() {
                return Err(Error::Parameter { name: "shift", value: shift, reason: "must be finite" });
            }
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::Parameter { name: "scale", value: scale, reason: "must be positive" });
            }
        }
        Ok(Self { m, n, upper, lower })
    }

    /// Meijer G^{m,n}_{p,q}: every scale equal to one.
    pub fn meijer(m: usize, n: usize, a: &[f64], b: &[f64]) -> Result<Self> {
        Self::new(
            m,
            n,
            a.iter().map(|&x| (x, 1.0)).collect(),
            b.iter().map(|&x| (x, 1.0)).collect(),
        )
    }

    /// The point-mass parameter set H^{0,0}_{0,0}.
    pub fn point_mass() -> Self {
        Self { m: 0, n: 0, upper: Vec::new(), lower: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    pub fn is_point_mass(&self) -> bool {
        self.upper.is_empty() && self.lower.is_empty()
    }

    /// Convergence strip between the left poles of Γ(b_j + B_j u), j < m,
    /// and the right poles of Γ(1 - a_j - A_j u), j < n.
    pub fn strip(&self) -> Result<Strip> {
        let lower = self.lower[..self.m]
            .iter()
            .map(|&(b, bs)| -b / bs)
            .fold(f64::NEG_INFINITY, f64::max);
        let upper = self.upper[..self.n]
            .iter()
            .map(|&(a, sa)| (1.0 - a) / sa)
            .fold(f64::INFINITY, f64::min);
        if lower < upper {
            Ok(Strip { lower, upper })
        } else {
            Err(Error::EmptyStrip { left: lower, right: upper })
        }
    }

    /// Removes gamma ratios that are identically one: a numerator
    /// Γ(1 - a - Au) against a denominator Γ(1 - b - Bu) with (a, A) = (b, B),
    /// and a numerator Γ(b + Bu) against a denominator Γ(a + Au) likewise.
    pub fn simplified(&self) -> Self {
        let (mut up_num, mut up_den): (Vec<_>, Vec<_>) =
            (self.upper[..self.n].to_vec(), self.upper[self.n..].to_vec());
        let (mut lo_num, mut lo_den): (Vec<_>, Vec<_>) =
            (self.lower[..self.m].to_vec(), self.lower[self.m..].to_vec());
        cancel(&mut up_num, &mut lo_den);
        cancel(&mut lo_num, &mut up_den);
        let (m, n) = (lo_num.len(), up_num.len());
        up_num.extend(up_den);
        lo_num.extend(lo_den);
        Self { m, n, upper: up_num, lower: lo_num }
    }

    /// Σ_{j<n} A_j - Σ_{j>=n} A_j + Σ_{j<m} B_j - Σ_{j>=m} B_j; the integrand
    /// decays like exp(-π a* |Im u| / 2) on vertical lines.
    pub fn decay_rate(&self) -> f64 {
        let sum = |v: &[(f64, f64)]| v.iter().map(|p| p.1).sum::<f64>();
        sum(&self.upper[..self.n]) - sum(&self.upper[self.n..]) + sum(&self.lower[..self.m])
            - sum(&self.lower[self.m..])
    }

    /// Σ B_j - Σ A_j.
    pub fn scale_balance(&self) -> f64 {
        self.lower.iter().map(|p| p.1).sum::<f64>() - self.upper.iter().map(|p| p.1).sum::<f64>()
    }

    /// True when every scale equals one (a Meijer G set).
    pub fn is_meijer(&self) -> bool {
        self.upper.iter().chain(self.lower.iter()).all(|p| p.1 == 1.0)
    }

    /// The parameters of z^sigma H(z): every shift moves by sigma times its scale.
    pub fn shifted(&self, sigma: f64) -> Self {
        let mv = |v: &[(f64, f64)]| v.iter().map(|&(x, s)| (x + sigma * s, s)).collect();
        Self { m: self.m, n: self.n, upper: mv(&self.upper), lower: mv(&self.lower) }
    }

    /// ln of the Mellin kernel at u. Poles give infinite real parts.
    pub(crate) fn ln_kernel(&self, u: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &(a, sa)) in self.upper.iter().enumerate() {
            if j < self.n {
                acc += ln_gamma_unchecked(one - a - u * sa);
            } else {
                acc -= ln_gamma_unchecked(u * sa + a);
            }
        }
        for (j, &(b, sb)) in self.lower.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_unchecked(u * sb + b);
            } else {
                acc -= ln_gamma_unchecked(one - b - u * sb);
            }
        }
        acc
    }

    /// The Mellin kernel at a real point inside or outside the strip.
    pub fn kernel_real(&self, u: f64) -> f64 {
        let v = self.ln_kernel(Complex64::new(u, 0.0));
        v.re.exp() * v.im.cos()
    }
}

fn cancel(num: &mut Vec<(f64, f64)>, den: &mut Vec<(f64, f64)>) {
    let mut i = 0;
    while i < num.len() {
        if let Some(k) = den.iter().position(|&d| same(d, num[i])) {
            den.remove(k);
            num.remove(i);
        } else {
            i += 1;
        }
    }
}
