use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};

/// Which family a [`QuadratureRule`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Gauss–Chebyshev angles mapped to (0, ∞) through s = tan.
    ChebyshevTangent,
    /// Gauss–Hermite, weight e^(-x²) on the real line.
    Hermite,
}

/// Nodes and weights of a fixed quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Gauss–Chebyshev nodes for ∫_0^∞ f(s) ds.
///
/// With φ_k = (2k-1)π/(2N) and θ_k = (π/4)(1 + cos φ_k):
/// s_k = tan θ_k and w_k = π² sin φ_k / (4N cos² θ_k).
pub fn gcq_nodes(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain { name: "n", value: 0.0, expected: "n >= 1" });
    }
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 1..=n {
        let phi = (2 * k - 1) as f64 * PI / (2.0 * nf);
        let theta = 0.25 * PI * (1.0 + phi.cos());
        let c = theta.cos();
        nodes.push(theta.tan());
        weights.push(PI * PI * phi.sin() / (4.0 * nf * c * c));
    }
    Ok(QuadratureRule { nodes, weights, kind: RuleKind::ChebyshevTangent })
}

/// Gauss–Hermite nodes and weights for weight e^(-x²), ascending nodes.
///
/// Newton iteration on the orthonormal three-term recurrence, seeded with
/// the usual asymptotic guesses for the largest zeros.
pub fn gauss_hermite_nodes(k: usize) -> Result<QuadratureRule> {
    if k == 0 {
        return Err(Error::Domain { name: "k", value: 0.0, expected: "k >= 1" });
    }
    const PI_M4: f64 = 0.751_125_544_464_942_5;
    let n = k;
    let nf = n as f64;
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let mut z = 0.0;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..100 {
            let mut p1 = PI_M4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * (1.0 + z.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Series { terms: 100, partial: z, last_term: 0.0 });
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    Ok(QuadratureRule { nodes: x, weights: w, kind: RuleKind::Hermite })
}
