//! Special functions and quadrature node generators used by the rest of the crate.

mod bessel;
mod beta;
mod expint;
mod gamma;
mod hyper;
mod incgamma;
mod nodes;

pub use bessel::{bessel_i0_scaled, bessel_k, bessel_k_scaled};
pub use beta::{beta, beta_reg, incomplete_beta, incomplete_beta_reflected};
pub use expint::{exp_integral_e1, exp_integral_ei};
pub use gamma::{gamma, ln_gamma, ln_gamma_complex};
pub use hyper::pfq;
pub use incgamma::{gamma_p, gamma_q, upper_incomplete_gamma};
pub use nodes::{gauss_hermite_nodes, gcq_nodes, QuadratureRule, RuleKind};

pub(crate) use gamma::ln_gamma_unchecked;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
