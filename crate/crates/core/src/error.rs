use core::fmt;

/// Everything that can go wrong inside the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A gamma function was asked for its value at a pole.
    #[error("gamma function pole at {0}")]
    Pole(f64),

    /// An argument lies outside the domain of the routine.
    #[error("{name} = {value} is out of domain: expected {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A model or metric parameter is invalid.
    #[error("invalid parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A power series hit its term cap before reaching tolerance.
    #[error("series did not converge after {terms} terms (partial sum {partial}, last term {last_term})")]
    Series {
        terms: usize,
        partial: f64,
        last_term: f64,
    },

    /// The left and right pole families of a Mellin–Barnes integrand overlap.
    #[error("empty convergence strip: left poles reach {left}, right poles start at {right}")]
    EmptyStrip { left: f64, right: f64 },

    /// The contour integral could not be brought to tolerance.
    #[error("contour integration failed: {0}")]
    Contour(ContourFailure),

    /// Adaptive quadrature gave up before meeting its tolerance.
    #[error("quadrature did not converge (estimate {estimate}, error bound {error})")]
    Quadrature { estimate: f64, error: f64 },

    /// A sample point produced a non-finite value.
    #[error("non-finite {what} at {at}")]
    NonFinite { what: &'static str, at: f64 },

    /// The request is well formed but this combination is not available.
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// Why a Mellin–Barnes contour evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourFailure {
    /// The integrand does not decay along any admissible contour.
    NoDecay,
    /// Argument sits on the boundary of absolute convergence (|z| = 1 for balanced kernels).
    BoundaryArgument,
    /// The integrand was still significant at the truncation height.
    TruncationExhausted,
    /// Refinement hit the node budget without meeting the tolerance.
    NodeBudget,
    /// Both pole families are empty so the integral is not defined by residues.
    Degenerate,
}

impl fmt::Display for ContourFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Self::NoDecay => "integrand does not decay along the contour",
            Self::BoundaryArgument => "argument lies on the boundary of absolute convergence",
            Self::TruncationExhausted => "integrand still significant at the truncation height",
            Self::NodeBudget => "node budget exhausted before reaching tolerance",
            Self::Degenerate => "no gamma factors in the numerator",
        };
        f.write_str(msg)
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_param(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter { name, value, reason })
    }
}
