use crate::error::{Error, Result};

/// Named rows of the (a, b, n) parameter table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    BepCoherentFsk,
    BepNoncoherentFsk,
    BepCoherentPsk,
    BepDpsk,
    /// Correlated coherent binary signalling, a in (0, 1].
    BepCorrelated,
    /// Ergodic capacity log(1 + aγ) in nats, a > 0.
    Capacity,
    /// Explicit (a, b, n).
    Custom,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::BepCoherentFsk => "bep_coherent_fsk",
            Self::BepNoncoherentFsk => "bep_noncoherent_fsk",
            Self::BepCoherentPsk => "bep_coherent_psk",
            Self::BepDpsk => "bep_dpsk",
            Self::BepCorrelated => "bep_correlated",
            Self::Capacity => "capacity",
            Self::Custom => "custom",
        }
    }
}

/// Parameters of the unified conditional measure.
///
/// n = 1 gives the bit error probability Γ(b, aγ)/(2Γ(b)); n = 2 with
/// b = 1 gives the capacity log(1 + aγ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSpec {
    pub a: f64,
    pub b: f64,
    pub n: u8,
    pub kind: MetricKind,
}

impl MetricSpec {
    pub const fn bep_coherent_fsk() -> Self {
        Self { a: 0.5, b: 0.5, n: 1, kind: MetricKind::BepCoherentFsk }
    }

    pub const fn bep_noncoherent_fsk() -> Self {
        Self { a: 0.5, b: 1.0, n: 1, kind: MetricKind::BepNoncoherentFsk }
    }

    pub const fn bep_coherent_psk() -> Self {
        Self { a: 1.0, b: 0.5, n: 1, kind: MetricKind::BepCoherentPsk }
    }

    pub const fn bep_dpsk() -> Self {
        Self { a: 1.0, b: 1.0, n: 1, kind: MetricKind::BepDpsk }
    }

    pub fn bep_correlated(a: f64) -> Result<Self> {
        Self { a, b: 0.5, n: 1, kind: MetricKind::BepCorrelated }.validated()
    }

    pub fn capacity(a: f64) -> Result<Self> {
        Self { a, b: 1.0, n: 2, kind: MetricKind::Capacity }.validated()
    }

    pub fn custom(a: f64, b: f64, n: u8) -> Result<Self> {
        Self { a, b, n, kind: MetricKind::Custom }.validated()
    }

    /// The four binary-modulation rows with fixed (a, b).
    pub const BEP_ROWS: [Self; 4] =
        [Self::bep_coherent_fsk(), Self::bep_noncoherent_fsk(), Self::bep_coherent_psk(), Self::bep_dpsk()];

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks a > 0, b in (0, 1], n in {1, 2} and the row constraints.
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(Error::Parameter { name, value, reason });
        if !(self.a > 0.0 && self.a.is_finite()) {
            return bad("a", self.a, "must be positive and finite");
        }
        if !(self.b > 0.0 && self.b <= 1.0) {
            return bad("b", self.b, "must lie in (0, 1]");
        }
        if self.n != 1 && self.n != 2 {
            return bad("n", f64::from(self.n), "must be 1 or 2");
        }
        let fixed = |a: f64, b: f64| self.n == 1 && self.a == a && self.b == b;
        let ok = match self.kind {
            MetricKind::BepCoherentFsk => fixed(0.5, 0.5),
            MetricKind::BepNoncoherentFsk => fixed(0.5, 1.0),
            MetricKind::BepCoherentPsk => fixed(1.0, 0.5),
            MetricKind::BepDpsk => fixed(1.0, 1.0),
            MetricKind::BepCorrelated => self.n == 1 && self.b == 0.5 && self.a <= 1.0,
            MetricKind::Capacity => self.n == 2 && self.b == 1.0,
            MetricKind::Custom => true,
        };
        if ok {
            Ok(())
        } else {
            bad("kind", self.a, "(a, b, n) do not match the named metric")
        }
    }

    /// True for the error-probability family (n = 1).
    pub fn is_bep(&self) -> bool {
        self.n == 1
    }

    /// True when the measure is log(1 + aγ).
    pub fn is_capacity(&self) -> bool {
        self.n == 2 && self.b == 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_validate() {
        for m in MetricSpec::BEP_ROWS {
            m.validate().unwrap();
            assert!(m.is_bep() && !m.is_capacity());
        }
        assert!(MetricSpec::capacity(3.0).unwrap().is_capacity());
        assert!(MetricSpec::bep_correlated(0.3).is_ok());
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        assert!(MetricSpec::capacity(0.0).is_err());
        assert!(MetricSpec::bep_correlated(1.5).is_err());
        assert!(MetricSpec::custom(1.0, 1.5, 1).is_err());
        assert!(MetricSpec::custom(1.0, 0.5, 3).is_err());
        let wrong = MetricSpec { a: 2.0, ..MetricSpec::bep_dpsk() };
        assert!(wrong.validate().is_err());
        assert!(MetricSpec { n: 1, ..MetricSpec::capacity(1.0).unwrap() }.validate().is_err());
    }
}
