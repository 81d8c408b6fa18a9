use serde::Serialize;

use crate::GAP_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", content = "q", rename_all = "snake_case")]
pub enum EntropyKind {
    Shannon,
    Tsallis(f64),
    VonNeumann,
    Conditional,
}

/// An entropy in nats, tagged with how it was computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    pub value: f64,
    pub kind: EntropyKind,
}

impl EntropyValue {
    pub fn new(value: f64, kind: EntropyKind) -> Self {
        Self { value, kind }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs <= rhs`, gap = rhs - lhs, passes iff gap >= -tolerance.
    Inequality,
    /// `lhs == rhs`, gap = -|lhs - rhs|, passes iff gap >= -tolerance.
    Identity,
}

/// Outcome of one inequality or identity evaluated on one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Description of the state the check ran on (dimension, shape, padding).
    pub provenance: String,
    /// Named intermediate quantities (entropies of each marginal, etc.).
    pub terms: Vec<(String, f64)>,
    /// Degenerate situations encountered along the way.
    pub flags: Vec<String>,
}

impl InequalityReport {
    pub fn inequality(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let gap = rhs - lhs;
        Self {
            name: name.into(),
            kind: CheckKind::Inequality,
            lhs,
            rhs,
            gap,
            tolerance: GAP_TOLERANCE,
            passed: gap >= -GAP_TOLERANCE,
            provenance: String::new(),
            terms: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn identity(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let gap = -(lhs - rhs).abs();
        Self {
            name: name.into(),
            kind: CheckKind::Identity,
            lhs,
            rhs,
            gap,
            tolerance,
            passed: gap >= -tolerance,
            provenance: String::new(),
            terms: Vec::new(),
            flags: Vec::new(),
        }
    }

    /// Re-evaluates the verdict under a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.gap >= -tolerance;
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn term(mut self, name: impl Into<String>, value: f64) -> Self {
        self.terms.push((name.into(), value));
        self
    }

    pub fn flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_verdict_uses_tolerance() {
        let r = InequalityReport::inequality("x", 1.0, 1.0 - 1e-10);
        assert!(r.passed);
        let r = InequalityReport::inequality("x", 1.0, 1.0 - 1e-8);
        assert!(!r.passed);
        assert!(r.with_tolerance(1e-7).passed);
    }

    #[test]
    fn identity_gap_is_nonpositive() {
        let r = InequalityReport::identity("x", 2.0, 1.0, 1e-12);
        assert_eq!(r.gap, -1.0);
        assert!(!r.passed);
    }
}
