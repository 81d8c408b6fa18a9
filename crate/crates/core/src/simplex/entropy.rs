use super::ProbVec;
use crate::error::{Error, Result};
use crate::report::{EntropyKind, EntropyValue};

/// Below this distance from 1 the Tsallis entropy is replaced by its
/// Shannon limit.
pub const TSALLIS_SHANNON_SWITCH: f64 = 1e-6;

/// `-sum p ln p` with `0 ln 0 = 0`, for raw nonnegative weights.
pub fn shannon_of(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// `(sum p^q - 1) / (1 - q)` with `0^q = 0`; Shannon within the switch band.
pub fn tsallis_of(p: &[f64], q: f64) -> f64 {
    if (q - 1.0).abs() < TSALLIS_SHANNON_SWITCH {
        return shannon_of(p);
    }
    let power_sum: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(q)).sum();
    (power_sum - 1.0) / (1.0 - q)
}

pub fn shannon(p: &ProbVec) -> EntropyValue {
    EntropyValue::new(shannon_of(p.values()), EntropyKind::Shannon)
}

pub fn tsallis(p: &ProbVec, q: f64) -> Result<EntropyValue> {
    check_q(q)?;
    Ok(EntropyValue::new(
        tsallis_of(p.values(), q),
        EntropyKind::Tsallis(q),
    ))
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::BadQ(q))
    }
}

pub(crate) fn require_dim4(p: &ProbVec) -> Result<[f64; 4]> {
    p.values().try_into().map_err(|_| Error::DimMismatch {
        expected: 4,
        actual: p.dim(),
    })
}

/// Block sums `(p1 + p2, p3 + p4)` of a four-outcome distribution.
pub(crate) fn block_sums(p: [f64; 4]) -> [f64; 2] {
    [p[0] + p[1], p[2] + p[3]]
}

/// Interleaved sums `(p1 + p3, p2 + p4)`.
pub(crate) fn interleaved_sums(p: [f64; 4]) -> [f64; 2] {
    [p[0] + p[2], p[1] + p[3]]
}

/// Conditional distributions of the position within each half of a
/// four-outcome distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPair {
    /// `(p1, p2) / (p1 + p2)`
    pub first: ProbVec,
    /// `(p3, p4) / (p3 + p4)`
    pub second: ProbVec,
    /// Set for a block with zero total weight; its conditional is uniform.
    pub zero_block: [bool; 2],
}

pub fn conditional_pair(p: &ProbVec) -> Result<ConditionalPair> {
    let p = require_dim4(p)?;
    let block = |a: f64, b: f64| {
        let s = a + b;
        if s > 0.0 {
            (ProbVec::from_simplex(vec![a / s, b / s]), false)
        } else {
            (ProbVec::from_simplex(vec![0.5, 0.5]), true)
        }
    };
    let (first, z1) = block(p[0], p[1]);
    let (second, z2) = block(p[2], p[3]);
    Ok(ConditionalPair {
        first,
        second,
        zero_block: [z1, z2],
    })
}

/// Entropy of the within-block position given the block:
/// `H(p) - H(p1 + p2, p3 + p4)`.
pub fn conditional_entropy(p: &ProbVec) -> Result<EntropyValue> {
    let v = require_dim4(p)?;
    let value = shannon_of(&v) - shannon_of(&block_sums(v));
    Ok(EntropyValue::new(value, EntropyKind::Conditional))
}

/// Tsallis analog: `T_q(p) - T_q(p1 + p2, p3 + p4)`.
pub fn conditional_tsallis(p: &ProbVec, q: f64) -> Result<EntropyValue> {
    check_q(q)?;
    let v = require_dim4(p)?;
    let value = tsallis_of(&v, q) - tsallis_of(&block_sums(v), q);
    Ok(EntropyValue::new(value, EntropyKind::Tsallis(q)))
}
