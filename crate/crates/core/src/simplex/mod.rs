//! Classical probability machinery: vectors on the simplex, zero padding,
//! index bijections into multi-index tables, marginals, entropies and the
//! classical entropic inequalities.

mod entropy;
mod inequality;
mod table;

pub use entropy::{
    conditional_entropy, conditional_pair, conditional_tsallis, shannon, shannon_of, tsallis,
    tsallis_of, ConditionalPair,
};
pub use inequality::{
    axis_split_gap, chain_rule_check, strong_subadditivity_gap, subadditivity_gap,
    tsallis_chain_check, tsallis_monotonicity_check, TsallisMonotonicity,
};
pub use table::{
    admissible_shapes, minimal_padded_dim, reshape, Keep3, Marginal, ProbTable, TableShape,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest allowed |sum - 1| before renormalization.
pub const SUM_TOLERANCE: f64 = 1e-6;

/// A point on the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbVec {
    values: Vec<f64>,
}

impl ProbVec {
    /// Validates `raw`, see [`validate_prob_vec`].
    pub fn new(raw: &[f64], tol: f64) -> Result<Self> {
        validate_prob_vec(raw, tol)
    }

    /// Wraps values already known to lie on the simplex (sums of valid
    /// probabilities, tomogram diagonals that were validated, ...).
    pub(crate) fn from_simplex(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|&v| v >= 0.0));
        debug_assert!((values.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { values }
    }

    /// Uniform distribution on `dim` outcomes.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            values: vec![1.0 / dim as f64; dim],
        })
    }

    /// Point mass on `index`.
    pub fn delta(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::BadDim(dim));
        }
        let mut values = vec![0.0; dim];
        values[index] = 1.0;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Appends zeros up to `new_dim` components.
    pub fn pad(&self, new_dim: usize) -> Result<Self> {
        if new_dim < self.dim() {
            return Err(Error::ShrinkForbidden {
                from: self.dim(),
                to: new_dim,
            });
        }
        let mut values = self.values.clone();
        values.resize(new_dim, 0.0);
        Ok(Self { values })
    }
}

/// Clips negatives in `[-tol, 0)` to zero and renormalizes to unit sum.
///
/// Rejects components below `-tol` and inputs whose sum is off by more than
/// [`SUM_TOLERANCE`].
pub fn validate_prob_vec(raw: &[f64], tol: f64) -> Result<ProbVec> {
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    let mut values = Vec::with_capacity(raw.len());
    for (index, &v) in raw.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if v < -tol {
            return Err(Error::RejectNegative { index, value: v });
        }
        values.push(v.max(0.0));
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::RejectSum { sum });
    }
    if sum != 1.0 {
        values.iter_mut().for_each(|v| *v /= sum);
    }
    Ok(ProbVec { values })
}

/// Pads `p` to `new_dim` components with trailing zeros.
pub fn pad(p: &ProbVec, new_dim: usize) -> Result<ProbVec> {
    p.pad(new_dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_accepts_valid_vector() {
        let p = validate_prob_vec(&[0.5, 0.5], 1e-10).unwrap();
        assert_eq!(p.values(), &[0.5, 0.5]);
    }

    #[test]
    fn validate_clips_tiny_negatives() {
        let p = validate_prob_vec(&[1.0, -1e-12], 1e-10).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0]);
    }

    #[test]
    fn validate_rejects_negative() {
        let err = validate_prob_vec(&[0.7, -0.1, 0.4], 1e-10).unwrap_err();
        assert!(matches!(err, Error::RejectNegative { index: 1, .. }));
    }

    #[test]
    fn validate_rejects_bad_sum_and_empty() {
        assert!(matches!(
            validate_prob_vec(&[0.5, 0.6], 1e-10),
            Err(Error::RejectSum { .. })
        ));
        assert_eq!(validate_prob_vec(&[], 1e-10), Err(Error::Empty));
        assert!(matches!(
            validate_prob_vec(&[f64::NAN], 1e-10),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn validate_renormalizes_small_drift() {
        let p = validate_prob_vec(&[0.5 + 1e-8, 0.5], 1e-10).unwrap();
        assert!((p.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.values()[0] > p.values()[1]);
    }

    #[test]
    fn pad_appends_exact_zeros() {
        let raw = [0.1, 0.2, 0.1, 0.2, 0.1, 0.2, 0.1];
        let p = validate_prob_vec(&raw, 0.0).unwrap();
        let q = p.pad(8).unwrap();
        assert_eq!(&q.values()[..7], p.values());
        assert_eq!(q.values()[7], 0.0);
        assert_eq!(p.pad(7).unwrap(), p);

        let t = validate_prob_vec(&[0.2, 0.3, 0.5], 0.0).unwrap();
        assert_eq!(pad(&t, 4).unwrap().values(), &[0.2, 0.3, 0.5, 0.0]);
        assert_eq!(p.pad(6), Err(Error::ShrinkForbidden { from: 7, to: 6 }));
    }
}
