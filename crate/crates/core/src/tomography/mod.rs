//! Tomographic probabilities: the diagonal of `u rho u^dagger` for a unitary
//! `u`, its Shannon entropy and minimization over `u`, the marginal
//! tomograms of a four-level state read as two "qubits", and the resulting
//! single-qudit discord.

mod chart;
mod discord;
mod optimize;
mod spin;

pub use chart::{chart_to_unitary, UnitaryChart};
pub use discord::{discord, local_information_range, DiscordReport};
pub use optimize::{
    exact_minimum, minimize_tomographic_entropy, nelder_mead, MinimizerOptions, MinimumEntropy,
    NelderMeadResult,
};
pub use spin::{spin_rotation, spin_tomogram_axis};

use crate::error::{Error, Result};
use crate::linalg::{conjugated_diagonal, hermitian_eigen, kron, unitarity_defect, CMatrix};
use crate::qstate::{reduce, DensityMatrix, ReductionPlan};
use crate::report::{EntropyKind, EntropyValue};
use crate::simplex::{shannon_of, validate_prob_vec, ProbVec};

/// Largest allowed `max |u^dagger u - I|`.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;
/// Largest imaginary part tolerated on a tomogram diagonal.
pub const DIAGONAL_IMAG_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let defect = unitarity_defect(&matrix);
        if defect.is_nan() || defect > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_valid(matrix: CMatrix) -> Self {
        debug_assert!(unitarity_defect(&matrix) <= UNITARITY_TOLERANCE);
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self ⊗ other`, row-major over (self index, other index).
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            matrix: kron(&self.matrix, &other.matrix),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
        }
    }
}

/// Outcome probabilities of `rho` measured in the basis rotated by `unitary`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    pub probabilities: ProbVec,
    pub unitary: UnitaryMatrix,
    /// Content fingerprint of the source density matrix.
    pub state_ref: String,
}

/// FNV-1a over the dimension and the bit patterns of every entry.
pub fn state_fingerprint(rho: &DensityMatrix) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(rho.dim() as u64);
    for z in rho.matrix().iter() {
        eat(z.re.to_bits());
        eat(z.im.to_bits());
    }
    format!("rho:{h:016x}")
}

/// `w(m) = <m| u rho u^dagger |m>`.
pub fn tomogram(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<Tomogram> {
    if u.dim() != rho.dim() {
        return Err(Error::DimMismatch {
            expected: rho.dim(),
            actual: u.dim(),
        });
    }
    let diag = conjugated_diagonal(u.matrix(), rho.matrix());
    let imag = diag.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > DIAGONAL_IMAG_TOLERANCE {
        return Err(Error::ComplexDiagonal { imag });
    }
    let re: Vec<f64> = diag.iter().map(|z| z.re).collect();
    Ok(Tomogram {
        probabilities: validate_prob_vec(&re, DIAGONAL_IMAG_TOLERANCE)?,
        unitary: u.clone(),
        state_ref: state_fingerprint(rho),
    })
}

/// Shannon entropy of [`tomogram`]; never below the von Neumann entropy.
pub fn tomographic_entropy(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<EntropyValue> {
    let t = tomogram(rho, u)?;
    Ok(EntropyValue::new(
        shannon_of(t.probabilities.values()),
        EntropyKind::Shannon,
    ))
}

/// Unitary whose rows are the eigenvectors of `rho` (conjugated), ordered by
/// descending eigenvalue, so `u rho u^dagger` is diagonal.
pub fn eigenbasis_unitary(rho: &DensityMatrix) -> Result<UnitaryMatrix> {
    let eig = hermitian_eigen(rho.matrix())?;
    UnitaryMatrix::new(eig.vectors.adjoint())
}

fn require_four(rho: &DensityMatrix, u1: &UnitaryMatrix, u2: &UnitaryMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    for u in [u1, u2] {
        if u.dim() != 2 {
            return Err(Error::DimMismatch {
                expected: 2,
                actual: u.dim(),
            });
        }
    }
    Ok(())
}

/// The two 2x2 reductions of a 4x4 state under the `(2, 2)` relabelling.
pub fn pair_reductions(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    Ok((
        reduce(rho, &ReductionPlan::new(&[2, 2], &[0])?)?,
        reduce(rho, &ReductionPlan::new(&[2, 2], &[1])?)?,
    ))
}

/// Diagonals of `u1 rho(1) u1^dagger` and `u2 rho(2) u2^dagger`.
pub fn marginal_tomograms(
    rho: &DensityMatrix,
    u1: &UnitaryMatrix,
    u2: &UnitaryMatrix,
) -> Result<(ProbVec, ProbVec)> {
    require_four(rho, u1, u2)?;
    let (r1, r2) = pair_reductions(rho)?;
    Ok((
        tomogram(&r1, u1)?.probabilities,
        tomogram(&r2, u2)?.probabilities,
    ))
}

/// Mutual information `H1(u1) + H2(u2) - H12(u1 ⊗ u2)` of the joint tomogram.
pub fn tomographic_information(
    rho: &DensityMatrix,
    u1: &UnitaryMatrix,
    u2: &UnitaryMatrix,
) -> Result<f64> {
    let (w1, w2) = marginal_tomograms(rho, u1, u2)?;
    let h12 = tomographic_entropy(rho, &u1.kron(u2))?.value;
    Ok(shannon_of(w1.values()) + shannon_of(w2.values()) - h12)
}
