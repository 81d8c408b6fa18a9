use serde::Serialize;

use super::{pair_reductions, tomogram, tomographic_information, UnitaryMatrix};
use crate::ensemble::{haar_unitary, trial_rng};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::qstate::{von_neumann, DensityMatrix};
use crate::report::InequalityReport;
use crate::simplex::shannon_of;

/// Eigenvalue splitting below which a 2x2 reduction counts as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Discord of a four-level state read as a pair of two-level systems.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscordReport {
    /// `S(rho)`
    pub s: f64,
    /// `S(rho(1))`, `S(rho(2))`
    pub s1: f64,
    pub s2: f64,
    /// Tomographic entropy at `u10 ⊗ u20`.
    pub h12: f64,
    /// Marginal tomographic entropies at `u10`, `u20`.
    pub h1: f64,
    pub h2: f64,
    /// `h1 + h2 - h12`
    pub information: f64,
    /// `(s1 + s2 - s) - information`
    pub discord: f64,
    /// `h12 <= s1 + s2`, `s <= h12` and `s <= s1 + s2`.
    pub chain: Vec<InequalityReport>,
    /// A reduction had a degenerate spectrum, so its diagonalizer was picked
    /// arbitrarily within the eigenspace.
    pub degenerate_reduction: bool,
    #[serde(skip)]
    pub u1: UnitaryMatrix,
    #[serde(skip)]
    pub u2: UnitaryMatrix,
}

fn diagonalizer(rho: &DensityMatrix) -> Result<(UnitaryMatrix, bool)> {
    let eig = hermitian_eigen(rho.matrix())?;
    let degenerate = eig
        .values
        .windows(2)
        .any(|w| (w[0] - w[1]).abs() < DEGENERACY_TOLERANCE);
    Ok((UnitaryMatrix::new(eig.vectors.adjoint())?, degenerate))
}

fn embed(rho: &DensityMatrix) -> Result<DensityMatrix> {
    match rho.dim() {
        4 => Ok(rho.clone()),
        3 => rho.pad(4),
        d => Err(Error::DimMismatch {
            expected: 4,
            actual: d,
        }),
    }
}

/// Discord of a 4x4 state, or of a qutrit embedded in the top-left block of
/// a 4x4 matrix, evaluated at the unitaries diagonalizing the two
/// reductions.
pub fn discord(rho: &DensityMatrix) -> Result<DiscordReport> {
    let rho = embed(rho)?;
    let (r1, r2) = pair_reductions(&rho)?;
    let (u1, deg1) = diagonalizer(&r1)?;
    let (u2, deg2) = diagonalizer(&r2)?;

    let s = von_neumann(&rho)?.value;
    let s1 = von_neumann(&r1)?.value;
    let s2 = von_neumann(&r2)?.value;
    let h12 = shannon_of(tomogram(&rho, &u1.kron(&u2))?.probabilities.values());
    let h1 = shannon_of(tomogram(&r1, &u1)?.probabilities.values());
    let h2 = shannon_of(tomogram(&r2, &u2)?.probabilities.values());
    let information = h1 + h2 - h12;
    let discord = (s1 + s2 - s) - information;

    let prov = format!("density dim=4 s1={s1} s2={s2}");
    let mut chain = vec![
        InequalityReport::inequality("tomographic_upper", h12, s1 + s2),
        InequalityReport::inequality("tomographic_lower", s, h12),
        InequalityReport::inequality("subadditivity", s, s1 + s2),
    ];
    let degenerate = deg1 || deg2;
    for r in &mut chain {
        r.provenance = prov.clone();
        if degenerate {
            r.flags.push("degenerate_reduction".into());
        }
    }
    Ok(DiscordReport {
        s,
        s1,
        s2,
        h12,
        h1,
        h2,
        information,
        discord,
        chain,
        degenerate_reduction: degenerate,
        u1,
        u2,
    })
}

/// Range of the tomographic information over `samples` Haar-random local
/// unitaries `u1 ⊗ u2`. Diagnostic only; [`discord`] evaluates at the
/// diagonalizers.
pub fn local_information_range(
    rho: &DensityMatrix,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let rho = embed(rho)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..samples as u64 {
        let mut rng = trial_rng(seed, i);
        let u1 = haar_unitary(2, &mut rng)?;
        let u2 = haar_unitary(2, &mut rng)?;
        let info = tomographic_information(&rho, &u1, &u2)?;
        lo = lo.min(info);
        hi = hi.max(info);
    }
    Ok((lo, hi))
}
