//! Seeded random states for the randomized sweeps.
//!
//! Every trial gets its own generator derived from a master seed and the
//! trial index, so sweeps give the same states however they are scheduled.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qstate::DensityMatrix;
use crate::simplex::ProbVec;
use crate::tomography::UnitaryMatrix;

/// Generator for trial `index` of a sweep seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point on the simplex (Dirichlet with all concentrations 1).
pub fn dirichlet<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ProbVec> {
    if dim == 0 {
        return Err(Error::BadDim(dim));
    }
    let w: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    Ok(ProbVec::from_simplex(
        w.into_iter().map(|x| x / total).collect(),
    ))
}

/// Matrix of i.i.d. standard complex Gaussians (real and imaginary parts
/// each with variance 1/2).
pub fn ginibre_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    })
}

/// `G G^dagger / Tr(G G^dagger)` for a Ginibre matrix `G`.
pub fn ginibre_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::BadDim(dim));
    }
    let g = ginibre_matrix(dim, rng);
    let w = &g * g.adjoint();
    let trace = w.trace();
    Ok(DensityMatrix::from_valid(w / trace))
}

/// Diagonal density matrix with a uniformly random spectrum.
pub fn diagonal_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    Ok(DensityMatrix::diagonal(&dirichlet(dim, rng)?))
}

/// Haar-distributed unitary: Gram-Schmidt QR of a Ginibre matrix, which
/// fixes every diagonal entry of R real positive.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if dim == 0 {
        return Err(Error::BadDim(dim));
    }
    let mut q = ginibre_matrix(dim, rng);
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = q.column(k).dotc(&q.column(j));
            let qk = q.column(k).into_owned();
            let mut col = q.column_mut(j);
            col -= qk * proj;
        }
        let norm = q.column(j).norm();
        q.column_mut(j).unscale_mut(norm);
    }
    UnitaryMatrix::new(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    DirichletSimplex,
    GinibreDensity,
    HaarUnitary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Prob(ProbVec),
    Density(DensityMatrix),
    Unitary(UnitaryMatrix),
}

/// `count` states of `kind`; state `i` is drawn from [`trial_rng`]`(seed, i)`.
pub fn generate(kind: EnsembleKind, dim: usize, count: usize, seed: u64) -> Result<Vec<State>> {
    if dim == 0 {
        return Err(Error::BadDim(dim));
    }
    (0..count as u64)
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            Ok(match kind {
                EnsembleKind::DirichletSimplex => State::Prob(dirichlet(dim, &mut rng)?),
                EnsembleKind::GinibreDensity => State::Density(ginibre_density(dim, &mut rng)?),
                EnsembleKind::HaarUnitary => State::Unitary(haar_unitary(dim, &mut rng)?),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermiticity_defect;

    #[test]
    fn dirichlet_is_valid() {
        let mut rng = trial_rng(3, 0);
        let p = dirichlet(4, &mut rng).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(p.values().iter().all(|&x| x >= 0.0));
        assert!((p.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ginibre_is_valid() {
        let mut rng = trial_rng(5, 1);
        let rho = ginibre_density(7, &mut rng).unwrap();
        assert_eq!(hermiticity_defect(rho.matrix()), 0.0);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let revalidated = DensityMatrix::new(rho.matrix().clone(), 1e-12).unwrap();
        assert!(revalidated
            .spectrum()
            .unwrap()
            .eigenvalues()
            .iter()
            .all(|&l| l > 0.0));
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = trial_rng(9, 2);
        for d in 1..=6 {
            haar_unitary(d, &mut rng).unwrap();
        }
    }

    #[test]
    fn streams_are_deterministic() {
        for kind in [
            EnsembleKind::DirichletSimplex,
            EnsembleKind::GinibreDensity,
            EnsembleKind::HaarUnitary,
        ] {
            assert_eq!(
                generate(kind, 4, 3, 11).unwrap(),
                generate(kind, 4, 3, 11).unwrap()
            );
            assert_ne!(
                generate(kind, 4, 3, 11).unwrap(),
                generate(kind, 4, 3, 12).unwrap()
            );
        }
        assert_eq!(
            generate(EnsembleKind::HaarUnitary, 0, 1, 0),
            Err(Error::BadDim(0))
        );
    }
}
