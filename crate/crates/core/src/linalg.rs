//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest allowed `max_i |A v_i - lambda_i v_i|` from the eigensolver.
pub const EIGEN_RESIDUAL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `i` belongs to `values[i]`; the first component of magnitude
    /// above 1e-12 in each column is real and positive.
    pub vectors: CMatrix,
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_diagonal(m: &CMatrix) -> bool {
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| i == j || m[(i, j)] == ZERO))
}

/// Largest `|m_jk - conj(m_kj)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut defect: f64 = 0.0;
    for j in 0..n {
        for k in j..n {
            defect = defect.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    defect
}

/// Diagonalizes a Hermitian matrix. Exactly diagonal input is handled by a
/// stable sort so that degenerate eigenvalues keep the standard basis.
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    let n = m.nrows();
    let (values, vectors) = if is_diagonal(m) {
        (
            m.diagonal().iter().map(|z| z.re).collect::<Vec<_>>(),
            CMatrix::identity(n, n),
        )
    } else {
        let eig = m.clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let residual = (0..n)
        .map(|i| {
            let v = vectors.column(i);
            (m * v - v * Complex64::from(values[i]))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    if !residual.is_finite() || residual > EIGEN_RESIDUAL * max_abs(m).max(1.0) {
        return Err(Error::EigenFailure { residual });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut sorted = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src).into_owned();
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12).copied() {
            let phase = lead.conj() / lead.norm();
            col *= phase;
        }
        sorted.set_column(dst, &col);
    }
    Ok(HermitianEigen {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: sorted,
    })
}

/// `exp(i H)` for Hermitian `H`, by scaling and squaring a Taylor series.
pub fn expm_i_hermitian(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    let a = h * Complex64::i();
    let norm = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * Complex64::from(scale);
    let mut result = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=18 {
        term = &term * &a * Complex64::from(1.0 / k as f64);
        result += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Diagonal of `u m u^dagger`.
pub fn conjugated_diagonal(u: &CMatrix, m: &CMatrix) -> Vec<Complex64> {
    let um = u * m;
    (0..u.nrows())
        .map(|i| (0..u.ncols()).map(|k| um[(i, k)] * u[(i, k)].conj()).sum())
        .collect()
}

/// `max |u^dagger u - I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}
