//! Density matrices of a single qudit, their reductions under a relabelling
//! of the basis as pairs or triples of indices, and the quantum
//! subadditivity / strong subadditivity inequalities for those reductions.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermiticity_defect, CMatrix, ZERO};
use crate::report::{EntropyKind, EntropyValue, InequalityReport};
use crate::simplex::{shannon_of, ProbVec, TableShape};

/// Most negative eigenvalue accepted by [`validate_density`].
pub const PSD_TOLERANCE: f64 = 1e-8;
/// Largest allowed `|Tr rho - 1|` before renormalization.
pub const TRACE_TOLERANCE: f64 = 1e-6;

/// Hermitian, positive semidefinite, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

/// Eigenvalues clipped at zero, renormalized, in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let eig = hermitian_eigen(&rho.matrix)?;
        let mut eigenvalues: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
        let sum: f64 = eigenvalues.iter().sum();
        eigenvalues.iter_mut().for_each(|l| *l /= sum);
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// Symmetrizes, renormalizes the trace and checks positivity.
///
/// Fails with [`Error::NotHermitian`] if `max |rho_jk - conj(rho_kj)| > tol`.
pub fn validate_density(raw: CMatrix, tol: f64) -> Result<DensityMatrix> {
    let (rows, cols) = raw.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::Empty);
    }
    if let Some(index) = raw
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite { index });
    }
    let defect = hermiticity_defect(&raw);
    if defect > tol {
        return Err(Error::NotHermitian { defect });
    }
    let mut m = (&raw + raw.adjoint()) * Complex64::from(0.5);
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::BadTrace { trace });
    }
    m /= Complex64::from(trace);
    let eig = hermitian_eigen(&m)?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -PSD_TOLERANCE {
        return Err(Error::NotPSD {
            min_eigenvalue: min,
        });
    }
    Ok(DensityMatrix { matrix: m })
}

impl DensityMatrix {
    pub fn new(raw: CMatrix, tol: f64) -> Result<Self> {
        validate_density(raw, tol)
    }

    /// Wraps a matrix produced by an operation that preserves the density
    /// matrix properties (reduction, padding, conjugation by a unitary).
    pub(crate) fn from_valid(matrix: CMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDim(dim));
        }
        Ok(Self {
            matrix: CMatrix::identity(dim, dim) / Complex64::from(dim as f64),
        })
    }

    /// `|psi><psi|` for `psi` normalized.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::Empty);
        }
        let v = DVector::from_iterator(psi.len(), psi.iter().map(|z| z / norm));
        Ok(Self {
            matrix: &v * v.adjoint(),
        })
    }

    /// Diagonal matrix with `p` on the diagonal.
    pub fn diagonal(p: &ProbVec) -> Self {
        let d = DVector::from_iterator(p.dim(), p.values().iter().map(|&x| Complex64::from(x)));
        Self {
            matrix: CMatrix::from_diagonal(&d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Real parts of the diagonal.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::of(self)
    }

    /// Embeds `self` in the top-left block of a `new_dim` square zero matrix.
    pub fn pad(&self, new_dim: usize) -> Result<Self> {
        let d = self.dim();
        if new_dim < d {
            return Err(Error::ShrinkForbidden {
                from: d,
                to: new_dim,
            });
        }
        let mut m = CMatrix::zeros(new_dim, new_dim);
        m.view_mut((0, 0), (d, d)).copy_from(&self.matrix);
        Ok(Self { matrix: m })
    }
}

pub fn pad_density(rho: &DensityMatrix, new_dim: usize) -> Result<DensityMatrix> {
    rho.pad(new_dim)
}

/// Which sub-indices survive a reduction; axes are 0-based.
///
/// Two factors: keep `[0]` or `[1]`. Three factors: keep `[0, 1]`, `[1, 2]`
/// or `[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPlan {
    shape: TableShape,
    kept: Vec<usize>,
}

impl ReductionPlan {
    pub fn new(factors: &[usize], kept: &[usize]) -> Result<Self> {
        let shape = TableShape::new(factors)?;
        let ok = match shape.rank() {
            2 => matches!(kept, [0] | [1]),
            _ => matches!(kept, [0, 1] | [1, 2] | [1]),
        };
        if !ok {
            return Err(Error::BadAxes(kept.to_vec()));
        }
        Ok(Self {
            shape,
            kept: kept.to_vec(),
        })
    }

    pub fn factors(&self) -> &[usize] {
        self.shape.factors()
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn output_dim(&self) -> usize {
        self.kept.iter().map(|&a| self.shape.factors()[a]).product()
    }
}

/// Partial-trace analog: rows and columns are read as multi-indices through
/// the row-major bijection and the discarded sub-indices are summed pairwise,
/// `out[(a, a')] = sum_s rho[(a s, a' s)]`.
pub fn reduce(rho: &DensityMatrix, plan: &ReductionPlan) -> Result<DensityMatrix> {
    let d = rho.dim();
    let shape = &plan.shape;
    if shape.size() != d {
        return Err(Error::ShapeMismatch {
            shape: shape.factors().to_vec(),
            product: shape.size(),
            dim: d,
        });
    }
    let factors = shape.factors();
    let discarded: Vec<usize> = (0..shape.rank())
        .filter(|a| !plan.kept.contains(a))
        .collect();
    let multis: Vec<Vec<usize>> = (0..d).map(|i| shape.multi_index(i)).collect();
    let kept_index = |m: &[usize]| plan.kept.iter().fold(0, |acc, &a| acc * factors[a] + m[a]);
    let n = plan.output_dim();
    let mut out = CMatrix::from_element(n, n, ZERO);
    for r in 0..d {
        for c in 0..d {
            if discarded.iter().all(|&a| multis[r][a] == multis[c][a]) {
                out[(kept_index(&multis[r]), kept_index(&multis[c]))] += rho.matrix[(r, c)];
            }
        }
    }
    Ok(DensityMatrix::from_valid(out))
}

/// `-Tr rho ln rho` from the clipped spectrum.
pub fn von_neumann(rho: &DensityMatrix) -> Result<EntropyValue> {
    let spectrum = rho.spectrum()?;
    Ok(EntropyValue::new(
        shannon_of(spectrum.eigenvalues()),
        EntropyKind::VonNeumann,
    ))
}

fn padded_for(rho: &DensityMatrix, factors: &[usize]) -> Result<DensityMatrix> {
    let size: usize = factors.iter().product();
    if size < rho.dim() {
        return Err(Error::ShapeMismatch {
            shape: factors.to_vec(),
            product: size,
            dim: rho.dim(),
        });
    }
    rho.pad(size)
}

fn provenance(rho: &DensityMatrix, factors: &[usize]) -> String {
    let size: usize = factors.iter().product();
    let f: Vec<String> = factors.iter().map(|n| n.to_string()).collect();
    format!(
        "density dim={} padded={} factors=({})",
        rho.dim(),
        size,
        f.join("x")
    )
}

/// `S(rho) <= S(rho(1)) + S(rho(2))` with the reductions taken over the
/// factorization `factors` of the padded dimension.
pub fn quantum_subadditivity(rho: &DensityMatrix, factors: [usize; 2]) -> Result<InequalityReport> {
    let padded = padded_for(rho, &factors)?;
    let r1 = reduce(&padded, &ReductionPlan::new(&factors, &[0])?)?;
    let r2 = reduce(&padded, &ReductionPlan::new(&factors, &[1])?)?;
    let s = von_neumann(&padded)?.value;
    let s1 = von_neumann(&r1)?.value;
    let s2 = von_neumann(&r2)?.value;
    Ok(
        InequalityReport::inequality("quantum_subadditivity", s, s1 + s2)
            .with_provenance(provenance(rho, &factors))
            .term("S", s)
            .term("S1", s1)
            .term("S2", s2),
    )
}

/// The three reductions used by strong subadditivity.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongReductions {
    pub r12: DensityMatrix,
    pub r23: DensityMatrix,
    pub r2: DensityMatrix,
}

pub fn strong_reductions(rho: &DensityMatrix, factors: [usize; 3]) -> Result<StrongReductions> {
    let padded = padded_for(rho, &factors)?;
    Ok(StrongReductions {
        r12: reduce(&padded, &ReductionPlan::new(&factors, &[0, 1])?)?,
        r23: reduce(&padded, &ReductionPlan::new(&factors, &[1, 2])?)?,
        r2: reduce(&padded, &ReductionPlan::new(&factors, &[1])?)?,
    })
}

/// `S(rho) + S(R2) <= S(R12) + S(R23)`.
pub fn quantum_strong_subadditivity(
    rho: &DensityMatrix,
    factors: [usize; 3],
) -> Result<InequalityReport> {
    let red = strong_reductions(rho, factors)?;
    let s = von_neumann(rho)?.value;
    let s12 = von_neumann(&red.r12)?.value;
    let s23 = von_neumann(&red.r23)?.value;
    let s2 = von_neumann(&red.r2)?.value;
    Ok(
        InequalityReport::inequality("quantum_strong_subadditivity", s + s2, s12 + s23)
            .with_provenance(provenance(rho, &factors))
            .term("S", s)
            .term("S2", s2)
            .term("S12", s12)
            .term("S23", s23),
    )
}

/// The two 2x2 reductions of a qutrit embedded in a 4x4 matrix.
pub fn qutrit_reductions(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    if rho.dim() != 3 {
        return Err(Error::DimMismatch {
            expected: 3,
            actual: rho.dim(),
        });
    }
    let padded = rho.pad(4)?;
    Ok((
        reduce(&padded, &ReductionPlan::new(&[2, 2], &[0])?)?,
        reduce(&padded, &ReductionPlan::new(&[2, 2], &[1])?)?,
    ))
}

/// `S(rho) <= S(rho1) + S(rho2)` for the qutrit reductions.
pub fn qutrit_subadditivity(rho: &DensityMatrix) -> Result<InequalityReport> {
    if rho.dim() != 3 {
        return Err(Error::DimMismatch {
            expected: 3,
            actual: rho.dim(),
        });
    }
    let report = quantum_subadditivity(rho, [2, 2])?;
    Ok(InequalityReport {
        name: "qutrit_subadditivity".into(),
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&[c(s), ZERO, ZERO, c(s)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let mm = validate_density(CMatrix::identity(4, 4) / c(4.0), 1e-10).unwrap();
        assert_eq!(mm, DensityMatrix::maximally_mixed(4).unwrap());

        let b = validate_density(bell().matrix().clone(), 1e-10).unwrap();
        let spec = b.spectrum().unwrap();
        assert_abs_diff_eq!(spec.eigenvalues()[0], 1.0, epsilon = 1e-12);
        assert!(spec.eigenvalues()[1..].iter().all(|&l| l.abs() < 1e-12));

        let bad = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.01), c(-0.01)]));
        assert!(matches!(
            validate_density(bad, 1e-10),
            Err(Error::NotPSD { .. })
        ));
    }

    #[test]
    fn validate_errors() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.5), c(0.4), c(0.5)]);
        assert!(matches!(
            validate_density(m, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
        let m = CMatrix::identity(2, 2);
        assert!(matches!(
            validate_density(m, 1e-10),
            Err(Error::BadTrace { .. })
        ));
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(
            validate_density(m, 1e-10),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn pad_density_examples() {
        let r = DensityMatrix::maximally_mixed(7).unwrap();
        let p = r.pad(8).unwrap();
        assert_eq!(p.dim(), 8);
        assert!((0..8).all(|k| p.get(7, k) == ZERO && p.get(k, 7) == ZERO));
        assert_abs_diff_eq!(von_neumann(&p).unwrap().value, 7f64.ln(), epsilon = 1e-12);
        assert_eq!(r.pad(7).unwrap(), r);
        assert!(r.pad(6).is_err());
    }

    #[test]
    fn reduce_examples() {
        let mm = DensityMatrix::maximally_mixed(4).unwrap();
        let r = reduce(&mm, &ReductionPlan::new(&[2, 2], &[0]).unwrap()).unwrap();
        assert_eq!(r, DensityMatrix::maximally_mixed(2).unwrap());

        // Distinct entries so every position is identifiable.
        let m = CMatrix::from_fn(4, 4, |i, j| Complex64::new((10 * i + j) as f64, 0.0));
        let rho = DensityMatrix::from_valid(m.clone());
        let r1 = reduce(&rho, &ReductionPlan::new(&[2, 2], &[0]).unwrap()).unwrap();
        let e = |i: usize, j: usize| m[(i - 1, j - 1)];
        assert_eq!(r1.get(0, 0), e(1, 1) + e(2, 2));
        assert_eq!(r1.get(0, 1), e(1, 3) + e(2, 4));
        assert_eq!(r1.get(1, 0), e(3, 1) + e(4, 2));
        assert_eq!(r1.get(1, 1), e(3, 3) + e(4, 4));
        let r2 = reduce(&rho, &ReductionPlan::new(&[2, 2], &[1]).unwrap()).unwrap();
        assert_eq!(r2.get(0, 0), e(1, 1) + e(3, 3));
        assert_eq!(r2.get(0, 1), e(1, 2) + e(3, 4));
        assert_eq!(r2.get(1, 0), e(2, 1) + e(4, 3));
        assert_eq!(r2.get(1, 1), e(2, 2) + e(4, 4));

        assert!(matches!(
            reduce(&mm, &ReductionPlan::new(&[2, 3], &[0]).unwrap()),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            ReductionPlan::new(&[2, 2, 2], &[0, 2]),
            Err(Error::BadAxes(_))
        ));
        assert!(ReductionPlan::new(&[2, 2], &[0, 1]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        assert_abs_diff_eq!(
            von_neumann(&DensityMatrix::maximally_mixed(4).unwrap())
                .unwrap()
                .value,
            4f64.ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(von_neumann(&bell()).unwrap().value, 0.0, epsilon = 1e-12);
        let p = ProbVec::new(&[0.5, 0.25, 0.125, 0.125], 0.0).unwrap();
        assert_abs_diff_eq!(
            von_neumann(&DensityMatrix::diagonal(&p)).unwrap().value,
            1.75 * LN_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn subadditivity_examples() {
        let r = quantum_subadditivity(&DensityMatrix::maximally_mixed(4).unwrap(), [2, 2]).unwrap();
        assert_abs_diff_eq!(r.gap, 0.0, epsilon = 1e-14);
        let r = quantum_subadditivity(&bell(), [2, 2]).unwrap();
        assert_abs_diff_eq!(r.gap, 2.0 * LN_2, epsilon = 1e-12);
        assert!(quantum_subadditivity(&bell(), [2, 1]).is_err());
    }

    #[test]
    fn strong_subadditivity_examples() {
        let r =
            quantum_strong_subadditivity(&DensityMatrix::maximally_mixed(8).unwrap(), [2, 2, 2])
                .unwrap();
        assert_abs_diff_eq!(r.gap, 0.0, epsilon = 1e-14);
        let r =
            quantum_strong_subadditivity(&DensityMatrix::maximally_mixed(5).unwrap(), [2, 2, 2])
                .unwrap();
        assert!(r.passed);
        assert!(r.provenance.contains("padded=8"));
    }

    #[test]
    fn qutrit_examples() {
        let (a, b) = qutrit_reductions(&DensityMatrix::maximally_mixed(3).unwrap()).unwrap();
        let expected = [[2.0 / 3.0, 0.0], [0.0, 1.0 / 3.0]];
        for (m, name) in [(&a, "first"), (&b, "second")] {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (m.get(i, j) - c(expected[i][j])).norm() < 1e-15,
                        "{name} ({i},{j})"
                    );
                }
            }
        }
        let (a, _) =
            qutrit_reductions(&DensityMatrix::diagonal(&ProbVec::delta(3, 0).unwrap())).unwrap();
        assert_eq!(a.populations(), vec![1.0, 0.0]);
        assert!(qutrit_reductions(&DensityMatrix::maximally_mixed(4).unwrap()).is_err());
        assert!(
            qutrit_subadditivity(&DensityMatrix::maximally_mixed(3).unwrap())
                .unwrap()
                .passed
        );
    }
}
