use num_complex::Complex64;

use super::UnitaryMatrix;
use crate::error::{Error, Result};
use crate::linalg::{expm_i_hermitian, CMatrix, ZERO};

/// Real coordinates on the unitary group: `U = exp(i H)` with `H` Hermitian.
///
/// Layout of the `d^2` parameters: the `d` diagonal entries of `H`, then for
/// each pair `j < k` in row-major order the real and imaginary part of
/// `H[j][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryChart {
    dim: usize,
    params: Vec<f64>,
}

impl UnitaryChart {
    pub fn new(dim: usize, params: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDim(dim));
        }
        if params.len() != dim * dim {
            return Err(Error::BadChart {
                dim,
                expected: dim * dim,
                actual: params.len(),
            });
        }
        Ok(Self { dim, params })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            params: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn generator(&self) -> CMatrix {
        let d = self.dim;
        let mut h = CMatrix::from_element(d, d, ZERO);
        for j in 0..d {
            h[(j, j)] = Complex64::from(self.params[j]);
        }
        let mut idx = d;
        for j in 0..d {
            for k in j + 1..d {
                let z = Complex64::new(self.params[idx], self.params[idx + 1]);
                h[(j, k)] = z;
                h[(k, j)] = z.conj();
                idx += 2;
            }
        }
        h
    }

    pub fn to_unitary(&self) -> UnitaryMatrix {
        UnitaryMatrix::from_valid(expm_i_hermitian(&self.generator()))
    }
}

pub fn chart_to_unitary(chart: &UnitaryChart) -> UnitaryMatrix {
    chart.to_unitary()
}
