use std::f64::consts::PI;

use num_complex::Complex64;

use super::{tomogram, Tomogram, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::linalg::{expm_i_hermitian, CMatrix, ZERO};
use crate::qstate::DensityMatrix;

/// Spin-y operator for `d = 2j + 1` levels, basis ordered `m = -j, ..., j`.
fn spin_y(d: usize) -> CMatrix {
    let j = (d as f64 - 1.0) / 2.0;
    let mut jy = CMatrix::from_element(d, d, ZERO);
    for i in 0..d - 1 {
        let m = -j + i as f64;
        // <m+1| J+ |m>
        let c = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        // J_y = (J+ - J-) / 2i
        jy[(i + 1, i)] = Complex64::new(0.0, -c / 2.0);
        jy[(i, i + 1)] = Complex64::new(0.0, c / 2.0);
    }
    jy
}

/// The unitary `u` for which `diag(u rho u^dagger)` is the spin tomogram
/// along `n = (sin t cos f, sin t sin f, cos t)`: the adjoint of the rotation
/// with Euler angles `(phi, theta, 0)`, i.e. `exp(i theta J_y) exp(i phi J_z)`.
pub fn spin_rotation(dim: usize, theta: f64, phi: f64) -> Result<UnitaryMatrix> {
    if !(1..=4).contains(&dim) {
        return Err(Error::BadDim(dim));
    }
    if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
        return Err(Error::BadAngle { theta, phi });
    }
    let j = (dim as f64 - 1.0) / 2.0;
    let z_phase = CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            let m = -j + r as f64;
            Complex64::from_polar(1.0, phi * m)
        } else {
            ZERO
        }
    });
    let y_rot = if dim == 2 {
        let (s, c) = (theta / 2.0).sin_cos();
        CMatrix::from_row_slice(2, 2, &[c.into(), (-s).into(), s.into(), c.into()])
    } else {
        expm_i_hermitian(&(spin_y(dim) * Complex64::from(theta)))
    };
    UnitaryMatrix::new(y_rot * z_phase)
}

/// Spin tomogram of `rho` along the axis with polar angle `theta` and
/// azimuth `phi`.
pub fn spin_tomogram_axis(rho: &DensityMatrix, theta: f64, phi: f64) -> Result<Tomogram> {
    tomogram(rho, &spin_rotation(rho.dim(), theta, phi)?)
}
