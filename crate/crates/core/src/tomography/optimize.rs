use num_complex::Complex64;

use super::{eigenbasis_unitary, tomographic_entropy, UnitaryMatrix};
use crate::ensemble::{haar_unitary, trial_rng};
use crate::error::Result;
use crate::linalg::{conjugated_diagonal, expm_i_hermitian, CMatrix, ZERO};
use crate::qstate::DensityMatrix;
use crate::report::EntropyValue;
use crate::simplex::shannon_of;

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder-Mead with dimension-adapted coefficients (Gao & Han). Stops when
/// the spread of simplex values drops to `ftol`, the simplex diameter to
/// `xtol`, or after `max_evals` evaluations.
pub fn nelder_mead<F>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    ftol: f64,
    xtol: f64,
) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let nf = n.max(1) as f64;
    let (alpha, gamma, beta, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();
    let mut converged = false;

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if n == 0 || spread <= ftol || diameter <= xtol {
            converged = true;
            break;
        }
        // One iteration costs at most n + 2 evaluations (reflect, contract, shrink).
        if evals + n + 2 > max_evals {
            break;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            centroid.iter_mut().zip(v).for_each(|(c, x)| *c += x / nf);
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(alpha);
        let fr = eval(&reflected, &mut evals);
        if fr < values[0] {
            let expanded = along(alpha * gamma);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, bound) = if fr < values[n] {
            (along(alpha * beta), fr)
        } else {
            (along(-beta), values[n])
        };
        let fc = eval(&contracted, &mut evals);
        if fc < bound {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            for (x, b) in simplex[i].iter_mut().zip(&best) {
                *x = b + sigma * (*x - b);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }
    NelderMeadResult {
        x: simplex.swap_remove(0),
        value: values[0],
        evaluations: evals,
        converged,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizerOptions {
    /// Independent local searches; the first starts at the identity, the
    /// rest at Haar-random unitaries.
    pub restarts: usize,
    /// Objective evaluations allowed per restart.
    pub budget: usize,
    pub seed: u64,
}

impl Default for MinimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 8,
            budget: 5000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimumEntropy {
    pub unitary: UnitaryMatrix,
    pub entropy: EntropyValue,
    pub evaluations: usize,
}

/// Hermitian generator with zero diagonal from the `d(d-1)` off-diagonal
/// chart coordinates. Diagonal generators only rephase the rotated basis
/// vectors to first order and leave the tomogram unchanged, so the search
/// skips them.
fn off_diagonal_generator(d: usize, x: &[f64]) -> CMatrix {
    let mut h = CMatrix::from_element(d, d, ZERO);
    let mut idx = 0;
    for j in 0..d {
        for k in j + 1..d {
            let z = Complex64::new(x[idx], x[idx + 1]);
            h[(j, k)] = z;
            h[(k, j)] = z.conj();
            idx += 2;
        }
    }
    h
}

fn entropy_at(rho: &CMatrix, u: &CMatrix) -> f64 {
    let diag: Vec<f64> = conjugated_diagonal(u, rho).iter().map(|z| z.re).collect();
    shannon_of(&diag)
}

/// Repeated Nelder-Mead runs in a chart centred on the best unitary so far;
/// re-centring keeps the simplex well scaled as it closes in.
fn local_search(rho: &CMatrix, start: CMatrix, budget: usize) -> (CMatrix, f64, usize) {
    let d = rho.nrows();
    let n = d * (d - 1);
    let mut center = start;
    let mut center_value = entropy_at(rho, &center);
    let mut used = 1;
    let mut step = 0.3;
    while used + n + 1 < budget {
        let res = nelder_mead(
            |x| {
                entropy_at(
                    rho,
                    &(expm_i_hermitian(&off_diagonal_generator(d, x)) * &center),
                )
            },
            &vec![0.0; n],
            step,
            budget - used,
            1e-16,
            1e-10,
        );
        used += res.evaluations;
        if res.value.is_nan() || res.value >= center_value {
            break;
        }
        let improvement = center_value - res.value;
        center = expm_i_hermitian(&off_diagonal_generator(d, &res.x)) * &center;
        center_value = res.value;
        let moved = res.x.iter().map(|v| v.abs()).fold(0.0, f64::max);
        step = moved.clamp(1e-7, 0.3);
        if improvement < 1e-15 {
            break;
        }
    }
    (center, center_value, used)
}

/// Derivative-free minimization of the tomographic Shannon entropy over the
/// unitary group. The true minimum is the von Neumann entropy, attained at
/// the eigenbasis (see [`exact_minimum`]).
pub fn minimize_tomographic_entropy(
    rho: &DensityMatrix,
    opts: MinimizerOptions,
) -> Result<MinimumEntropy> {
    let d = rho.dim();
    let mut best: Option<(CMatrix, f64)> = None;
    let mut evaluations = 0;
    for r in 0..opts.restarts.max(1) {
        let start = if r == 0 {
            CMatrix::identity(d, d)
        } else {
            haar_unitary(d, &mut trial_rng(opts.seed, r as u64))?
                .matrix()
                .clone()
        };
        let (u, value, used) = if d > 1 {
            local_search(rho.matrix(), start, opts.budget.max(1))
        } else {
            let value = entropy_at(rho.matrix(), &start);
            (start, value, 1)
        };
        evaluations += used;
        if best.as_ref().is_none_or(|(_, b)| value < *b) {
            best = Some((u, value));
        }
    }
    let (u, _) = best.expect("at least one restart");
    let unitary = UnitaryMatrix::new(u)?;
    let entropy = tomographic_entropy(rho, &unitary)?;
    Ok(MinimumEntropy {
        unitary,
        entropy,
        evaluations,
    })
}

/// The minimizing unitary from the eigen-decomposition.
pub fn exact_minimum(rho: &DensityMatrix) -> Result<MinimumEntropy> {
    let unitary = eigenbasis_unitary(rho)?;
    let entropy = tomographic_entropy(rho, &unitary)?;
    Ok(MinimumEntropy {
        unitary,
        entropy,
        evaluations: 0,
    })
}
