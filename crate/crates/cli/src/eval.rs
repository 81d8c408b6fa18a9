//! Single-state, single-check evaluation.

use entrobox::qstate::{quantum_strong_subadditivity, quantum_subadditivity, qutrit_subadditivity};
use entrobox::simplex::{
    axis_split_gap, chain_rule_check, strong_subadditivity_gap, subadditivity_gap,
    tsallis_chain_check, tsallis_monotonicity_check,
};
use entrobox::tomography::{discord, minimize_tomographic_entropy, MinimizerOptions};
use entrobox::{CheckKind, DensityMatrix, InequalityReport, ProbVec, TableShape};
use serde::Serialize;

use crate::checks::MIN_ENTROPY_ACCURACY;
use crate::error::{CliError, Result};
use crate::io::InputState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// Subadditivity on a two-factor layout (`--shape`).
    Subadditivity,
    /// Strong subadditivity on a three-factor layout (`--shape`).
    StrongSubadditivity,
    /// Strong subadditivity of a 7-vector on (2, 2, 2).
    Eq12,
    /// Middle-axis subadditivity of a 7-vector on (2, 2, 2).
    Eq13,
    /// Conditional-entropy chain rule of a 4-vector.
    ChainRule,
    /// Tsallis chain rule of a 4-vector, for each `--q`.
    TsallisChain,
    /// Tsallis monotonicity bounds of a 4-vector, for each `--q`.
    TsallisMonotonicity,
    /// Quantum subadditivity on a two-factor layout (`--shape`).
    QuantumSubadditivity,
    /// Quantum strong subadditivity on a three-factor layout (`--shape`).
    QuantumStrongSubadditivity,
    /// Subadditivity of a qutrit embedded in four levels.
    Qutrit,
    /// Discord and its entropy chain (3 or 4 levels).
    Discord,
    /// Minimized tomographic entropy against the von Neumann entropy.
    MinEntropy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub passed: bool,
    pub reports: Vec<InequalityReport>,
}

/// Parses `2x4` or `2x2x2`.
pub fn parse_shape(raw: &str) -> Result<TableShape> {
    let factors = raw
        .split(['x', 'X', ','])
        .map(|f| f.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("bad shape {raw:?}")))?;
    Ok(TableShape::new(&factors)?)
}

fn as_prob(state: &InputState) -> Result<ProbVec> {
    Ok(match state {
        InputState::Prob(p) => p.clone(),
        InputState::Density(rho) => ProbVec::new(&rho.populations(), 1e-12)?,
    })
}

fn as_density(state: &InputState) -> DensityMatrix {
    match state {
        InputState::Prob(p) => DensityMatrix::diagonal(p),
        InputState::Density(rho) => rho.clone(),
    }
}

fn need_shape(shape: Option<&TableShape>, rank: usize) -> Result<&TableShape> {
    shape
        .filter(|s| s.rank() == rank)
        .ok_or_else(|| CliError::Config(format!("this check needs --shape with {rank} factors")))
}

pub fn evaluate(
    state: &InputState,
    check: Check,
    shape: Option<&TableShape>,
    q_values: &[f64],
    tolerance: f64,
) -> Result<EvalReport> {
    let seven = || TableShape::new(&[2, 2, 2]);
    let reports = match check {
        Check::Subadditivity => vec![subadditivity_gap(&as_prob(state)?, need_shape(shape, 2)?)?],
        Check::StrongSubadditivity => vec![strong_subadditivity_gap(
            &as_prob(state)?,
            need_shape(shape, 3)?,
        )?],
        Check::Eq12 | Check::Eq13 => {
            let p = as_prob(state)?;
            if p.dim() != 7 {
                return Err(entrobox::Error::DimMismatch {
                    expected: 7,
                    actual: p.dim(),
                }
                .into());
            }
            if check == Check::Eq12 {
                vec![strong_subadditivity_gap(&p, &seven()?)?]
            } else {
                vec![axis_split_gap(&p, &seven()?, 1)?]
            }
        }
        Check::ChainRule => vec![chain_rule_check(&as_prob(state)?)?],
        Check::TsallisChain => {
            let p = as_prob(state)?;
            q_values
                .iter()
                .map(|&q| tsallis_chain_check(&p, q))
                .collect::<entrobox::Result<_>>()?
        }
        Check::TsallisMonotonicity => {
            let p = as_prob(state)?;
            let mut out = Vec::new();
            for &q in q_values {
                let m = tsallis_monotonicity_check(&p, q)?;
                out.extend([m.coarse_graining, m.conditioning]);
            }
            out
        }
        Check::QuantumSubadditivity => {
            let f = need_shape(shape, 2)?.factors();
            vec![quantum_subadditivity(&as_density(state), [f[0], f[1]])?]
        }
        Check::QuantumStrongSubadditivity => {
            let f = need_shape(shape, 3)?.factors();
            vec![quantum_strong_subadditivity(
                &as_density(state),
                [f[0], f[1], f[2]],
            )?]
        }
        Check::Qutrit => vec![qutrit_subadditivity(&as_density(state))?],
        Check::Discord => {
            let r = discord(&as_density(state))?;
            let mut out = r.chain.clone();
            out.push(InequalityReport::inequality(
                "discord_nonnegative",
                0.0,
                r.discord,
            ));
            out
        }
        Check::MinEntropy => {
            let rho = as_density(state);
            let s = entrobox::qstate::von_neumann(&rho)?.value;
            let h = minimize_tomographic_entropy(&rho, MinimizerOptions::default())?
                .entropy
                .value;
            vec![
                InequalityReport::inequality("min_entropy_lower_bound", s, h),
                InequalityReport::inequality("min_entropy_accuracy", h, s + MIN_ENTROPY_ACCURACY),
            ]
        }
    };
    let reports: Vec<InequalityReport> = reports
        .into_iter()
        .map(|r| {
            if r.kind == CheckKind::Inequality {
                r.with_tolerance(tolerance)
            } else {
                r
            }
        })
        .collect();
    Ok(EvalReport {
        passed: reports.iter().all(|r| r.passed),
        reports,
    })
}
