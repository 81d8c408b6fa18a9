//! The per-state check batteries run by each suite. Every report is tagged
//! with the label of the inequality it instantiates.

use entrobox::ensemble::haar_unitary;
use entrobox::qstate::{quantum_strong_subadditivity, quantum_subadditivity, von_neumann};
use entrobox::simplex::{
    admissible_shapes, axis_split_gap, chain_rule_check, shannon, strong_subadditivity_gap,
    subadditivity_gap, tsallis, tsallis_chain_check, tsallis_monotonicity_check,
};
use entrobox::tomography::{
    discord, minimize_tomographic_entropy, spin_tomogram_axis, tomographic_entropy,
    MinimizerOptions,
};
use entrobox::{DensityMatrix, InequalityReport, ProbVec, TableShape};
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::io::{unitary_file, DensityFile};

/// Allowed excess of the minimized tomographic entropy over `S(rho)`.
pub const MIN_ENTROPY_ACCURACY: f64 = 1e-6;
/// Allowed `|T_q - H|` at `q = 1 +- TSALLIS_LIMIT_OFFSET`.
pub const TSALLIS_LIMIT_TOLERANCE: f64 = 1e-3;
pub const TSALLIS_LIMIT_OFFSET: f64 = 1e-4;
/// Discord of a diagonal state must vanish to this accuracy.
pub const DIAGONAL_DISCORD_TOLERANCE: f64 = 1e-10;

pub type Tagged = (String, InequalityReport);

/// Full description of the state a batch of checks ran on, including any
/// random probes, so a failure can be re-evaluated independently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prob_vec: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitary: Option<DensityFile>,
    /// Spin quantization axis `(theta, phi)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<(f64, f64)>,
}

impl StateRecord {
    pub fn prob(p: &ProbVec) -> Self {
        Self {
            prob_vec: Some(p.values().to_vec()),
            density: None,
            unitary: None,
            axis: None,
        }
    }

    pub fn density(rho: &DensityMatrix) -> Self {
        Self {
            prob_vec: None,
            density: Some(DensityFile::from_matrix(rho.matrix())),
            unitary: None,
            axis: None,
        }
    }
}

fn shape_label(s: &TableShape) -> String {
    s.factors()
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// `BASE-dD`, with the shape appended when the dimension admits several.
fn shaped_tag(base: &str, dim: usize, shape: &TableShape, alternatives: usize) -> String {
    if alternatives > 1 {
        format!("{base}-d{dim}-{}", shape_label(shape))
    } else {
        format!("{base}-d{dim}")
    }
}

fn two_two() -> TableShape {
    TableShape::new(&[2, 2]).expect("valid shape")
}

pub fn classical(p: &ProbVec, q_values: &[f64]) -> Result<Vec<Tagged>> {
    let d = p.dim();
    let mut out = Vec::new();
    let pairs = admissible_shapes(d, 2)?;
    for s in &pairs {
        out.push((
            shaped_tag("M1", d, s, pairs.len()),
            subadditivity_gap(p, s)?,
        ));
    }
    let triples = admissible_shapes(d, 3)?;
    for s in &triples {
        out.push((
            shaped_tag("M18", d, s, triples.len()),
            strong_subadditivity_gap(p, s)?,
        ));
    }
    if d == 7 {
        let s = TableShape::new(&[2, 2, 2])?;
        out.push(("Eq12".into(), strong_subadditivity_gap(p, &s)?));
        out.push(("Eq13".into(), axis_split_gap(p, &s, 1)?));
    }
    if d == 4 {
        out.extend(four_outcome(p, q_values, "")?);
        out.push(("M3".into(), subadditivity_gap(p, &two_two())?));
        let h = shannon(p).value;
        for q in [1.0 - TSALLIS_LIMIT_OFFSET, 1.0 + TSALLIS_LIMIT_OFFSET] {
            let t = tsallis(p, q)?.value;
            let report =
                InequalityReport::identity("tsallis_shannon_limit", t, h, TSALLIS_LIMIT_TOLERANCE)
                    .with_provenance(format!("prob_vec dim=4 q={q}"));
            out.push(("Ts-limit".into(), report));
        }
    }
    Ok(out)
}

/// Chain-rule and Tsallis checks for a four-outcome distribution (a raw
/// vector or a spin-3/2 tomogram).
fn four_outcome(p: &ProbVec, q_values: &[f64], suffix: &str) -> Result<Vec<Tagged>> {
    let mut out = vec![(format!("pppp{suffix}"), chain_rule_check(p)?)];
    for &q in q_values {
        out.push((format!("T3-q{q}{suffix}"), tsallis_chain_check(p, q)?));
        let mono = tsallis_monotonicity_check(p, q)?;
        out.push((format!("T4-coarse-q{q}{suffix}"), mono.coarse_graining));
        out.push((format!("T4-cond-q{q}{suffix}"), mono.conditioning));
    }
    Ok(out)
}

pub fn quantum(rho: &DensityMatrix) -> Result<Vec<Tagged>> {
    let d = rho.dim();
    let mut out = Vec::new();
    let pairs = admissible_shapes(d, 2)?;
    for s in &pairs {
        let f = s.factors();
        out.push((
            shaped_tag("DM2", d, s, pairs.len()),
            quantum_subadditivity(rho, [f[0], f[1]])?,
        ));
    }
    let triples = admissible_shapes(d, 3)?;
    for s in &triples {
        let f = s.factors();
        out.push((
            shaped_tag("SSC1", d, s, triples.len()),
            quantum_strong_subadditivity(rho, [f[0], f[1], f[2]])?,
        ));
    }
    Ok(out)
}

/// Tomographic checks with random probes drawn from `rng`; the probes are
/// written into `record`. The entropy minimization runs only if `optimize`.
pub fn tomographic<R: Rng>(
    rho: &DensityMatrix,
    rng: &mut R,
    q_values: &[f64],
    optimize: Option<u64>,
    record: &mut StateRecord,
) -> Result<Vec<Tagged>> {
    let d = rho.dim();
    let s = von_neumann(rho)?.value;
    let mut out = Vec::new();

    let u = haar_unitary(d, rng)?;
    let h = tomographic_entropy(rho, &u)?.value;
    out.push((
        format!("E-d{d}"),
        InequalityReport::inequality("tomographic_entropy_bound", s, h)
            .term("S", s)
            .term("H", h),
    ));
    record.unitary = Some(unitary_file(&u));

    if d == 4 {
        let theta = rng.random_range(0.0..=std::f64::consts::PI);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        record.axis = Some((theta, phi));
        let w = spin_tomogram_axis(rho, theta, phi)?.probabilities;
        out.push(("subadd".into(), subadditivity_gap(&w, &two_two())?));
        out.push(("ConEnt".into(), chain_rule_check(&w)?));
        for (tag, report) in four_outcome(&w, q_values, "-tomo")? {
            if !tag.starts_with("pppp") {
                out.push((tag, report));
            }
        }
    }

    if let Some(seed) = optimize.filter(|_| d <= 4) {
        let m = minimize_tomographic_entropy(
            rho,
            MinimizerOptions {
                seed,
                ..MinimizerOptions::default()
            },
        )?;
        let h_min = m.entropy.value;
        out.push((
            format!("Eq22min-d{d}"),
            InequalityReport::inequality("min_entropy_lower_bound", s, h_min)
                .term("S", s)
                .term("H_min", h_min),
        ));
        out.push((
            format!("Eq22min-d{d}-accuracy"),
            InequalityReport::inequality("min_entropy_accuracy", h_min, s + MIN_ENTROPY_ACCURACY)
                .term("S", s)
                .term("H_min", h_min)
                .term("evaluations", m.evaluations as f64),
        ));
    }
    Ok(out)
}

/// Discord and its entropy chain for a 4x4 state or an embedded qutrit;
/// other dimensions have no check.
pub fn discord_checks(rho: &DensityMatrix) -> Result<Vec<Tagged>> {
    let (chain_tag, nonneg_tag) = match rho.dim() {
        4 => ("newmat8", "G"),
        3 => ("newmat11", "newmat13"),
        _ => return Ok(Vec::new()),
    };
    let r = discord(rho)?;
    let mut out: Vec<Tagged> = r
        .chain
        .iter()
        .map(|c| {
            let part = match c.name.as_str() {
                "tomographic_upper" => "upper",
                "tomographic_lower" => "lower",
                _ => "subadd",
            };
            (format!("{chain_tag}-{part}"), c.clone())
        })
        .collect();
    let mut nonneg = InequalityReport::inequality("discord_nonnegative", 0.0, r.discord)
        .term("S", r.s)
        .term("S1", r.s1)
        .term("S2", r.s2)
        .term("H12", r.h12)
        .term("I", r.information);
    if r.degenerate_reduction {
        nonneg = nonneg.flag("degenerate_reduction");
    }
    out.push((nonneg_tag.into(), nonneg));
    Ok(out)
}

/// Discord of a diagonal state, which must vanish.
pub fn diagonal_discord(rho: &DensityMatrix) -> Result<Vec<Tagged>> {
    let d = rho.dim();
    if !(3..=4).contains(&d) {
        return Ok(Vec::new());
    }
    let r = discord(rho)?;
    let report = InequalityReport::identity(
        "diagonal_discord",
        r.discord,
        0.0,
        DIAGONAL_DISCORD_TOLERANCE,
    );
    Ok(vec![(format!("newmat6-diag-d{d}"), report)])
}
