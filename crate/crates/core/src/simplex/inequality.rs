use super::entropy::{
    block_sums, check_q, conditional_pair, interleaved_sums, require_dim4, shannon_of, tsallis_of,
    TSALLIS_SHANNON_SWITCH,
};
use super::table::{reshape, Keep3, ProbTable, TableShape};
use super::ProbVec;
use crate::error::{Error, Result};
use crate::report::InequalityReport;
use crate::IDENTITY_TOLERANCE;

fn padded_table(p: &ProbVec, shape: &TableShape, rank: usize) -> Result<ProbTable> {
    if shape.rank() != rank {
        return Err(Error::BadShape(shape.factors().to_vec()));
    }
    if shape.size() < p.dim() {
        return Err(Error::ShapeMismatch {
            shape: shape.factors().to_vec(),
            product: shape.size(),
            dim: p.dim(),
        });
    }
    reshape(&p.pad(shape.size())?, shape)
}

fn provenance(p: &ProbVec, shape: &TableShape) -> String {
    format!(
        "prob_vec dim={} padded={} shape={}",
        p.dim(),
        shape.size(),
        shape
    )
}

/// `H(joint) <= H(rows) + H(columns)` for `p` padded and laid out on a
/// two-factor shape.
pub fn subadditivity_gap(p: &ProbVec, shape: &TableShape) -> Result<InequalityReport> {
    let t = padded_table(p, shape, 2)?;
    let joint = shannon_of(t.entries());
    let h1 = shannon_of(t.marginal2(0)?.values());
    let h2 = shannon_of(t.marginal2(1)?.values());
    Ok(
        InequalityReport::inequality("subadditivity", joint, h1 + h2)
            .with_provenance(provenance(p, shape))
            .term("H12", joint)
            .term("H1", h1)
            .term("H2", h2),
    )
}

/// `H(123) + H(2) <= H(12) + H(23)` for `p` padded and laid out on a
/// three-factor shape.
pub fn strong_subadditivity_gap(p: &ProbVec, shape: &TableShape) -> Result<InequalityReport> {
    let t = padded_table(p, shape, 3)?;
    let h123 = shannon_of(t.entries());
    let h12 = shannon_of(t.marginal3(Keep3::First2)?.entries());
    let h23 = shannon_of(t.marginal3(Keep3::Last2)?.entries());
    let h2 = shannon_of(t.marginal3(Keep3::Middle)?.entries());
    Ok(
        InequalityReport::inequality("strong_subadditivity", h123 + h2, h12 + h23)
            .with_provenance(provenance(p, shape))
            .term("H123", h123)
            .term("H2", h2)
            .term("H12", h12)
            .term("H23", h23),
    )
}

/// Subadditivity across the cut that separates `axis` from the other two
/// axes of a three-factor layout.
///
/// With shape `(2, 2, 2)` and `axis = 1` on a padded 7-vector this is the
/// bound `H(p) <= H(p1+p2+p5+p6, p3+p4+p7) + H(p1+p3, p2+p4, p5+p7, p6)`.
pub fn axis_split_gap(p: &ProbVec, shape: &TableShape, axis: usize) -> Result<InequalityReport> {
    let t = padded_table(p, shape, 3)?;
    if axis > 2 {
        return Err(Error::BadAxis { axis, factors: 3 });
    }
    let rest: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
    let joint = shannon_of(t.entries());
    let h_axis = shannon_of(&t.sum_to(&[axis])?);
    let h_rest = shannon_of(&t.sum_to(&rest)?);
    Ok(
        InequalityReport::inequality("axis_split_subadditivity", joint, h_axis + h_rest)
            .with_provenance(format!("{} axis={axis}", provenance(p, shape)))
            .term("H_joint", joint)
            .term("H_axis", h_axis)
            .term("H_rest", h_rest),
    )
}

/// Chain rule `H(p) = H(within | block) + H(block)` for a four-outcome
/// distribution, with the conditional term evaluated from the conditional
/// distributions `-sum p_i ln(p_i / block_i)` rather than by subtraction.
pub fn chain_rule_check(p: &ProbVec) -> Result<InequalityReport> {
    let v = require_dim4(p)?;
    let pair = conditional_pair(p)?;
    let cond: Vec<f64> = pair
        .first
        .values()
        .iter()
        .chain(pair.second.values())
        .copied()
        .collect();
    let h_cond = -v
        .iter()
        .zip(&cond)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &ci)| pi * ci.ln())
        .sum::<f64>();
    let h_block = shannon_of(&block_sums(v));
    let h_joint = shannon_of(&v);
    let mut report =
        InequalityReport::identity("chain_rule", h_joint, h_cond + h_block, IDENTITY_TOLERANCE)
            .with_provenance("prob_vec dim=4 blocks=(1,2)|(3,4)")
            .term("H_joint", h_joint)
            .term("H_conditional", h_cond)
            .term("H_block", h_block);
    for (i, &z) in pair.zero_block.iter().enumerate() {
        if z {
            report = report.flag(format!("zero_block_{}", i + 1));
        }
    }
    Ok(report)
}

/// Tsallis chain rule: the difference form `T_q(p) - T_q(block)` equals the
/// block-weighted form `sum_b w_b^q T_q(conditional_b)`.
pub fn tsallis_chain_check(p: &ProbVec, q: f64) -> Result<InequalityReport> {
    check_q(q)?;
    let v = require_dim4(p)?;
    let pair = conditional_pair(p)?;
    let blocks = block_sums(v);
    let difference = tsallis_of(&v, q) - tsallis_of(&blocks, q);
    let weight = |w: f64| {
        if (q - 1.0).abs() < TSALLIS_SHANNON_SWITCH {
            w
        } else if w > 0.0 {
            w.powf(q)
        } else {
            0.0
        }
    };
    let weighted = weight(blocks[0]) * tsallis_of(pair.first.values(), q)
        + weight(blocks[1]) * tsallis_of(pair.second.values(), q);
    Ok(InequalityReport::identity(
        "tsallis_chain_rule",
        difference,
        weighted,
        IDENTITY_TOLERANCE,
    )
    .with_provenance(format!("prob_vec dim=4 q={q}")))
}

/// The two monotonicity bounds for the conditional Tsallis entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct TsallisMonotonicity {
    /// `T_q(p1 + p2, p3 + p4) <= T_q(p)`.
    pub coarse_graining: InequalityReport,
    /// `T_q(within | block) <= T_q(p1 + p3, p2 + p4)`: conditioning on the
    /// block does not increase the entropy of the within-block position.
    /// Holds for `q >= 1`; fails in general for `q < 1`.
    pub conditioning: InequalityReport,
}

pub fn tsallis_monotonicity_check(p: &ProbVec, q: f64) -> Result<TsallisMonotonicity> {
    check_q(q)?;
    let v = require_dim4(p)?;
    let t_joint = tsallis_of(&v, q);
    let t_block = tsallis_of(&block_sums(v), q);
    let t_within = tsallis_of(&interleaved_sums(v), q);
    let t_cond = t_joint - t_block;
    let prov = format!("prob_vec dim=4 q={q}");
    Ok(TsallisMonotonicity {
        coarse_graining: InequalityReport::inequality("tsallis_coarse_graining", t_block, t_joint)
            .with_provenance(prov.clone())
            .term("T_block", t_block)
            .term("T_joint", t_joint),
        conditioning: InequalityReport::inequality("tsallis_conditioning", t_cond, t_within)
            .with_provenance(prov)
            .term("T_conditional", t_cond)
            .term("T_within", t_within)
            .term("T_block", t_block),
    })
}
