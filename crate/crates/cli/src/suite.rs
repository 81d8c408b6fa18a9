//! Randomized sweeps over every check battery, aggregated into one report.

use std::collections::HashMap;
use std::path::Path;
use std::time::Instant;

use entrobox::ensemble::{diagonal_density, dirichlet, ginibre_density, trial_rng};
use entrobox::{CheckKind, DensityMatrix, InequalityReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{self, StateRecord, Tagged};
use crate::config::{Suite, SuiteConfig};
use crate::error::{CliError, Result};
use crate::io::{ingest_state, write_json, InputState};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ENTROBOX_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckAggregate {
    pub suite: Suite,
    pub tag: String,
    pub check: String,
    pub count: usize,
    pub min_gap: f64,
    pub max_gap: f64,
    pub mean_gap: f64,
    pub tolerance: f64,
    pub failures: usize,
    /// Reports that carried a degeneracy flag.
    pub flagged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailingInstance {
    pub suite: Suite,
    pub tag: String,
    /// Trial index within the sweep; absent for the input state.
    pub trial: Option<u64>,
    pub state: StateRecord,
    pub report: InequalityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub config: SuiteConfig,
    pub passed: bool,
    pub checks: Vec<CheckAggregate>,
    pub failing_instances: Vec<FailingInstance>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            crate::EXIT_PASS
        } else {
            crate::EXIT_FAIL
        }
    }

    pub fn aggregate(&self, suite: Suite, tag: &str) -> Option<&CheckAggregate> {
        self.checks
            .iter()
            .find(|c| c.suite == suite && c.tag == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ensemble {
    Dirichlet,
    Ginibre,
    Diagonal,
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    suite: Suite,
    ensemble: Ensemble,
    dim: usize,
}

fn plans(cfg: &SuiteConfig) -> Vec<Plan> {
    let mut out = Vec::new();
    for suite in cfg.suite.expand() {
        for &dim in &cfg.dims {
            let plan = |ensemble| Plan {
                suite,
                ensemble,
                dim,
            };
            match suite {
                Suite::Classical => out.push(plan(Ensemble::Dirichlet)),
                Suite::Quantum | Suite::Tomographic => out.push(plan(Ensemble::Ginibre)),
                Suite::Discord if (3..=4).contains(&dim) => {
                    out.push(plan(Ensemble::Ginibre));
                    out.push(plan(Ensemble::Diagonal));
                }
                _ => {}
            }
        }
    }
    out
}

/// Master seed of one sweep, so that sweeps of different suites and
/// dimensions draw independent states.
fn plan_seed(seed: u64, plan: &Plan) -> u64 {
    let label = format!("{}/{:?}/{}", plan.suite.name(), plan.ensemble, plan.dim);
    let mut h = 0xcbf2_9ce4_8422_2325_u64 ^ seed;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

struct TrialOutput {
    checks: Vec<Tagged>,
    /// Kept only when some check failed.
    record: Option<StateRecord>,
}

fn apply_tolerance(checks: Vec<Tagged>, tolerance: f64) -> Vec<Tagged> {
    checks
        .into_iter()
        .map(|(tag, r)| match r.kind {
            CheckKind::Inequality => (tag, r.with_tolerance(tolerance)),
            CheckKind::Identity => (tag, r),
        })
        .collect()
}

fn finish(checks: Vec<Tagged>, record: StateRecord, tolerance: f64) -> TrialOutput {
    let checks = apply_tolerance(checks, tolerance);
    let failed = checks.iter().any(|(_, r)| !r.passed);
    TrialOutput {
        checks,
        record: failed.then_some(record),
    }
}

fn density_checks(
    suite: Suite,
    rho: &DensityMatrix,
    cfg: &SuiteConfig,
    rng: &mut impl rand::Rng,
    optimize: Option<u64>,
    record: &mut StateRecord,
) -> Result<Vec<Tagged>> {
    Ok(match suite {
        Suite::Quantum => checks::quantum(rho)?,
        Suite::Tomographic => checks::tomographic(rho, rng, &cfg.q_values, optimize, record)?,
        Suite::Discord => checks::discord_checks(rho)?,
        Suite::Classical | Suite::All => Vec::new(),
    })
}

fn run_trial(cfg: &SuiteConfig, plan: &Plan, trial: u64) -> Result<TrialOutput> {
    let mut rng = trial_rng(plan_seed(cfg.seed, plan), trial);
    let d = plan.dim;
    if plan.ensemble == Ensemble::Dirichlet {
        let p = dirichlet(d, &mut rng)?;
        return Ok(finish(
            checks::classical(&p, &cfg.q_values)?,
            StateRecord::prob(&p),
            cfg.tolerance,
        ));
    }
    let rho = match plan.ensemble {
        Ensemble::Diagonal => diagonal_density(d, &mut rng)?,
        _ => ginibre_density(d, &mut rng)?,
    };
    let mut record = StateRecord::density(&rho);
    let checks = if plan.ensemble == Ensemble::Diagonal {
        checks::diagonal_discord(&rho)?
    } else {
        let optimize = (trial < cfg.optimizer_trials as u64).then(|| cfg.seed.wrapping_add(trial));
        density_checks(plan.suite, &rho, cfg, &mut rng, optimize, &mut record)?
    };
    Ok(finish(checks, record, cfg.tolerance))
}

fn input_checks(cfg: &SuiteConfig, state: &InputState) -> Result<Vec<(Suite, TrialOutput)>> {
    let mut out = Vec::new();
    let mut rng = trial_rng(cfg.seed, u64::MAX);
    for suite in cfg.suite.expand() {
        let (checks, record) = match (suite, state) {
            (Suite::Classical, InputState::Prob(p)) => {
                (checks::classical(p, &cfg.q_values)?, StateRecord::prob(p))
            }
            (Suite::Classical, InputState::Density(rho)) => {
                let p = entrobox::ProbVec::new(&rho.populations(), 1e-12)?;
                (
                    checks::classical(&p, &cfg.q_values)?,
                    StateRecord::density(rho),
                )
            }
            (_, state) => {
                let rho = match state {
                    InputState::Prob(p) => DensityMatrix::diagonal(p),
                    InputState::Density(rho) => rho.clone(),
                };
                let mut record = StateRecord::density(&rho);
                let mut checks =
                    density_checks(suite, &rho, cfg, &mut rng, Some(cfg.seed), &mut record)?;
                if suite == Suite::Discord && matches!(state, InputState::Prob(_)) {
                    checks.extend(checks::diagonal_discord(&rho)?);
                }
                (checks, record)
            }
        };
        let prefixed = checks
            .into_iter()
            .map(|(tag, r)| (format!("@input/{tag}"), r))
            .collect();
        out.push((suite, finish(prefixed, record, cfg.tolerance)));
    }
    Ok(out)
}

#[derive(Default)]
struct Aggregator {
    index: HashMap<(Suite, String), usize>,
    checks: Vec<CheckAggregate>,
    sums: Vec<f64>,
    failing: Vec<FailingInstance>,
}

impl Aggregator {
    fn add(&mut self, suite: Suite, trial: Option<u64>, output: TrialOutput) {
        for (tag, report) in output.checks {
            let key = (suite, tag.clone());
            let i = *self.index.entry(key).or_insert_with(|| {
                self.checks.push(CheckAggregate {
                    suite,
                    tag: tag.clone(),
                    check: report.name.clone(),
                    count: 0,
                    min_gap: f64::INFINITY,
                    max_gap: f64::NEG_INFINITY,
                    mean_gap: 0.0,
                    tolerance: report.tolerance,
                    failures: 0,
                    flagged: 0,
                });
                self.sums.push(0.0);
                self.checks.len() - 1
            });
            let agg = &mut self.checks[i];
            agg.count += 1;
            agg.min_gap = agg.min_gap.min(report.gap);
            agg.max_gap = agg.max_gap.max(report.gap);
            self.sums[i] += report.gap;
            if !report.flags.is_empty() {
                agg.flagged += 1;
            }
            if !report.passed {
                agg.failures += 1;
                let state = output
                    .record
                    .clone()
                    .expect("record kept for failing trials");
                self.failing.push(FailingInstance {
                    suite,
                    tag,
                    trial,
                    state,
                    report,
                });
            }
        }
    }

    fn finish(mut self) -> (Vec<CheckAggregate>, Vec<FailingInstance>) {
        for (agg, sum) in self.checks.iter_mut().zip(&self.sums) {
            agg.mean_gap = sum / agg.count as f64;
        }
        (self.checks, self.failing)
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| CliError::Config(e.to_string()))
}

fn sweep(cfg: &SuiteConfig, agg: &mut Aggregator) -> Result<()> {
    for plan in plans(cfg) {
        let outputs: Vec<TrialOutput> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| run_trial(cfg, &plan, t))
            .collect::<Result<_>>()?;
        for (t, output) in outputs.into_iter().enumerate() {
            agg.add(plan.suite, Some(t as u64), output);
        }
    }
    Ok(())
}

/// Runs the configured suites. Trials are evaluated in parallel and merged
/// in trial order, so the report depends only on the configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<RunReport> {
    let start = Instant::now();
    cfg.validate()?;
    let input = cfg.input_path.as_deref().map(ingest_state).transpose()?;
    let mut agg = Aggregator::default();
    if let Some(state) = &input {
        for (suite, output) in input_checks(cfg, state)? {
            agg.add(suite, None, output);
        }
    }
    match thread_pool()? {
        Some(pool) => pool.install(|| sweep(cfg, &mut agg))?,
        None => sweep(cfg, &mut agg)?,
    }
    let (checks, failing_instances) = agg.finish();
    Ok(RunReport {
        version: entrobox::VERSION.to_string(),
        config: cfg.clone(),
        passed: failing_instances.is_empty(),
        checks,
        failing_instances,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

pub fn write_report(report: &RunReport, path: &Path) -> Result<()> {
    write_json(path, report)
}
