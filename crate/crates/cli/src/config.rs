use std::path::PathBuf;

use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Classical,
    Quantum,
    Tomographic,
    Discord,
    All,
}

impl Suite {
    /// The concrete suites this selection runs, in report order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Classical,
                Suite::Quantum,
                Suite::Tomographic,
                Suite::Discord,
            ],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Classical => "classical",
            Suite::Quantum => "quantum",
            Suite::Tomographic => "tomographic",
            Suite::Discord => "discord",
            Suite::All => "all",
        }
    }
}

/// Everything that determines a run. The output path is not echoed into the
/// report, so identical runs written to different files compare equal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub q_values: Vec<f64>,
    pub tolerance: f64,
    pub dims: Vec<usize>,
    pub input_path: Option<PathBuf>,
    #[serde(skip)]
    pub output_path: PathBuf,
    /// Per-dimension cap on trials for the entropy-minimization check.
    pub optimizer_trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            trials: 1000,
            seed: 0,
            q_values: vec![0.5, 2.0, 3.0],
            tolerance: entrobox::GAP_TOLERANCE,
            dims: vec![2, 3, 4, 5, 7],
            input_path: None,
            output_path: PathBuf::from("entrobox-report.json"),
            optimizer_trials: 100,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(q) = self.q_values.iter().find(|q| !(**q > 0.0 && q.is_finite())) {
            return Err(CliError::Config(format!("q must be positive, got {q}")));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(CliError::Config(format!(
                "dims must be positive, got {:?}",
                self.dims
            )));
        }
        Ok(())
    }
}
