use std::path::Path;

use serde::Deserialize;
use smtwb::alignment::Heuristic;
use smtwb::cleaning::CleaningConfig;
use smtwb::metrics::ScoreConfig;

use crate::error::{CliResult, Invalid};

/// Experiment configuration file; every field is optional and command-line
/// flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub jobs: Option<usize>,
    pub clean: CleaningConfig,
    pub lm: LmSection,
    pub score: ScoreConfig,
    pub symmetrize: SymmetrizeSection,
    pub extract: ExtractSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LmSection {
    pub order: usize,
    pub smoothing: SmoothingName,
}

impl Default for LmSection {
    fn default() -> Self {
        LmSection { order: smtwb::lm::DEFAULT_ORDER, smoothing: SmoothingName::Kn }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SmoothingName {
    /// interpolated Kneser-Ney
    Kn,
    /// Witten-Bell
    Wb,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SymmetrizeSection {
    pub heuristic: Heuristic,
}

impl Default for SymmetrizeSection {
    fn default() -> Self {
        SymmetrizeSection { heuristic: Heuristic::GrowDiagFinalAnd }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtractSection {
    pub encoding: Option<String>,
    pub marker: Option<String>,
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else { return Ok(PipelineConfig::default()) };
        let text = std::fs::read_to_string(path).invalid(format!("reading config {}", path.display()))?;
        toml::from_str(&text).invalid(format!("parsing config {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config() {
        let c: PipelineConfig = toml::from_str(
            "jobs = 2\n[clean]\nmax_len = 90\n[lm]\norder = 6\nsmoothing = \"wb\"\n[symmetrize]\nheuristic = \"grow-diag\"\n",
        )
        .unwrap();
        assert_eq!(c.jobs, Some(2));
        assert_eq!(c.clean.max_len, 90);
        assert_eq!(c.clean.min_block, CleaningConfig::default().min_block);
        assert_eq!((c.lm.order, c.lm.smoothing), (6, SmoothingName::Wb));
        assert_eq!(c.symmetrize.heuristic, Heuristic::GrowDiag);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<PipelineConfig>("[lm]\nordr = 6\n").is_err());
    }
}
