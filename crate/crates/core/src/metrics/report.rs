use serde::{Deserialize, Serialize};

use super::bleu::{bleu, BleuConfig, BleuScore};
use super::meteor::{meteor_corpus, MeteorConfig, MeteorScore, PenaltyShape};
use super::nist::{nist, NistScore};
use super::stem::{EnglishStemmer, NoStemmer, Stemmer};
use super::ter::{ter_corpus, TerConfig, TerScore};
use super::{EvalPair, MetricsError};
use crate::corpus::{tokenize, TokenScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StemmerKind {
    None,
    #[default]
    English,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoreConfig {
    pub case_sensitive: bool,
    pub max_n: usize,
    pub nist_max_n: usize,
    pub meteor_cubic: bool,
    pub ter_exhaustive_max_len: usize,
    pub stemmer: StemmerKind,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            case_sensitive: false,
            max_n: 4,
            nist_max_n: 5,
            meteor_cubic: false,
            ter_exhaustive_max_len: 0,
            stemmer: StemmerKind::English,
        }
    }
}

/// All four corpus metrics for one system output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub sentences: usize,
    pub case_sensitive: bool,
    pub bleu: BleuScore,
    pub nist: NistScore,
    pub ter: TerScore,
    pub meteor: MeteorScore,
}

impl MetricReport {
    /// Table row layout: BLEU, TER and METEOR scaled by 100, two decimals.
    pub fn render(&self, label: &str) -> String {
        let width = label.len().max(6);
        let mut out = format!("{:<width$} {:>7} {:>7} {:>7} {:>7}\n", "", "BLEU", "NIST", "TER", "METEOR");
        out.push_str(&format!(
            "{:<width$} {:>7.2} {:>7.2} {:>7.2} {:>7.2}\n",
            label,
            self.bleu.score * 100.0,
            self.nist.score,
            self.ter.score * 100.0,
            self.meteor.score * 100.0
        ));
        out.push_str(&format!(
            "({} sentences, {}; lower TER is better)\n",
            self.sentences,
            if self.case_sensitive { "case-sensitive" } else { "case-insensitive" }
        ));
        out
    }
}

/// Scores a hypothesis file against one or more line-parallel reference
/// files.
pub fn score_all(
    hypothesis: &[String],
    references: &[Vec<String>],
    config: &ScoreConfig,
) -> Result<MetricReport, MetricsError> {
    if hypothesis.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    if references.is_empty() {
        return Err(MetricsError::NoReferences { index: 0 });
    }
    for (k, r) in references.iter().enumerate() {
        if r.len() != hypothesis.len() {
            return Err(MetricsError::LineCountMismatch { reference: k, expected: hypothesis.len(), found: r.len() });
        }
    }
    let scheme = TokenScheme { lowercase: !config.case_sensitive };
    let pairs: Vec<EvalPair> = crate::exec::map_range(hypothesis.len(), |i| EvalPair {
        hypothesis: tokenize(&hypothesis[i], &scheme),
        references: references.iter().map(|r| tokenize(&r[i], &scheme)).collect(),
    });
    score_pairs(&pairs, config)
}

/// [`score_all`] on already tokenized pairs.
pub fn score_pairs(pairs: &[EvalPair], config: &ScoreConfig) -> Result<MetricReport, MetricsError> {
    let stemmer: Box<dyn Stemmer> = match config.stemmer {
        StemmerKind::None => Box::new(NoStemmer),
        StemmerKind::English => Box::new(EnglishStemmer::default()),
    };
    let meteor_cfg = MeteorConfig {
        penalty: if config.meteor_cubic { PenaltyShape::Cubic } else { PenaltyShape::Linear },
        ..Default::default()
    };
    Ok(MetricReport {
        sentences: pairs.len(),
        case_sensitive: config.case_sensitive,
        bleu: bleu(pairs, &BleuConfig { max_n: config.max_n, ..Default::default() })?,
        nist: nist(pairs, config.nist_max_n)?,
        ter: ter_corpus(pairs, &TerConfig { exhaustive_max_len: config.ter_exhaustive_max_len })?.0,
        meteor: meteor_corpus(pairs, stemmer.as_ref(), &meteor_cfg)?.0,
    })
}
