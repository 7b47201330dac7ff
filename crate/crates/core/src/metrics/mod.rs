//! Translation quality metrics: BLEU, NIST, METEOR and TER.
//!
//! Every metric works on [`EvalPair`]s of already tokenized text and exposes
//! both a sentence-level score and a corpus-level score aggregated from
//! per-sentence sufficient statistics, so corpus results do not depend on
//! sentence order or thread scheduling.

mod bleu;
mod meteor;
mod nist;
mod report;
mod stem;
mod ter;

pub use bleu::{bleu, bleu_stats, brevity_penalty, BleuConfig, BleuScore, BleuStats};
pub use meteor::{meteor, meteor_corpus, MeteorConfig, MeteorScore, MeteorStats, PenaltyShape};
pub use nist::{nist, nist_info_weights, NistScore};
pub use report::{score_all, score_pairs, MetricReport, ScoreConfig, StemmerKind};
pub use stem::{EnglishStemmer, LexiconStemmer, NoStemmer, Stemmer};
pub use ter::{ter, ter_corpus, ter_exhaustive, TerConfig, TerScore, TerStats};

use crate::corpus::{tokenize, TokenScheme};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MetricsError {
    #[error("no sentences to score")]
    EmptyCorpus,
    #[error("sentence {index}: no references")]
    NoReferences { index: usize },
    #[error("sentence {index}: references are empty")]
    EmptyReference { index: usize },
    #[error("reference file {reference} has {found} lines, hypothesis has {expected}")]
    LineCountMismatch { reference: usize, expected: usize, found: usize },
    #[error("invalid n-gram weights: {0}")]
    InvalidWeights(String),
}

/// One hypothesis with its references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPair {
    pub hypothesis: Vec<String>,
    pub references: Vec<Vec<String>>,
}

impl EvalPair {
    pub fn new(hypothesis: Vec<String>, references: Vec<Vec<String>>) -> Result<Self, MetricsError> {
        if references.is_empty() {
            return Err(MetricsError::NoReferences { index: 0 });
        }
        Ok(EvalPair { hypothesis, references })
    }

    /// Tokenizes hypothesis and references with the same scheme.
    pub fn from_text(hypothesis: &str, references: &[&str], scheme: &TokenScheme) -> Result<Self, MetricsError> {
        EvalPair::new(
            tokenize(hypothesis, scheme),
            references.iter().map(|r| tokenize(r, scheme)).collect(),
        )
    }

    /// Whitespace-split pair, mostly for tests and examples.
    pub fn from_words(hypothesis: &str, references: &[&str]) -> Self {
        let split = |s: &str| s.split_whitespace().map(str::to_owned).collect();
        EvalPair {
            hypothesis: split(hypothesis),
            references: references.iter().map(|r| split(r)).collect(),
        }
    }
}

fn check_corpus(pairs: &[EvalPair]) -> Result<(), MetricsError> {
    if pairs.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    match pairs.iter().position(|p| p.references.is_empty()) {
        Some(index) => Err(MetricsError::NoReferences { index }),
        None => Ok(()),
    }
}

/// n-gram counts of `tokens` for a single order.
pub(crate) fn ngram_counts(tokens: &[String], n: usize) -> std::collections::HashMap<&[String], u64> {
    let mut m = std::collections::HashMap::new();
    if n > 0 && tokens.len() >= n {
        for g in tokens.windows(n) {
            *m.entry(g).or_insert(0) += 1;
        }
    }
    m
}

/// For every n-gram of the hypothesis, the number of occurrences that are
/// matched when clipped at the maximum count over references.
pub(crate) fn clipped_matches<'a>(
    hyp: &'a [String],
    refs: &[Vec<String>],
    n: usize,
) -> Vec<(&'a [String], u64)> {
    let hyp_counts = ngram_counts(hyp, n);
    let ref_counts: Vec<_> = refs.iter().map(|r| ngram_counts(r, n)).collect();
    let mut out: Vec<(&[String], u64)> = hyp_counts
        .into_iter()
        .filter_map(|(g, c)| {
            let max_ref = ref_counts.iter().map(|rc| rc.get(g).copied().unwrap_or(0)).max().unwrap_or(0);
            let m = c.min(max_ref);
            (m > 0).then_some((g, m))
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_at_max_reference_count() {
        let p = EvalPair::from_words("the the the", &["the cat", "the the mat"]);
        let m = clipped_matches(&p.hypothesis, &p.references, 1);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].1, 2);
    }

    #[test]
    fn pair_requires_reference() {
        assert_eq!(
            EvalPair::new(vec!["a".into()], vec![]),
            Err(MetricsError::NoReferences { index: 0 })
        );
        assert_eq!(check_corpus(&[]), Err(MetricsError::EmptyCorpus));
    }

    #[test]
    fn text_pairs_share_the_scheme() {
        let p = EvalPair::from_text("The cat.", &["the cat ."], &TokenScheme::lowercased()).unwrap();
        assert_eq!(p.hypothesis, p.references[0]);
    }
}
