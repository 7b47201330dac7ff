use std::collections::HashSet;

use serde::Serialize;

use super::{CorpusError, TokenScheme, Vocabulary};

/// Reference word list, normalized with the same scheme as the corpus.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    words: HashSet<String>,
}

impl Dictionary {
    pub fn from_words<I, S>(words: I, scheme: &TokenScheme) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .map(|w| scheme.normalize(w.as_ref().trim()))
            .filter(|w| !w.is_empty())
            .collect();
        Dictionary { words }
    }

    /// One entry per line; only the first whitespace-separated field is used,
    /// so morphological dictionaries with trailing columns load as-is.
    pub fn from_lines<S: AsRef<str>>(lines: &[S], scheme: &TokenScheme) -> Self {
        Self::from_words(
            lines
                .iter()
                .filter_map(|l| l.as_ref().split_whitespace().next()),
            scheme,
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Corpus vocabulary measured against a dictionary.
///
/// Type-level fields count distinct tokens; the `*_tokens` fields weight each
/// type by its corpus frequency.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub corpus_vocab_size: usize,
    pub dictionary_size: usize,
    pub intersection_size: usize,
    pub oov_size: usize,
    pub oov_rate: f64,
    pub corpus_tokens: u64,
    pub oov_tokens: u64,
    pub oov_token_rate: f64,
    /// Most frequent OOV types, by descending count then lexicographically.
    pub oov_sample: Vec<(String, u64)>,
}

pub const OOV_SAMPLE_LEN: usize = 25;

pub fn coverage_report(
    vocab: &Vocabulary,
    dictionary: &Dictionary,
) -> Result<CoverageReport, CorpusError> {
    if dictionary.is_empty() {
        return Err(CorpusError::EmptyDictionary);
    }
    let mut intersection = 0usize;
    let mut oov: Vec<(String, u64)> = Vec::new();
    for (tok, n) in vocab.iter() {
        if dictionary.contains(tok) {
            intersection += 1;
        } else {
            oov.push((tok.to_owned(), n));
        }
    }
    let oov_size = oov.len();
    let oov_tokens: u64 = oov.iter().map(|(_, n)| n).sum();
    oov.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    oov.truncate(OOV_SAMPLE_LEN);
    let ratio = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    Ok(CoverageReport {
        corpus_vocab_size: vocab.len(),
        dictionary_size: dictionary.len(),
        intersection_size: intersection,
        oov_size,
        oov_rate: ratio(oov_size as f64, vocab.len() as f64),
        corpus_tokens: vocab.total_tokens(),
        oov_tokens,
        oov_token_rate: ratio(oov_tokens as f64, vocab.total_tokens() as f64),
        oov_sample: oov,
    })
}

impl CoverageReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "corpus vocabulary: {}\ndictionary size: {}\nintersection: {}\nOOV types: {} ({:.1}%)\nOOV tokens: {} of {} ({:.1}%)\n",
            self.corpus_vocab_size,
            self.dictionary_size,
            self.intersection_size,
            self.oov_size,
            100.0 * self.oov_rate,
            self.oov_tokens,
            self.corpus_tokens,
            100.0 * self.oov_token_rate,
        );
        if !self.oov_sample.is_empty() {
            s.push_str("most frequent OOV:");
            for (w, n) in &self.oov_sample {
                s.push_str(&format!(" {w}:{n}"));
            }
            s.push('\n');
        }
        s
    }
}
