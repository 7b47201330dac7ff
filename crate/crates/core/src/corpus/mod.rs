//! Segments, tokenization and vocabulary statistics.

mod coverage;
mod io;
mod token;

pub use coverage::{coverage_report, CoverageReport, Dictionary};
pub use io::{read_lines, write_lines};
pub use token::{tokenize, tokenize_spans, TokenScheme, TokenSpan};

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("segment {id} contains a line break")]
    LineBreak { id: usize },
    #[error("parallel corpus sides differ in length: {source_len} source vs {target_len} target lines")]
    LineCountMismatch { source_len: usize, target_len: usize },
    #[error("dictionary is empty")]
    EmptyDictionary,
    #[error("{path}: line {line}: invalid UTF-8")]
    InvalidUtf8 { path: PathBuf, line: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// One line of a corpus.
///
/// The text is stored NFC-normalized and never contains `\n` or `\r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    id: usize,
    text: String,
}

impl Segment {
    pub fn new(id: usize, text: &str) -> Result<Self, CorpusError> {
        if text.contains(['\n', '\r']) {
            return Err(CorpusError::LineBreak { id });
        }
        Ok(Segment {
            id,
            text: text.nfc().collect(),
        })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self, scheme: &TokenScheme) -> Vec<String> {
        tokenize_spans(&self.text, scheme)
            .into_iter()
            .map(|t| t.text)
            .collect()
    }

    pub fn token_spans(&self, scheme: &TokenScheme) -> Vec<TokenSpan> {
        tokenize_spans(&self.text, scheme)
    }

    pub(crate) fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub(crate) fn replace_text(&mut self, text: String) {
        debug_assert!(!text.contains(['\n', '\r']));
        self.text = text;
    }
}

/// Builds segments with consecutive ids from an iterator of lines.
pub fn segments_from_lines<I, S>(lines: I) -> Result<Vec<Segment>, CorpusError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    lines
        .into_iter()
        .enumerate()
        .map(|(i, l)| Segment::new(i, l.as_ref()))
        .collect()
}

/// Line-parallel source/target corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelCorpus {
    source: Vec<Segment>,
    target: Vec<Segment>,
    pub source_lang: String,
    pub target_lang: String,
}

impl ParallelCorpus {
    /// Pairs two sides; segment ids are renumbered from 0.
    pub fn new(
        source: Vec<Segment>,
        target: Vec<Segment>,
        source_lang: impl Into<String>,
        target_lang: impl Into<String>,
    ) -> Result<Self, CorpusError> {
        if source.len() != target.len() {
            return Err(CorpusError::LineCountMismatch {
                source_len: source.len(),
                target_len: target.len(),
            });
        }
        let renumber = |v: Vec<Segment>| -> Vec<Segment> {
            v.into_iter().enumerate().map(|(i, s)| s.with_id(i)).collect()
        };
        Ok(ParallelCorpus {
            source: renumber(source),
            target: renumber(target),
            source_lang: source_lang.into(),
            target_lang: target_lang.into(),
        })
    }

    pub fn from_lines<S: AsRef<str>>(
        source: &[S],
        target: &[S],
        source_lang: &str,
        target_lang: &str,
    ) -> Result<Self, CorpusError> {
        Self::new(
            segments_from_lines(source)?,
            segments_from_lines(target)?,
            source_lang,
            target_lang,
        )
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[Segment] {
        &self.source
    }

    pub fn target(&self) -> &[Segment] {
        &self.target
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Segment, &Segment)> {
        self.source.iter().zip(self.target.iter())
    }

    pub fn source_lines(&self) -> Vec<&str> {
        self.source.iter().map(Segment::text).collect()
    }

    pub fn target_lines(&self) -> Vec<&str> {
        self.target.iter().map(Segment::text).collect()
    }
}

/// Token multiset with occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Vocabulary {
    entries: BTreeMap<String, u64>,
    total_tokens: u64,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, token: &str) {
        *self.entries.entry(token.to_owned()).or_insert(0) += 1;
        self.total_tokens += 1;
    }

    pub fn count(&self, token: &str) -> u64 {
        self.entries.get(token).copied().unwrap_or(0)
    }

    /// Number of distinct tokens.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn merge(&mut self, other: &Vocabulary) {
        for (tok, n) in other.iter() {
            *self.entries.entry(tok.to_owned()).or_insert(0) += n;
        }
        self.total_tokens += other.total_tokens;
    }
}

pub fn build_vocabulary(corpus: &[Segment], scheme: &TokenScheme) -> Vocabulary {
    let partial = crate::exec::map(corpus, |seg| {
        let mut v = Vocabulary::new();
        for t in seg.tokens(scheme) {
            v.add(&t);
        }
        v
    });
    partial.iter().fold(Vocabulary::new(), |mut acc, v| {
        acc.merge(v);
        acc
    })
}
