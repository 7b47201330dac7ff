//! Back-off n-gram language models.
//!
//! Models are trained from [`CountTable`]s with interpolated Kneser-Ney
//! (single absolute discount per order, `D = n1 / (n1 + 2 n2)`) or Witten-Bell
//! smoothing, and stored in back-off form so they serialize directly to ARPA.
//! All probabilities are base-10 logs. A reserved `<unk>` word takes part in
//! smoothing; out-of-vocabulary tokens are scored as `<unk>`.

mod arpa;
mod counts;
mod estimate;
mod mix;
mod model;
mod perplexity;
mod vocab;

pub use arpa::{read_arpa, write_arpa};
pub use counts::{count_ngrams, CountTable};
pub use estimate::{estimate_kneser_ney, estimate_witten_bell, kn_discount, DISCOUNT_EPSILON};
pub use mix::{interpolate, tune_weights, Mixture, TuneResult};
pub use model::{Context, NGramModel, SentenceScore, Smoothing};
pub use perplexity::{perplexity, perplexity_ml, PerplexityResult};
pub use vocab::{Vocab, BOS, EOS, UNK};

/// Default model order.
pub const DEFAULT_ORDER: usize = 5;

/// Log10 value written for impossible events (the `<s>` unigram).
pub const LOG_ZERO: f64 = -99.0;

#[derive(Debug, thiserror::Error)]
pub enum LmError {
    #[error("order must be at least 1")]
    InvalidOrder,
    #[error("no n-gram events to estimate from")]
    EmptyCounts,
    #[error("invalid interpolation weights: {0}")]
    WeightError(String),
    #[error("ARPA line {line}: {message}")]
    ArpaFormatError { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Whitespace tokenization for text that is already tokenized.
pub fn split_sentences<S: AsRef<str>>(lines: &[S]) -> Vec<Vec<String>> {
    lines
        .iter()
        .map(|l| l.as_ref().split_whitespace().map(str::to_owned).collect())
        .collect()
}
