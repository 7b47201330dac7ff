use std::collections::HashMap;
use std::fmt;

use super::vocab::{Vocab, BOS, EOS};
use super::LOG_ZERO;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    KneserNey,
    WittenBell,
    Interpolated,
    /// Loaded from an ARPA file; estimation method unknown.
    Arpa,
}

impl fmt::Display for Smoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothing::KneserNey => "kneser-ney-interpolated",
            Smoothing::WittenBell => "witten-bell",
            Smoothing::Interpolated => "linear-interpolation",
            Smoothing::Arpa => "arpa",
        })
    }
}

/// Everything the model stores for one history: the log10 probability of
/// each stored continuation and the history's log10 back-off weight.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Context {
    pub backoff: Option<f64>,
    pub probs: HashMap<u32, f64>,
}

/// Back-off n-gram model.
///
/// `contexts[k]` holds histories of length `k`; the n-gram `h w` is
/// `contexts[h.len()][h].probs[w]`.
#[derive(Debug, Clone)]
pub struct NGramModel {
    pub(crate) order: usize,
    pub(crate) vocab: Vocab,
    pub(crate) contexts: Vec<HashMap<Box<[u32]>, Context>>,
    pub(crate) smoothing: Smoothing,
    pub(crate) notes: Vec<String>,
}

/// Score of one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SentenceScore {
    pub log10_prob: f64,
    /// Predicted positions that were scored (words plus `</s>`).
    pub scored: usize,
    pub oov: usize,
    /// OOV positions left unscored because the model has no `<unk>`.
    pub skipped: usize,
}

impl NGramModel {
    pub(crate) fn empty(order: usize, vocab: Vocab, smoothing: Smoothing) -> Self {
        NGramModel {
            order,
            vocab,
            contexts: vec![HashMap::new(); order],
            smoothing,
            notes: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn smoothing(&self) -> Smoothing {
        self.smoothing
    }

    /// Estimation remarks: clamped discounts, order reductions.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn contexts(&self, history_len: usize) -> &HashMap<Box<[u32]>, Context> {
        &self.contexts[history_len]
    }

    pub fn context(&self, history: &[u32]) -> Option<&Context> {
        self.contexts.get(history.len())?.get(history)
    }

    /// Whether `<unk>` has a unigram probability.
    pub fn has_unk(&self) -> bool {
        self.unigram_logprob(Vocab::UNK_ID).is_some()
    }

    fn unigram_logprob(&self, w: u32) -> Option<f64> {
        self.contexts[0].get(&[][..]).and_then(|c| c.probs.get(&w)).copied()
    }

    /// Number of stored n-grams of length `n`.
    pub fn ngram_count(&self, n: usize) -> usize {
        self.contexts[n - 1].values().map(|c| c.probs.len()).sum()
    }

    /// Stored n-grams of length `n` with their log10 probability, sorted by id.
    pub fn ngrams(&self, n: usize) -> Vec<(Vec<u32>, f64)> {
        let mut v: Vec<(Vec<u32>, f64)> = self.contexts[n - 1]
            .iter()
            .flat_map(|(h, c)| {
                c.probs.iter().map(move |(&w, &p)| {
                    let mut g = h.to_vec();
                    g.push(w);
                    (g, p)
                })
            })
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Back-off weight stored for `history` (log10), 0 when absent.
    pub fn backoff(&self, history: &[u32]) -> f64 {
        self.context(history).and_then(|c| c.backoff).unwrap_or(0.0)
    }

    /// log10 P(w | history) through the back-off recursion. Only the last
    /// `order - 1` history words are used. Returns [`LOG_ZERO`] for a word
    /// with no unigram when the model has no `<unk>`.
    pub fn logprob(&self, history: &[u32], w: u32) -> f64 {
        let keep = history.len().min(self.order - 1);
        let mut h = &history[history.len() - keep..];
        let mut acc = 0.0;
        loop {
            if let Some(ctx) = self.contexts[h.len()].get(h) {
                if let Some(&p) = ctx.probs.get(&w) {
                    return acc + p;
                }
                acc += ctx.backoff.unwrap_or(0.0);
            }
            if h.is_empty() {
                break;
            }
            h = &h[1..];
        }
        // w has no unigram: score it as <unk>
        match self.unigram_logprob(Vocab::UNK_ID) {
            Some(p) if w != Vocab::UNK_ID => acc + p,
            _ => LOG_ZERO,
        }
    }

    pub fn prob(&self, history: &[u32], w: u32) -> f64 {
        10f64.powf(self.logprob(history, w))
    }

    pub fn logprob_words(&self, history: &[&str], w: &str) -> f64 {
        let ids: Vec<u32> = history.iter().map(|x| self.word_id(x)).collect();
        self.logprob(&ids, self.word_id(w))
    }

    /// Id for `word`, falling back to `<unk>`.
    pub fn word_id(&self, word: &str) -> u32 {
        self.vocab.id(word).unwrap_or(Vocab::UNK_ID)
    }

    /// Ids that can be predicted: every word except `<s>`, with `<unk>` only
    /// when it has a probability.
    pub fn predicted_ids(&self) -> Vec<u32> {
        let unk = self.has_unk();
        (0..self.vocab.len() as u32)
            .filter(|&id| id != Vocab::BOS_ID && (id != Vocab::UNK_ID || unk))
            .collect()
    }

    /// Σ_w P(w | history) over [`Self::predicted_ids`], evaluated word by word.
    pub fn distribution_sum(&self, history: &[u32]) -> f64 {
        self.predicted_ids()
            .into_iter()
            .map(|w| self.prob(history, w))
            .sum()
    }

    /// log10 probability of a tokenized sentence, `</s>` included. Literal
    /// `<s>`/`</s>` tokens in the input are ignored.
    pub fn sentence_logprob(&self, tokens: &[String]) -> SentenceScore {
        let has_unk = self.has_unk();
        let mut hist: Vec<u32> = vec![Vocab::BOS_ID];
        let mut score = SentenceScore::default();
        let ids = tokens
            .iter()
            .filter(|t| *t != BOS && *t != EOS)
            .map(|t| self.vocab.id(t).filter(|&id| id != Vocab::UNK_ID || has_unk))
            .chain(std::iter::once(Some(Vocab::EOS_ID)));
        for id in ids {
            match id {
                Some(id) if id == Vocab::UNK_ID || self.unigram_logprob(id).is_some() => {
                    score.log10_prob += self.logprob(&hist, id);
                    score.scored += 1;
                    hist.push(id);
                }
                _ if has_unk => {
                    score.oov += 1;
                    score.log10_prob += self.logprob(&hist, Vocab::UNK_ID);
                    score.scored += 1;
                    hist.push(Vocab::UNK_ID);
                }
                _ => {
                    score.oov += 1;
                    score.skipped += 1;
                    hist.clear();
                }
            }
            if hist.len() >= self.order {
                hist.drain(..hist.len() + 1 - self.order);
            }
        }
        score
    }

    /// Histories that have at least one stored continuation.
    pub fn histories(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self
            .contexts
            .iter()
            .flat_map(|m| m.iter().filter(|(_, c)| !c.probs.is_empty()).map(|(h, _)| h.to_vec()))
            .collect();
        v.sort();
        v
    }
}
