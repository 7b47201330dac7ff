use std::collections::HashMap;

use serde::Serialize;

use super::counts::CountTable;
use super::model::NGramModel;
use super::vocab::{Vocab, BOS, EOS};

/// Corpus perplexity. `token_count` covers every scored position, `</s>`
/// included and `<s>` excluded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerplexityResult {
    pub log10_total: f64,
    pub token_count: usize,
    pub perplexity: f64,
    pub oov_count: usize,
    pub sentences: usize,
    /// Positions left out of the total (OOV without `<unk>`, or zero
    /// probability under maximum likelihood).
    pub skipped: usize,
}

impl PerplexityResult {
    fn new(log10_total: f64, token_count: usize, oov_count: usize, sentences: usize, skipped: usize) -> Self {
        let perplexity = if token_count == 0 {
            1.0
        } else {
            10f64.powf(-log10_total / token_count as f64)
        };
        PerplexityResult { log10_total, token_count, perplexity, oov_count, sentences, skipped }
    }

    pub fn render(&self) -> String {
        format!(
            "sentences {}  tokens {}  OOVs {}  skipped {}\nlog10-total {:.4}  PPL {:.4}\n",
            self.sentences, self.token_count, self.oov_count, self.skipped, self.log10_total, self.perplexity
        )
    }
}

pub fn perplexity(model: &NGramModel, corpus: &[Vec<String>]) -> PerplexityResult {
    let scores = crate::exec::map(corpus, |s| model.sentence_logprob(s));
    let (mut total, mut count, mut oov, mut skipped) = (0.0, 0, 0, 0);
    for s in scores {
        total += s.log10_prob;
        count += s.scored;
        oov += s.oov;
        skipped += s.skipped;
    }
    PerplexityResult::new(total, count, oov, corpus.len(), skipped)
}

/// Unsmoothed maximum-likelihood evaluation straight from counts:
/// `P(w | h) = c(h w) / Σ_v c(h v)` with the longest history available.
/// Events with zero relative frequency (unseen n-grams, OOV tokens) are
/// skipped and reported in `skipped`.
pub fn perplexity_ml(counts: &CountTable, corpus: &[Vec<String>]) -> PerplexityResult {
    let order = counts.effective_order().max(1);
    let vocab = counts.vocab();
    let totals: Vec<HashMap<&[u32], u64>> = (1..=order)
        .map(|n| {
            let mut m: HashMap<&[u32], u64> = HashMap::new();
            for (g, &c) in counts.table(n) {
                *m.entry(&g[..n - 1]).or_insert(0) += c;
            }
            m
        })
        .collect();
    let (mut total, mut count, mut oov, mut skipped) = (0.0, 0, 0, 0);
    for s in corpus {
        let mut ids = vec![Vocab::BOS_ID];
        for t in s.iter().filter(|t| *t != BOS && *t != EOS) {
            match vocab.id(t) {
                Some(id) if id != Vocab::UNK_ID => ids.push(id),
                _ => {
                    oov += 1;
                    ids.push(Vocab::UNK_ID);
                }
            }
        }
        ids.push(Vocab::EOS_ID);
        for end in 2..=ids.len() {
            let gram = &ids[end.saturating_sub(order)..end];
            let n = gram.len();
            let c = counts.table(n).get(gram).copied().unwrap_or(0);
            let h = totals[n - 1].get(&gram[..n - 1]).copied().unwrap_or(0);
            if c > 0 {
                total += (c as f64 / h as f64).log10();
                count += 1;
            } else {
                skipped += 1;
            }
        }
    }
    PerplexityResult::new(total, count, oov, corpus.len(), skipped)
}
