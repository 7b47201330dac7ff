use std::collections::HashMap;

use super::vocab::{Vocab, BOS, EOS};
use super::LmError;

/// Raw n-gram counts for every order up to `order`.
///
/// Each sentence is padded with one `<s>` and one `</s>`; the lone `<s>`
/// unigram is not counted since it is never predicted.
#[derive(Debug, Clone)]
pub struct CountTable {
    order: usize,
    vocab: Vocab,
    tables: Vec<HashMap<Box<[u32]>, u64>>,
}

impl CountTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    /// Count table for n-grams of length `n` (1-based).
    pub fn table(&self, n: usize) -> &HashMap<Box<[u32]>, u64> {
        &self.tables[n - 1]
    }

    pub fn count(&self, ngram: &[&str]) -> u64 {
        if ngram.is_empty() || ngram.len() > self.order {
            return 0;
        }
        let ids: Option<Vec<u32>> = ngram.iter().map(|w| self.vocab.id(w)).collect();
        ids.and_then(|ids| self.tables[ngram.len() - 1].get(ids.as_slice()).copied())
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.tables.iter().all(HashMap::is_empty)
    }

    /// Distinct n-grams of each order.
    pub fn sizes(&self) -> Vec<usize> {
        self.tables.iter().map(HashMap::len).collect()
    }

    /// Highest order with at least one event.
    pub fn effective_order(&self) -> usize {
        self.tables.iter().rposition(|t| !t.is_empty()).map_or(0, |i| i + 1)
    }
}

fn padded_ids(sentence: &[String], vocab: &Vocab) -> Vec<u32> {
    let mut ids = Vec::with_capacity(sentence.len() + 2);
    ids.push(Vocab::BOS_ID);
    ids.extend(
        sentence
            .iter()
            .filter(|w| *w != BOS && *w != EOS)
            .map(|w| vocab.id(w).expect("vocabulary built from corpus")),
    );
    ids.push(Vocab::EOS_ID);
    ids
}

fn count_chunk(sentences: &[Vec<String>], vocab: &Vocab, order: usize) -> Vec<HashMap<Box<[u32]>, u64>> {
    let mut tables = vec![HashMap::new(); order];
    for s in sentences {
        let ids = padded_ids(s, vocab);
        for end in 1..ids.len() + 1 {
            for n in 1..=order.min(end) {
                let gram = &ids[end - n..end];
                if n == 1 && gram[0] == Vocab::BOS_ID {
                    continue;
                }
                *tables[n - 1].entry(gram.into()).or_insert(0) += 1;
            }
        }
    }
    tables
}

const CHUNK: usize = 2048;

pub fn count_ngrams(corpus: &[Vec<String>], order: usize) -> Result<CountTable, LmError> {
    if order == 0 {
        return Err(LmError::InvalidOrder);
    }
    let vocab = Vocab::from_words(corpus.iter().flatten().map(String::as_str));
    let chunks: Vec<&[Vec<String>]> = corpus.chunks(CHUNK).collect();
    let partial = crate::exec::map(&chunks, |c| count_chunk(c, &vocab, order));
    let mut tables: Vec<HashMap<Box<[u32]>, u64>> = vec![HashMap::new(); order];
    for part in partial {
        for (acc, t) in tables.iter_mut().zip(part) {
            if acc.is_empty() {
                *acc = t;
            } else {
                for (k, v) in t {
                    *acc.entry(k).or_insert(0) += v;
                }
            }
        }
    }
    Ok(CountTable { order, vocab, tables })
}
