use std::collections::HashMap;

use serde::Serialize;

use super::{check_corpus, clipped_matches, ngram_counts, EvalPair, MetricsError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NistScore {
    pub score: f64,
    /// Information gained per order, before the brevity factor.
    pub per_order: Vec<f64>,
    pub brevity_factor: f64,
    pub hyp_len: u64,
    /// Sum over sentences of the mean reference length.
    pub ref_len: f64,
}

/// Factor is 0.5 when the hypothesis is 2/3 of the reference length.
fn beta() -> f64 {
    0.5f64.ln() / 1.5f64.ln().powi(2)
}

fn brevity_factor(c: f64, r: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    let ratio = if r > 0.0 { (c / r).min(1.0) } else { 1.0 };
    (beta() * ratio.ln().powi(2)).exp()
}

/// Information weight `log2(count(prefix) / count(ngram))` of every
/// reference n-gram up to `max_n`; the unigram prefix count is the total
/// number of reference words.
pub fn nist_info_weights(references: &[&[String]], max_n: usize) -> HashMap<Vec<String>, f64> {
    let mut counts: HashMap<&[String], u64> = HashMap::new();
    let mut words = 0u64;
    for r in references {
        words += r.len() as u64;
        for n in 1..=max_n {
            for (g, c) in ngram_counts(r, n) {
                *counts.entry(g).or_insert(0) += c;
            }
        }
    }
    counts
        .iter()
        .map(|(g, &c)| {
            let prefix = if g.len() == 1 { words } else { counts[&g[..g.len() - 1]] };
            (g.to_vec(), (prefix as f64 / c as f64).log2())
        })
        .collect()
}

/// Corpus NIST: `Σ_n (Σ_matched info) / (hypothesis n-grams)` times the
/// brevity factor `exp(β ln²(min(c/r̄, 1)))`.
pub fn nist(pairs: &[EvalPair], max_n: usize) -> Result<NistScore, MetricsError> {
    check_corpus(pairs)?;
    let refs: Vec<&[String]> = pairs.iter().flat_map(|p| p.references.iter().map(Vec::as_slice)).collect();
    let info = nist_info_weights(&refs, max_n);
    let per_sentence = crate::exec::map(pairs, |p| {
        let mut gained = vec![0.0; max_n];
        let mut totals = vec![0u64; max_n];
        for n in 1..=max_n {
            totals[n - 1] = p.hypothesis.len().saturating_sub(n - 1) as u64;
            for (g, m) in clipped_matches(&p.hypothesis, &p.references, n) {
                gained[n - 1] += info.get(g).copied().unwrap_or(0.0) * m as f64;
            }
        }
        (gained, totals)
    });
    let mut gained = vec![0.0; max_n];
    let mut totals = vec![0u64; max_n];
    for (g, t) in &per_sentence {
        for n in 0..max_n {
            gained[n] += g[n];
            totals[n] += t[n];
        }
    }
    let per_order: Vec<f64> = gained
        .iter()
        .zip(&totals)
        .map(|(&g, &t)| if t == 0 { 0.0 } else { g / t as f64 })
        .collect();
    let hyp_len: u64 = pairs.iter().map(|p| p.hypothesis.len() as u64).sum();
    let ref_len: f64 = pairs
        .iter()
        .map(|p| p.references.iter().map(|r| r.len() as f64).sum::<f64>() / p.references.len() as f64)
        .sum();
    let bf = brevity_factor(hyp_len as f64, ref_len);
    Ok(NistScore { score: per_order.iter().sum::<f64>() * bf, per_order, brevity_factor: bf, hyp_len, ref_len })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_distinct_words() {
        // N = 3 reference words, all distinct: unigram info log2(3);
        // every longer n-gram has the same count as its prefix: info 0
        let s = nist(&[EvalPair::from_words("a b c", &["a b c"])], 5).unwrap();
        assert!((s.per_order[0] - 3f64.log2()).abs() < 1e-12);
        assert!(s.per_order[1..].iter().all(|&x| x == 0.0));
        assert_eq!(s.brevity_factor, 1.0);
        assert!((s.score - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn no_overlap_scores_zero() {
        let s = nist(&[EvalPair::from_words("x y", &["a b c"])], 5).unwrap();
        assert_eq!(s.score, 0.0);
    }

    #[test]
    fn info_weights_invariant_to_count_scaling() {
        let r: Vec<Vec<String>> = ["a b a c", "b c a"]
            .iter()
            .map(|s| s.split(' ').map(str::to_owned).collect())
            .collect();
        let once: Vec<&[String]> = r.iter().map(Vec::as_slice).collect();
        let twice: Vec<&[String]> = once.iter().chain(once.iter()).copied().collect();
        let a = nist_info_weights(&once, 3);
        let b = nist_info_weights(&twice, 3);
        assert_eq!(a.len(), b.len());
        for (g, w) in &a {
            assert!((w - b[g]).abs() < 1e-12);
        }
    }

    #[test]
    fn brevity_factor_half_at_two_thirds() {
        assert!((brevity_factor(2.0, 3.0) - 0.5).abs() < 1e-12);
        assert_eq!(brevity_factor(4.0, 3.0), 1.0);
    }
}
