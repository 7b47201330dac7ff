use serde::Serialize;

use super::{check_corpus, clipped_matches, EvalPair, MetricsError};

#[derive(Debug, Clone, PartialEq)]
pub struct BleuConfig {
    pub max_n: usize,
    /// Per-order weights; uniform `1/max_n` when `None`.
    pub weights: Option<Vec<f64>>,
    /// Add-one smoothing of every precision, for sentence-level diagnostics.
    pub smoothing: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig { max_n: 4, weights: None, smoothing: false }
    }
}

impl BleuConfig {
    fn weights(&self) -> Result<Vec<f64>, MetricsError> {
        if self.max_n == 0 {
            return Err(MetricsError::InvalidWeights("max_n must be at least 1".into()));
        }
        let w = match &self.weights {
            None => vec![1.0 / self.max_n as f64; self.max_n],
            Some(w) => w.clone(),
        };
        if w.len() != self.max_n {
            return Err(MetricsError::InvalidWeights(format!("{} weights for max_n {}", w.len(), self.max_n)));
        }
        if w.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(MetricsError::InvalidWeights("weights must be positive".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(MetricsError::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(w)
    }
}

/// Sufficient statistics; corpus statistics are the sum of sentence ones.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BleuStats {
    /// Clipped matches per order.
    pub matches: Vec<u64>,
    /// Hypothesis n-grams per order.
    pub totals: Vec<u64>,
    pub hyp_len: u64,
    /// Closest reference length, summed.
    pub ref_len: u64,
}

impl BleuStats {
    pub fn add(&mut self, other: &BleuStats) {
        if self.matches.len() < other.matches.len() {
            self.matches.resize(other.matches.len(), 0);
            self.totals.resize(other.totals.len(), 0);
        }
        for (i, (m, t)) in other.matches.iter().zip(&other.totals).enumerate() {
            self.matches[i] += m;
            self.totals[i] += t;
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BleuScore {
    pub score: f64,
    /// Modified precision per order; `None` when the hypothesis has no
    /// n-grams of that order (the order is left out of the mean).
    pub precisions: Vec<Option<f64>>,
    pub brevity_penalty: f64,
    pub stats: BleuStats,
}

/// `1` if `c > r`, else `e^(1 − r/c)`; `0` for an empty hypothesis.
pub fn brevity_penalty(c: u64, r: u64) -> f64 {
    if c > r {
        1.0
    } else if c == 0 {
        0.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    }
}

/// Reference length closest to `c`, the shorter one on ties.
fn closest_ref_len(c: usize, refs: &[Vec<String>]) -> usize {
    refs.iter()
        .map(Vec::len)
        .min_by_key(|&r| (r.abs_diff(c), r))
        .unwrap_or(0)
}

pub fn bleu_stats(pair: &EvalPair, max_n: usize) -> BleuStats {
    let hyp = &pair.hypothesis;
    let mut s = BleuStats {
        matches: vec![0; max_n],
        totals: vec![0; max_n],
        hyp_len: hyp.len() as u64,
        ref_len: closest_ref_len(hyp.len(), &pair.references) as u64,
    };
    for n in 1..=max_n {
        s.totals[n - 1] = hyp.len().saturating_sub(n - 1) as u64;
        s.matches[n - 1] = clipped_matches(hyp, &pair.references, n).iter().map(|m| m.1).sum();
    }
    s
}

fn score_stats(stats: BleuStats, config: &BleuConfig) -> Result<BleuScore, MetricsError> {
    let weights = config.weights()?;
    let precisions: Vec<Option<f64>> = stats
        .matches
        .iter()
        .zip(&stats.totals)
        .map(|(&m, &t)| {
            if t == 0 {
                None
            } else if config.smoothing {
                Some((m + 1) as f64 / (t + 1) as f64)
            } else {
                Some(m as f64 / t as f64)
            }
        })
        .collect();
    let used: Vec<(f64, f64)> = precisions
        .iter()
        .zip(&weights)
        .filter_map(|(p, &w)| p.map(|p| (p, w)))
        .collect();
    let bp = brevity_penalty(stats.hyp_len, stats.ref_len);
    let wsum: f64 = used.iter().map(|u| u.1).sum();
    let score = if used.is_empty() || used.iter().any(|u| u.0 == 0.0) {
        0.0
    } else {
        let log_mean: f64 = used.iter().map(|(p, w)| w / wsum * p.ln()).sum();
        (bp * log_mean.exp()).min(1.0)
    };
    Ok(BleuScore { score, precisions, brevity_penalty: bp, stats })
}

/// Corpus BLEU from summed clipped n-gram statistics.
pub fn bleu(pairs: &[EvalPair], config: &BleuConfig) -> Result<BleuScore, MetricsError> {
    check_corpus(pairs)?;
    config.weights()?;
    let per = crate::exec::map(pairs, |p| bleu_stats(p, config.max_n));
    let mut total = BleuStats { matches: vec![0; config.max_n], totals: vec![0; config.max_n], ..Default::default() };
    for s in &per {
        total.add(s);
    }
    score_stats(total, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(h: &str, r: &[&str]) -> BleuScore {
        bleu(&[EvalPair::from_words(h, r)], &BleuConfig::default()).unwrap()
    }

    #[test]
    fn identity_scores_one() {
        let s = one("a b c d e", &["a b c d e"]);
        assert_eq!(s.score, 1.0);
        assert_eq!(s.brevity_penalty, 1.0);
    }

    #[test]
    fn clipped_repetition() {
        let s = one("the the the", &["the cat"]);
        assert_eq!(s.precisions[0], Some(1.0 / 3.0));
        assert_eq!(s.precisions[1], Some(0.0));
        assert_eq!(s.score, 0.0);
    }

    #[test]
    fn brevity_penalty_short_hypothesis() {
        let s = one("a b c d", &["a b c d e"]);
        assert!((s.brevity_penalty - (1.0f64 - 5.0 / 4.0).exp()).abs() < 1e-12);
        assert!((s.score - 0.778_800_783_071_404_9).abs() < 1e-9);
    }

    #[test]
    fn closest_reference_prefers_shorter_on_tie() {
        assert_eq!(closest_ref_len(4, &[vec!["x".into(); 5], vec!["x".into(); 3]]), 3);
    }

    #[test]
    fn short_hypothesis_skips_missing_orders() {
        let s = one("a b", &["a b"]);
        assert_eq!(s.precisions, vec![Some(1.0), Some(1.0), None, None]);
        assert_eq!(s.score, 1.0);
    }

    #[test]
    fn add_one_smoothing_keeps_score_positive() {
        let pair = [EvalPair::from_words("the the the", &["the cat"])];
        let cfg = BleuConfig { smoothing: true, ..Default::default() };
        assert!(bleu(&pair, &cfg).unwrap().score > 0.0);
    }

    #[test]
    fn invalid_weights() {
        let cfg = BleuConfig { max_n: 2, weights: Some(vec![0.7, 0.7]), smoothing: false };
        assert!(matches!(
            bleu(&[EvalPair::from_words("a", &["a"])], &cfg),
            Err(MetricsError::InvalidWeights(_))
        ));
    }
}
