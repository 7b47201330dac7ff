use std::collections::HashMap;

use serde::Serialize;

use super::stem::Stemmer;
use super::{check_corpus, EvalPair, MetricsError};

/// Shape of the fragmentation penalty `0.5 · (C / M)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PenaltyShape {
    /// `k = 1`
    #[default]
    Linear,
    /// `k = 3`
    Cubic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeteorConfig {
    pub penalty: PenaltyShape,
    /// Node limit for the minimum-chunk search of one sentence pair; past it
    /// the best alignment found so far is used and flagged.
    pub search_budget: usize,
}

impl Default for MeteorConfig {
    fn default() -> Self {
        MeteorConfig { penalty: PenaltyShape::Linear, search_budget: 2_000_000 }
    }
}

/// Per-sentence statistics against the chosen reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MeteorStats {
    pub hyp_len: usize,
    pub ref_len: usize,
    pub matches: usize,
    pub exact_matches: usize,
    pub chunks: usize,
    /// False when the chunk search ran out of budget.
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeteorScore {
    pub score: f64,
    pub precision: f64,
    pub recall: f64,
    pub fmean: f64,
    pub penalty: f64,
    pub stats: MeteorStats,
    /// Index of the reference that gave the best score.
    pub reference: usize,
}

fn score_from(stats: MeteorStats, shape: PenaltyShape, reference: usize) -> MeteorScore {
    if stats.matches == 0 {
        return MeteorScore { score: 0.0, precision: 0.0, recall: 0.0, fmean: 0.0, penalty: 0.0, stats, reference };
    }
    let m = stats.matches as f64;
    let p = m / stats.hyp_len as f64;
    let r = m / stats.ref_len as f64;
    let fmean = 10.0 * p * r / (r + 9.0 * p);
    let frag = stats.chunks as f64 / m;
    let penalty = match shape {
        PenaltyShape::Linear => 0.5 * frag,
        PenaltyShape::Cubic => 0.5 * frag.powi(3),
    };
    MeteorScore { score: fmean * (1.0 - penalty), precision: p, recall: r, fmean, penalty, stats, reference }
}

/// Best sentence score over the references.
pub fn meteor(pair: &EvalPair, stemmer: &dyn Stemmer, config: &MeteorConfig) -> MeteorScore {
    let hyp_stems: Vec<String> = pair.hypothesis.iter().map(|w| stemmer.stem(w)).collect();
    let mut best: Option<MeteorScore> = None;
    for (k, r) in pair.references.iter().enumerate() {
        let ref_stems: Vec<String> = r.iter().map(|w| stemmer.stem(w)).collect();
        let stats = align(&pair.hypothesis, &hyp_stems, r, &ref_stems, config.search_budget);
        let s = score_from(stats, config.penalty, k);
        if best.as_ref().map_or(true, |b| s.score > b.score) {
            best = Some(s);
        }
    }
    best.unwrap_or_else(|| score_from(MeteorStats::default(), config.penalty, 0))
}

/// Corpus score from summed statistics of each sentence's best reference.
pub fn meteor_corpus(
    pairs: &[EvalPair],
    stemmer: &dyn Stemmer,
    config: &MeteorConfig,
) -> Result<(MeteorScore, Vec<MeteorScore>), MetricsError> {
    check_corpus(pairs)?;
    let per = crate::exec::map(pairs, |p| meteor(p, stemmer, config));
    let mut total = MeteorStats { optimal: true, ..Default::default() };
    for s in &per {
        total.hyp_len += s.stats.hyp_len;
        total.ref_len += s.stats.ref_len;
        total.matches += s.stats.matches;
        total.exact_matches += s.stats.exact_matches;
        total.chunks += s.stats.chunks;
        total.optimal &= s.stats.optimal;
    }
    Ok((score_from(total, config.penalty, 0), per))
}

/// Staged one-to-one alignment with the fewest chunks.
///
/// Admissible alignments have the maximum number of exact links and, given
/// that, the maximum number of links overall (exact, then stem). Those
/// maxima only depend on word and stem counts, so the search fixes them up
/// front and minimizes chunks by branch and bound over hypothesis positions.
fn align(hyp: &[String], hyp_stems: &[String], refw: &[String], ref_stems: &[String], budget: usize) -> MeteorStats {
    let n = hyp.len();
    let (need_exact, need_links) = maxima(hyp, hyp_stems, refw, ref_stems);
    let mut stats = MeteorStats { hyp_len: n, ref_len: refw.len(), optimal: true, ..Default::default() };
    if need_links == 0 {
        return stats;
    }

    // type ids for exact-count bookkeeping
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let hyp_type: Vec<usize> = hyp.iter().map(|w| { let k = ids.len(); *ids.entry(w).or_insert(k) }).collect();
    let mut need_type = vec![0usize; ids.len()];
    {
        let mut ch = vec![0usize; ids.len()];
        let mut cr = vec![0usize; ids.len()];
        for &t in &hyp_type {
            ch[t] += 1;
        }
        for w in refw {
            if let Some(&t) = ids.get(w.as_str()) {
                cr[t] += 1;
            }
        }
        for t in 0..ids.len() {
            need_type[t] = ch[t].min(cr[t]);
        }
    }
    // suffix[i][t] would be large; keep remaining hyp occurrences per type instead
    let mut remaining_type = vec![0usize; ids.len()];
    for &t in &hyp_type {
        remaining_type[t] += 1;
    }
    let options: Vec<Vec<(usize, bool)>> = (0..n)
        .map(|i| {
            (0..refw.len())
                .filter_map(|j| {
                    if hyp[i] == refw[j] {
                        Some((j, true))
                    } else if hyp_stems[i] == ref_stems[j] {
                        Some((j, false))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        options: &options,
        hyp_type: &hyp_type,
        need_type: &need_type,
        need_exact,
        need_links,
        used: vec![false; refw.len()],
        exact_type: vec![0; ids.len()],
        remaining_type,
        best: usize::MAX,
        nodes: 0,
        budget,
    };
    search.dfs(0, None, 0, 0, 0);
    stats.matches = need_links;
    stats.exact_matches = need_exact;
    stats.chunks = search.best;
    stats.optimal = search.nodes <= search.budget;
    stats
}

/// Maximum exact links, and maximum total links given maximal exact links.
fn maxima(hyp: &[String], hyp_stems: &[String], refw: &[String], ref_stems: &[String]) -> (usize, usize) {
    let mut count: HashMap<(&str, &str), (usize, usize)> = HashMap::new();
    for (w, s) in hyp.iter().zip(hyp_stems) {
        count.entry((w, s)).or_default().0 += 1;
    }
    for (w, s) in refw.iter().zip(ref_stems) {
        count.entry((w, s)).or_default().1 += 1;
    }
    let mut exact = 0;
    let mut by_stem: HashMap<&str, (usize, usize)> = HashMap::new();
    for ((_, s), (h, r)) in count {
        let e = h.min(r);
        exact += e;
        let slot = by_stem.entry(s).or_default();
        slot.0 += h - e;
        slot.1 += r - e;
    }
    let stem: usize = by_stem.values().map(|(h, r)| *h.min(r)).sum();
    (exact, exact + stem)
}

struct Search<'a> {
    options: &'a [Vec<(usize, bool)>],
    hyp_type: &'a [usize],
    need_type: &'a [usize],
    need_exact: usize,
    need_links: usize,
    used: Vec<bool>,
    exact_type: Vec<usize>,
    /// Hypothesis occurrences of each type at or after the current position.
    remaining_type: Vec<usize>,
    best: usize,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn dfs(&mut self, i: usize, prev: Option<(usize, usize)>, links: usize, exact: usize, chunks: usize) {
        self.nodes += 1;
        if chunks >= self.best || (self.nodes > self.budget && self.best != usize::MAX) {
            return;
        }
        let left = self.options.len() - i;
        if links + left < self.need_links || exact + left < self.need_exact {
            return;
        }
        if i == self.options.len() {
            if links == self.need_links && exact == self.need_exact {
                self.best = chunks;
            }
            return;
        }
        let t = self.hyp_type[i];
        self.remaining_type[t] -= 1;
        let continues = |j: usize| prev.is_some_and(|(pi, pj)| pi + 1 == i && pj + 1 == j);
        // chunk-extending link first, then the rest in reference order
        let mut order: Vec<(usize, bool)> = self.options[i].clone();
        order.sort_by_key(|&(j, _)| (!continues(j), j));
        for (j, is_exact) in order {
            if self.used[j] {
                continue;
            }
            // a non-exact link must leave enough occurrences for the exact quota
            if !is_exact && self.exact_type[t] + self.remaining_type[t] < self.need_type[t] {
                continue;
            }
            self.used[j] = true;
            if is_exact {
                self.exact_type[t] += 1;
            }
            let c = chunks + usize::from(!continues(j));
            self.dfs(i + 1, Some((i, j)), links + 1, exact + usize::from(is_exact), c);
            if is_exact {
                self.exact_type[t] -= 1;
            }
            self.used[j] = false;
        }
        if self.exact_type[t] + self.remaining_type[t] >= self.need_type[t] {
            self.dfs(i + 1, prev, links, exact, chunks);
        }
        self.remaining_type[t] += 1;
    }
}
