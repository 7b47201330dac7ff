use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::model::{Context, NGramModel, Smoothing};
use super::vocab::{Vocab, BOS, EOS};
use super::{LmError, LOG_ZERO};

const WEIGHT_TOLERANCE: f64 = 1e-9;
const EM_MIN_GAIN: f64 = 1e-6;
const EM_MAX_ITERATIONS: usize = 100;

/// Component models viewed over their union vocabulary.
///
/// A union word unknown to component `i` shares that component's `<unk>`
/// mass equally with the union `<unk>`: `P_i(u | h) = P_i(<unk> | h) /
/// (k_i + 1)`, `k_i` being the number of union words missing from `V_i`.
/// Each component therefore stays normalized over the union vocabulary.
pub struct Mixture<'a> {
    models: Vec<&'a NGramModel>,
    vocab: Vocab,
    /// `local[i][u]`: id in component `i` of union id `u`.
    local: Vec<Vec<Option<u32>>>,
    unk_share: Vec<f64>,
    order: usize,
}

impl<'a> Mixture<'a> {
    pub fn new(models: &[&'a NGramModel]) -> Self {
        let vocab = Vocab::from_words(models.iter().flat_map(|m| m.vocab().words()));
        let local: Vec<Vec<Option<u32>>> = models
            .iter()
            .map(|m| vocab.words().map(|w| m.vocab().id(w)).collect())
            .collect();
        let unk_share = local
            .iter()
            .map(|l| 1.0 / (l.iter().filter(|x| x.is_none()).count() + 1) as f64)
            .collect();
        let order = models.iter().map(|m| m.order()).max().unwrap_or(1);
        Mixture { models: models.to_vec(), vocab, local, unk_share, order }
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// P_i(w | h) for union ids.
    pub fn component_prob(&self, i: usize, history: &[u32], w: u32) -> f64 {
        let map = &self.local[i];
        let h: Vec<u32> = history
            .iter()
            .map(|&u| map[u as usize].unwrap_or(Vocab::UNK_ID))
            .collect();
        match map[w as usize] {
            Some(lw) if lw != Vocab::UNK_ID => self.models[i].prob(&h, lw),
            _ => self.models[i].prob(&h, Vocab::UNK_ID) * self.unk_share[i],
        }
    }

    pub fn mixed_prob(&self, weights: &[f64], history: &[u32], w: u32) -> f64 {
        weights
            .iter()
            .enumerate()
            .map(|(i, &l)| l * self.component_prob(i, history, w))
            .sum()
    }

    fn union_id(&self, i: usize, local: u32) -> u32 {
        self.vocab
            .id(self.models[i].vocab().word(local))
            .expect("union contains every component word")
    }
}

fn validate(n_models: usize, weights: &[f64]) -> Result<(), LmError> {
    if n_models == 0 {
        return Err(LmError::WeightError("no models".into()));
    }
    if weights.len() != n_models {
        return Err(LmError::WeightError(format!(
            "{} weights for {} models",
            weights.len(),
            n_models
        )));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(LmError::WeightError(format!("weight {w} is not a nonnegative number")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(LmError::WeightError(format!("weights sum to {sum}, expected 1")));
    }
    Ok(())
}

/// Linear interpolation `P(w | h) = Σ_i λ_i P_i(w | h)` materialized as a
/// standalone back-off model.
///
/// Stored n-grams are the union of the components' n-grams (closed under
/// prefixes), each holding the exact mixture probability. Back-off weights
/// are then recomputed so every history distributes its leftover mass over
/// the resulting lower order: `bow(h) = (1 − Σ P(w|h)) / (1 − Σ P(w|h'))`,
/// both sums over the words stored after `h`.
pub fn interpolate(models: &[NGramModel], weights: &[f64]) -> Result<NGramModel, LmError> {
    validate(models.len(), weights)?;
    let active: Vec<usize> = (0..models.len()).filter(|&i| weights[i] > 0.0).collect();
    if active.len() == 1 {
        return Ok(models[active[0]].clone());
    }
    let refs: Vec<&NGramModel> = active.iter().map(|&i| &models[i]).collect();
    let lambdas: Vec<f64> = active.iter().map(|&i| weights[i]).collect();
    let mix = Mixture::new(&refs);
    let order = mix.order();
    let vocab = mix.vocab().clone();

    // union n-gram set grouped by history, prefix-closed
    let mut grams: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); order];
    for (i, m) in refs.iter().enumerate() {
        for n in 2..=m.order() {
            for (g, _) in m.ngrams(n) {
                let u: Vec<u32> = g.iter().map(|&id| mix.union_id(i, id)).collect();
                for k in 2..=u.len() {
                    grams[k - 1].insert(u[..k].to_vec());
                }
            }
        }
    }
    for w in 0..vocab.len() as u32 {
        if w != Vocab::BOS_ID {
            grams[0].insert(vec![w]);
        }
    }
    // histories need their own entry
    for n in (2..=order).rev() {
        let prefixes: Vec<Vec<u32>> = grams[n - 1].iter().map(|g| g[..n - 1].to_vec()).collect();
        for p in prefixes {
            if p != [Vocab::BOS_ID] {
                grams[n - 2].insert(p);
            }
        }
    }

    let mut model = NGramModel::empty(order, vocab, Smoothing::Interpolated);
    model.notes.push(format!(
        "linear interpolation of {} models, weights {:?}",
        refs.len(),
        lambdas
    ));

    for n in 1..=order {
        let mut groups: HashMap<Box<[u32]>, Vec<u32>> = HashMap::new();
        for g in &grams[n - 1] {
            groups.entry(g[..n - 1].into()).or_default().push(g[n - 1]);
        }
        let histories: Vec<(Box<[u32]>, Vec<u32>)> = groups.into_iter().collect();
        let built = crate::exec::map(&histories, |(h, ws)| {
            let probs: Vec<f64> = ws.iter().map(|&w| mix.mixed_prob(&lambdas, h, w)).collect();
            let lower: Vec<f64> = if n == 1 {
                Vec::new()
            } else {
                ws.iter().map(|&w| model.prob(&h[1..], w)).collect()
            };
            (h.clone(), finish_context(ws, probs, &lower, n == 1))
        });
        let level = &mut model.contexts[n - 1];
        for (h, ctx) in built {
            level.insert(h, ctx);
        }
        if n == 1 {
            level
                .get_mut(&[][..])
                .expect("unigram context")
                .probs
                .insert(Vocab::BOS_ID, LOG_ZERO);
        }
    }
    Ok(model)
}

/// Normalizes one history: the unigram level is rescaled to sum to 1; higher
/// levels get the back-off weight that hands the leftover mass to the lower
/// order, or are rescaled when no mass is left to hand over.
fn finish_context(ws: &[u32], mut probs: Vec<f64>, lower: &[f64], root: bool) -> Context {
    let stored: f64 = probs.iter().sum();
    let mut backoff = None;
    if root {
        probs.iter_mut().for_each(|p| *p /= stored);
    } else {
        let lower_sum: f64 = lower.iter().sum();
        let num = 1.0 - stored;
        let den = 1.0 - lower_sum;
        if num > 1e-12 && den > 1e-12 {
            backoff = Some((num / den).log10());
        } else {
            probs.iter_mut().for_each(|p| *p /= stored);
            backoff = Some(LOG_ZERO);
        }
    }
    let probs = ws
        .iter()
        .zip(probs)
        .map(|(&w, p)| (w, if p > 0.0 { p.log10() } else { LOG_ZERO }))
        .collect();
    Context { backoff, probs }
}

/// Result of EM weight tuning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneResult {
    pub weights: Vec<f64>,
    /// Per-token log10 likelihood of the dev corpus, at the initial weights
    /// and after each iteration.
    pub log_likelihoods: Vec<f64>,
    pub iterations: usize,
}

/// Interpolation weights maximizing dev-set likelihood, by EM on the
/// per-token mixture starting from uniform weights.
pub fn tune_weights(models: &[NGramModel], dev: &[Vec<String>]) -> Result<TuneResult, LmError> {
    if models.is_empty() {
        return Err(LmError::WeightError("no models".into()));
    }
    let refs: Vec<&NGramModel> = models.iter().collect();
    let mix = Mixture::new(&refs);
    let k = models.len();
    let rows: Vec<Vec<f64>> = crate::exec::map(dev, |s| sentence_rows(&mix, s))
        .into_iter()
        .flatten()
        .filter(|r| r.iter().any(|&p| p > 0.0))
        .collect();

    let mut weights = vec![1.0 / k as f64; k];
    let ll = |w: &[f64]| -> f64 {
        if rows.is_empty() {
            return 0.0;
        }
        rows.iter()
            .map(|r| r.iter().zip(w).map(|(p, l)| p * l).sum::<f64>().log10())
            .sum::<f64>()
            / rows.len() as f64
    };
    let mut history = vec![ll(&weights)];
    let mut iterations = 0;
    while iterations < EM_MAX_ITERATIONS && !rows.is_empty() {
        let mut acc = vec![0.0; k];
        for r in &rows {
            let z: f64 = r.iter().zip(&weights).map(|(p, l)| p * l).sum();
            for i in 0..k {
                acc[i] += weights[i] * r[i] / z;
            }
        }
        weights = acc.iter().map(|a| a / rows.len() as f64).collect();
        iterations += 1;
        let cur = ll(&weights);
        let gain = cur - history[history.len() - 1];
        history.push(cur);
        if gain < EM_MIN_GAIN {
            break;
        }
    }
    Ok(TuneResult { weights, log_likelihoods: history, iterations })
}

/// Per-position component probabilities for one dev sentence.
fn sentence_rows(mix: &Mixture, sentence: &[String]) -> Vec<Vec<f64>> {
    let keep = mix.order().saturating_sub(1);
    let mut hist = vec![Vocab::BOS_ID];
    let ids = sentence
        .iter()
        .filter(|t| *t != BOS && *t != EOS)
        .map(|t| mix.vocab().id(t).unwrap_or(Vocab::UNK_ID))
        .chain(std::iter::once(Vocab::EOS_ID));
    let mut rows = Vec::new();
    for w in ids {
        let h = &hist[hist.len().saturating_sub(keep)..];
        rows.push((0..mix.len()).map(|i| mix.component_prob(i, h, w)).collect());
        hist.push(w);
    }
    rows
}
