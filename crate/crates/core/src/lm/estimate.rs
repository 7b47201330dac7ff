use std::collections::HashMap;

use super::counts::CountTable;
use super::model::{Context, NGramModel, Smoothing};
use super::vocab::Vocab;
use super::{LmError, LOG_ZERO};

/// Bounds for the absolute discount: `D ∈ [ε, 1 − ε]`.
pub const DISCOUNT_EPSILON: f64 = 1e-3;

/// Absolute discount `n1 / (n1 + 2 n2)` clamped to `[ε, 1 − ε]`.
/// Returns the discount and whether clamping was needed.
pub fn kn_discount(n1: usize, n2: usize) -> (f64, bool) {
    let raw = if n1 + 2 * n2 == 0 {
        0.0
    } else {
        n1 as f64 / (n1 + 2 * n2) as f64
    };
    let clamped = raw.clamp(DISCOUNT_EPSILON, 1.0 - DISCOUNT_EPSILON);
    (clamped, clamped != raw)
}

/// n-grams of one order grouped by history, continuations sorted by id so
/// floating-point sums are reproducible.
fn by_history(counts: &HashMap<Box<[u32]>, f64>) -> Vec<(Box<[u32]>, Vec<(u32, f64)>)> {
    let mut groups: HashMap<&[u32], Vec<(u32, f64)>> = HashMap::new();
    for (g, &c) in counts {
        let (h, w) = g.split_at(g.len() - 1);
        groups.entry(h).or_default().push((w[0], c));
    }
    let mut out: Vec<(Box<[u32]>, Vec<(u32, f64)>)> = groups
        .into_iter()
        .map(|(h, mut v)| {
            v.sort_by_key(|x| x.0);
            (h.into(), v)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn predicted_ids(vocab: &Vocab) -> Vec<u32> {
    (0..vocab.len() as u32).filter(|&i| i != Vocab::BOS_ID).collect()
}

/// Per-order interpolation rule: for a history with continuations
/// `(w, count)`, returns `(mass(w), lambda_lower)` so that
/// `P(w|h) = mass(w) + lambda_lower · P_lower(w|h')`.
trait Rule {
    fn masses(&self, n: usize, conts: &[(u32, f64)]) -> (Vec<f64>, f64);
}

struct KneserNey {
    discounts: Vec<f64>,
}

impl Rule for KneserNey {
    fn masses(&self, n: usize, conts: &[(u32, f64)]) -> (Vec<f64>, f64) {
        let d = self.discounts[n - 1];
        let total: f64 = conts.iter().map(|c| c.1).sum();
        let masses = conts.iter().map(|c| (c.1 - d).max(0.0) / total).collect();
        (masses, d * conts.len() as f64 / total)
    }
}

struct WittenBell;

impl Rule for WittenBell {
    fn masses(&self, _n: usize, conts: &[(u32, f64)]) -> (Vec<f64>, f64) {
        let total: f64 = conts.iter().map(|c| c.1).sum();
        let types = conts.len() as f64;
        let masses = conts.iter().map(|c| c.1 / (total + types)).collect();
        (masses, types / (total + types))
    }
}

/// Builds a back-off model whose stored probabilities are the full
/// interpolated estimates and whose back-off weights are the interpolation
/// weights of the lower order, so the back-off recursion reproduces the
/// interpolated distribution exactly.
fn build(
    counts: &CountTable,
    order: usize,
    adjusted: &[HashMap<Box<[u32]>, f64>],
    rule: &dyn Rule,
    smoothing: Smoothing,
) -> NGramModel {
    let vocab = counts.vocab().clone();
    let mut model = NGramModel::empty(order, vocab.clone(), smoothing);
    let uniform = 1.0 / predicted_ids(&vocab).len() as f64;

    for n in 1..=order {
        let groups = by_history(&adjusted[n - 1]);
        let mut level: HashMap<Box<[u32]>, Context> = HashMap::with_capacity(groups.len());
        for (h, conts) in groups {
            let (masses, lambda) = rule.masses(n, &conts);
            let mut probs = HashMap::with_capacity(conts.len());
            let lower = |w: u32| -> f64 {
                if n == 1 {
                    uniform
                } else {
                    10f64.powf(model.logprob(&h[1..], w))
                }
            };
            for ((w, _), m) in conts.iter().zip(&masses) {
                probs.insert(*w, (m + lambda * lower(*w)).log10());
            }
            if n == 1 {
                // words that never occur (only <unk> after filtering) get the
                // uniform share of the leftover mass
                for w in predicted_ids(&vocab) {
                    probs.entry(w).or_insert_with(|| (lambda * uniform).log10());
                }
                probs.insert(Vocab::BOS_ID, LOG_ZERO);
            }
            let backoff = (n > 1).then(|| lambda.log10());
            level.insert(h, Context { backoff, probs });
        }
        model.contexts[n - 1] = level;
    }
    model
}

fn usable_order(counts: &CountTable) -> Result<(usize, Vec<String>), LmError> {
    let effective = counts.effective_order();
    if effective == 0 {
        return Err(LmError::EmptyCounts);
    }
    let mut notes = Vec::new();
    if effective < counts.order() {
        notes.push(format!(
            "no {}-gram events; model order reduced from {} to {}",
            effective + 1,
            counts.order(),
            effective
        ));
    }
    Ok((effective, notes))
}

fn raw_counts(counts: &CountTable, order: usize) -> Vec<HashMap<Box<[u32]>, f64>> {
    (1..=order)
        .map(|n| counts.table(n).iter().map(|(k, &v)| (k.clone(), v as f64)).collect())
        .collect()
}

/// Interpolated Kneser-Ney with one absolute discount per order.
///
/// The highest order and n-grams starting with `<s>` use raw counts; other
/// lower-order n-grams use continuation counts (number of distinct words
/// seen immediately to their left). Discounts come from the count-of-counts
/// of these adjusted counts.
pub fn estimate_kneser_ney(counts: &CountTable) -> Result<NGramModel, LmError> {
    let (order, mut notes) = usable_order(counts)?;
    let mut adjusted = raw_counts(counts, order);
    for n in (1..order).rev() {
        let mut cont: HashMap<Box<[u32]>, f64> = HashMap::new();
        for g in counts.table(n + 1).keys() {
            *cont.entry(g[1..].into()).or_insert(0.0) += 1.0;
        }
        for (g, c) in adjusted[n - 1].iter_mut() {
            if g[0] != Vocab::BOS_ID {
                *c = cont.get(g).copied().unwrap_or(0.0);
            }
        }
        adjusted[n - 1].retain(|_, c| *c > 0.0);
    }
    let mut discounts = Vec::with_capacity(order);
    for (n, table) in adjusted.iter().enumerate() {
        let n1 = table.values().filter(|&&c| c == 1.0).count();
        let n2 = table.values().filter(|&&c| c == 2.0).count();
        let (d, clamped) = kn_discount(n1, n2);
        if clamped {
            notes.push(format!(
                "order {} discount clamped to {d} (n1 = {n1}, n2 = {n2})",
                n + 1
            ));
        }
        discounts.push(d);
    }
    let mut model = build(counts, order, &adjusted, &KneserNey { discounts }, Smoothing::KneserNey);
    model.notes = notes;
    Ok(model)
}

/// Witten-Bell interpolation: `λ(h) = c(h) / (c(h) + T(h))` with `T(h)` the
/// number of distinct continuations of `h`.
pub fn estimate_witten_bell(counts: &CountTable) -> Result<NGramModel, LmError> {
    let (order, notes) = usable_order(counts)?;
    let raw = raw_counts(counts, order);
    let mut model = build(counts, order, &raw, &WittenBell, Smoothing::WittenBell);
    model.notes = notes;
    Ok(model)
}
