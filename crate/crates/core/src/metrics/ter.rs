use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{check_corpus, EvalPair, MetricsError};

const MAX_SHIFT_SIZE: usize = 10;
const MAX_SHIFT_DIST: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerConfig {
    /// Pairs whose hypothesis and reference are both at most this long are
    /// scored by exhaustive shift search instead of the greedy one; 0 disables.
    pub exhaustive_max_len: usize,
}

impl Default for TerConfig {
    fn default() -> Self {
        TerConfig { exhaustive_max_len: 0 }
    }
}

/// Edit breakdown against the closest reference. `ref_len` is the mean
/// reference length of the pair, the TER denominator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct TerStats {
    pub shifts: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub substitutions: usize,
    pub ref_len: f64,
}

impl TerStats {
    pub fn edits(&self) -> usize {
        self.shifts + self.insertions + self.deletions + self.substitutions
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TerScore {
    pub score: f64,
    pub stats: TerStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Match,
    Sub,
    /// hypothesis word dropped
    Del,
    /// reference word added
    Ins,
}

/// Levenshtein distance with unit costs.
fn distance(h: &[String], r: &[String]) -> usize {
    let mut row: Vec<usize> = (0..=r.len()).collect();
    for i in 1..=h.len() {
        let mut diag = row[0];
        row[0] = i;
        for j in 1..=r.len() {
            let up = row[j];
            row[j] = (diag + usize::from(h[i - 1] != r[j - 1])).min(up + 1).min(row[j - 1] + 1);
            diag = up;
        }
    }
    row[r.len()]
}

/// Levenshtein alignment, preferring match/substitution, then deletion,
/// then insertion when tracing back.
fn alignment(h: &[String], r: &[String]) -> (usize, Vec<Op>) {
    let (n, m) = (h.len(), r.len());
    let mut d = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=m {
        d[0][j] = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            d[i][j] = (d[i - 1][j - 1] + usize::from(h[i - 1] != r[j - 1]))
                .min(d[i - 1][j] + 1)
                .min(d[i][j - 1] + 1);
        }
    }
    let mut ops = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + usize::from(h[i - 1] != r[j - 1]) {
            ops.push(if h[i - 1] == r[j - 1] { Op::Match } else { Op::Sub });
            i -= 1;
            j -= 1;
        } else if i > 0 && d[i][j] == d[i - 1][j] + 1 {
            ops.push(Op::Del);
            i -= 1;
        } else {
            ops.push(Op::Ins);
            j -= 1;
        }
    }
    ops.reverse();
    (d[n][m], ops)
}

fn apply_shift(h: &[String], start: usize, len: usize, to: usize) -> Vec<String> {
    let mut rest: Vec<String> = h[..start].iter().chain(&h[start + len..]).cloned().collect();
    let at = if to > start { to - len } else { to };
    let block = h[start..start + len].to_vec();
    rest.splice(at..at, block);
    rest
}

/// Greedy shift search: repeatedly applies the block shift with the largest
/// net reduction in edit distance. A candidate block must occur in the
/// reference and must not already be aligned as matches; it is moved next
/// to the hypothesis position aligned with that reference occurrence.
fn greedy_shifts(hyp: &[String], reference: &[String]) -> (Vec<String>, usize) {
    let mut cur = hyp.to_vec();
    let mut shifts = 0;
    loop {
        let (cost, ops) = alignment(&cur, reference);
        if cost == 0 {
            break;
        }
        // per-position alignment bookkeeping
        let mut hyp_ok = vec![false; cur.len()];
        let mut ref_ok = vec![false; reference.len()];
        let mut ref_start = vec![0usize; reference.len()];
        let mut ref_end = vec![0usize; reference.len()];
        let (mut i, mut j) = (0, 0);
        for op in &ops {
            match op {
                Op::Match | Op::Sub => {
                    if *op == Op::Match {
                        hyp_ok[i] = true;
                        ref_ok[j] = true;
                    }
                    ref_start[j] = i;
                    ref_end[j] = i + 1;
                    i += 1;
                    j += 1;
                }
                Op::Del => i += 1,
                Op::Ins => {
                    ref_start[j] = i;
                    ref_end[j] = i;
                    j += 1;
                }
            }
        }
        let mut best: Option<(usize, Vec<String>)> = None;
        for start in 0..cur.len() {
            for len in (1..=MAX_SHIFT_SIZE.min(cur.len() - start)).rev() {
                if hyp_ok[start..start + len].iter().all(|&ok| ok) {
                    continue;
                }
                let block = &cur[start..start + len];
                for rj in 0..reference.len().saturating_sub(len - 1) {
                    if &reference[rj..rj + len] != block || ref_ok[rj..rj + len].iter().all(|&ok| ok) {
                        continue;
                    }
                    let mut dests = vec![ref_start[rj]];
                    if rj > 0 {
                        dests.push(ref_end[rj - 1]);
                    }
                    dests.sort_unstable();
                    dests.dedup();
                    for to in dests {
                        if (start..=start + len).contains(&to) || to.abs_diff(start) > MAX_SHIFT_DIST {
                            continue;
                        }
                        let moved = apply_shift(&cur, start, len, to);
                        let new_cost = distance(&moved, reference) + 1;
                        if new_cost < cost && best.as_ref().map_or(true, |b| new_cost < b.0) {
                            best = Some((new_cost, moved));
                        }
                    }
                }
            }
        }
        match best {
            Some((_, moved)) => {
                cur = moved;
                shifts += 1;
            }
            None => break,
        }
    }
    (cur, shifts)
}

/// Minimum over every sequence of block shifts (any block, any
/// destination) of `shifts + Levenshtein distance`, by breadth-first search
/// over shift counts. Exponential; meant for short sentences.
pub fn ter_exhaustive(hyp: &[String], reference: &[String]) -> usize {
    // shifts preserve the multiset of words, so this bound holds for every state
    let bag = bag_distance(hyp, reference);
    let mut best = distance(hyp, reference);
    let mut seen: HashSet<Vec<String>> = HashSet::from([hyp.to_vec()]);
    let mut frontier: VecDeque<Vec<String>> = VecDeque::from([hyp.to_vec()]);
    let mut depth = 0;
    while !frontier.is_empty() && depth + 1 + bag < best {
        depth += 1;
        let mut next = VecDeque::new();
        for state in frontier {
            for (_, moved) in all_shifts(&state) {
                if seen.insert(moved.clone()) {
                    best = best.min(depth + distance(&moved, reference));
                    next.push_back(moved);
                }
            }
        }
        frontier = next;
    }
    best
}

fn all_shifts(h: &[String]) -> Vec<((usize, usize, usize), Vec<String>)> {
    let n = h.len();
    let mut out = Vec::new();
    for start in 0..n {
        for len in 1..=n - start {
            for to in 0..=n {
                if (start..=start + len).contains(&to) {
                    continue;
                }
                out.push(((start, len, to), apply_shift(h, start, len, to)));
            }
        }
    }
    out
}

fn bag_distance(a: &[String], b: &[String]) -> usize {
    let mut counts: std::collections::HashMap<&str, i64> = std::collections::HashMap::new();
    for w in a {
        *counts.entry(w).or_insert(0) += 1;
    }
    for w in b {
        *counts.entry(w).or_insert(0) -= 1;
    }
    let surplus: i64 = counts.values().filter(|&&c| c > 0).sum();
    let deficit: i64 = -counts.values().filter(|&&c| c < 0).sum::<i64>();
    surplus.max(deficit) as usize
}

fn stats_against(hyp: &[String], reference: &[String], config: &TerConfig) -> TerStats {
    if config.exhaustive_max_len > 0
        && hyp.len() <= config.exhaustive_max_len
        && reference.len() <= config.exhaustive_max_len
    {
        return exhaustive_stats(hyp, reference);
    }
    let (shifted, shifts) = greedy_shifts(hyp, reference);
    with_edits(shifts, &shifted, reference)
}

fn with_edits(shifts: usize, shifted: &[String], reference: &[String]) -> TerStats {
    let (_, ops) = alignment(shifted, reference);
    let count = |o: Op| ops.iter().filter(|&&x| x == o).count();
    TerStats {
        shifts,
        insertions: count(Op::Ins),
        deletions: count(Op::Del),
        substitutions: count(Op::Sub),
        ref_len: 0.0,
    }
}

/// Exhaustive search that also recovers the edit breakdown of an optimum.
fn exhaustive_stats(hyp: &[String], reference: &[String]) -> TerStats {
    let target = ter_exhaustive(hyp, reference);
    let mut frontier = vec![hyp.to_vec()];
    let mut seen: HashSet<Vec<String>> = HashSet::from([hyp.to_vec()]);
    for depth in 0..=target {
        let mut hits: Vec<&Vec<String>> = frontier
            .iter()
            .filter(|s| depth + distance(s, reference) == target)
            .collect();
        if !hits.is_empty() {
            hits.sort();
            return with_edits(depth, hits[0], reference);
        }
        let mut next = Vec::new();
        for s in &frontier {
            for (_, m) in all_shifts(s) {
                if seen.insert(m.clone()) {
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    unreachable!("the optimum is reached within its own shift count")
}

/// Sentence TER: fewest edits over the references divided by the mean
/// reference length.
pub fn ter(pair: &EvalPair, config: &TerConfig) -> Result<TerScore, MetricsError> {
    if pair.references.is_empty() {
        return Err(MetricsError::NoReferences { index: 0 });
    }
    let stats = pair_stats(pair, config);
    if stats.ref_len == 0.0 {
        return Err(MetricsError::EmptyReference { index: 0 });
    }
    Ok(TerScore { score: stats.edits() as f64 / stats.ref_len, stats })
}

fn pair_stats(pair: &EvalPair, config: &TerConfig) -> TerStats {
    let mut best: Option<TerStats> = None;
    for r in &pair.references {
        let s = stats_against(&pair.hypothesis, r, config);
        if best.map_or(true, |b| s.edits() < b.edits()) {
            best = Some(s);
        }
    }
    let mut best = best.unwrap_or_default();
    best.ref_len = pair.references.iter().map(|r| r.len() as f64).sum::<f64>() / pair.references.len() as f64;
    best
}

/// Corpus TER: total edits over total mean reference length, plus the
/// per-sentence statistics.
pub fn ter_corpus(pairs: &[EvalPair], config: &TerConfig) -> Result<(TerScore, Vec<TerStats>), MetricsError> {
    check_corpus(pairs)?;
    let per = crate::exec::map(pairs, |p| pair_stats(p, config));
    let mut total = TerStats::default();
    for s in &per {
        total.shifts += s.shifts;
        total.insertions += s.insertions;
        total.deletions += s.deletions;
        total.substitutions += s.substitutions;
        total.ref_len += s.ref_len;
    }
    if total.ref_len == 0.0 {
        return Err(MetricsError::EmptyReference { index: 0 });
    }
    Ok((TerScore { score: total.edits() as f64 / total.ref_len, stats: total }, per))
}
