//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

pub fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

/// Reference over a small alphabet and a hypothesis derived from it by
/// random block moves, substitutions, insertions and deletions, both at
/// most `max_len` long.
pub fn random_edit_pair<R: Rng>(rng: &mut R, max_len: usize) -> (Vec<String>, Vec<String>) {
    const ALPHABET: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let len = rng.gen_range(1..=max_len);
    let reference: Vec<String> = (0..len).map(|_| ALPHABET.choose(rng).unwrap().to_string()).collect();
    let mut hyp = reference.clone();
    for _ in 0..rng.gen_range(0..=3) {
        match rng.gen_range(0..4) {
            0 if hyp.len() >= 2 => {
                let l = rng.gen_range(1..hyp.len());
                let s = rng.gen_range(0..=hyp.len() - l);
                let block: Vec<String> = hyp.drain(s..s + l).collect();
                let to = rng.gen_range(0..=hyp.len());
                hyp.splice(to..to, block);
            }
            1 if !hyp.is_empty() => {
                let i = rng.gen_range(0..hyp.len());
                hyp[i] = ALPHABET.choose(rng).unwrap().to_string();
            }
            2 if hyp.len() < max_len => {
                let i = rng.gen_range(0..=hyp.len());
                hyp.insert(i, ALPHABET.choose(rng).unwrap().to_string());
            }
            3 if hyp.len() > 1 => {
                let i = rng.gen_range(0..hyp.len());
                hyp.remove(i);
            }
            _ => {}
        }
    }
    (hyp, reference)
}

/// Plain dynamic-programming edit distance.
pub fn levenshtein(a: &[String], b: &[String]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 0..=a.len() {
        d[i][0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Optimal shift-plus-edit cost: uniform-cost search where each move
/// relocates one contiguous block anywhere in the sequence.
pub fn ter_oracle(hyp: &[String], reference: &[String]) -> usize {
    let mut best = levenshtein(hyp, reference);
    let mut layer: HashSet<Vec<String>> = HashSet::from([hyp.to_vec()]);
    let mut seen = layer.clone();
    let mut shifts = 0;
    while shifts + 1 < best && !layer.is_empty() {
        shifts += 1;
        let mut next = HashSet::new();
        for s in &layer {
            let n = s.len();
            for i in 0..n {
                for j in i + 1..=n {
                    let block = &s[i..j];
                    let rest: Vec<String> = s[..i].iter().chain(&s[j..]).cloned().collect();
                    for k in 0..=rest.len() {
                        let mut t = rest[..k].to_vec();
                        t.extend_from_slice(block);
                        t.extend_from_slice(&rest[k..]);
                        if seen.insert(t.clone()) {
                            best = best.min(shifts + levenshtein(&t, reference));
                            next.insert(t);
                        }
                    }
                }
            }
        }
        layer = next;
    }
    best
}

/// Minimum METEOR chunk count by enumerating every one-to-one alignment
/// built from exact and stem links, keeping those that maximize exact
/// links and then total links. Returns (exact, total, chunks).
pub fn meteor_oracle(hyp: &[String], hyp_stems: &[String], reference: &[String], ref_stems: &[String]) -> (usize, usize, usize) {
    fn rec(
        i: usize,
        hyp: &[String],
        hs: &[String],
        r: &[String],
        rs: &[String],
        used: &mut Vec<bool>,
        links: &mut Vec<(usize, usize, bool)>,
        best: &mut (usize, usize, usize),
    ) {
        if i == hyp.len() {
            let exact = links.iter().filter(|l| l.2).count();
            let total = links.len();
            let mut chunks = 0;
            for (k, l) in links.iter().enumerate() {
                if k == 0 || !(links[k - 1].0 + 1 == l.0 && links[k - 1].1 + 1 == l.1) {
                    chunks += 1;
                }
            }
            let key = (exact, total);
            if key > (best.0, best.1) || (key == (best.0, best.1) && chunks < best.2) {
                *best = (exact, total, chunks);
            }
            return;
        }
        rec(i + 1, hyp, hs, r, rs, used, links, best);
        for j in 0..r.len() {
            if used[j] {
                continue;
            }
            let exact = hyp[i] == r[j];
            if exact || hs[i] == rs[j] {
                used[j] = true;
                links.push((i, j, exact));
                rec(i + 1, hyp, hs, r, rs, used, links, best);
                links.pop();
                used[j] = false;
            }
        }
    }
    let mut best = (0, 0, 0);
    rec(0, hyp, hyp_stems, reference, ref_stems, &mut vec![false; reference.len()], &mut Vec::new(), &mut best);
    best
}

/// Word counts, handy for clipping checks.
pub fn counts(tokens: &[String]) -> HashMap<&str, usize> {
    let mut m = HashMap::new();
    for t in tokens {
        *m.entry(t.as_str()).or_insert(0) += 1;
    }
    m
}

/// Pseudo-words over a Polish-flavoured Latin alphabet, all distinct.
pub fn lexicon(size: usize) -> Vec<String> {
    const ONSETS: [&str; 12] = ["b", "cz", "d", "g", "k", "ł", "m", "p", "rz", "s", "w", "ż"];
    const NUCLEI: [&str; 8] = ["a", "e", "i", "o", "u", "y", "ą", "ę"];
    let mut out = Vec::with_capacity(size);
    let mut k = 0usize;
    while out.len() < size {
        let mut w = String::new();
        let mut x = k;
        loop {
            w.push_str(ONSETS[x % ONSETS.len()]);
            x /= ONSETS.len();
            w.push_str(NUCLEI[x % NUCLEI.len()]);
            x /= NUCLEI.len();
            if x == 0 {
                break;
            }
        }
        out.push(w);
        k += 1;
    }
    out
}

/// One or two sentences of 6-12 words each, every word distinct, so the
/// segment has no adjacent repeated block of any length.
pub fn clean_segment<R: Rng>(rng: &mut R, lexicon: &[String]) -> Vec<String> {
    let sentences = rng.gen_range(1..=2);
    let lens: Vec<usize> = (0..sentences).map(|_| rng.gen_range(6..=12)).collect();
    let mut pool = lexicon.choose_multiple(rng, lens.iter().sum()).cloned();
    let mut out = Vec::new();
    for l in lens {
        out.extend(pool.by_ref().take(l));
        out.push(".".into());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seeded {
    /// A A B B
    PairedBlocks,
    /// Sentence A. Sentence A.
    SentenceRepeat,
    /// A B B C
    InteriorBlock,
}

/// Applies one duplication pattern with blocks of at least `min_block`
/// tokens. Returns the corrupted tokens and the token ranges of the
/// inserted copies.
pub fn seed_duplication<R: Rng>(
    rng: &mut R,
    tokens: &[String],
    kind: Seeded,
    min_block: usize,
) -> (Vec<String>, Vec<std::ops::Range<usize>>) {
    let body = tokens.iter().position(|t| t == ".").unwrap();
    match kind {
        Seeded::SentenceRepeat => {
            let s = &tokens[..=body];
            let mut out = s.to_vec();
            out.extend_from_slice(s);
            out.extend_from_slice(&tokens[body + 1..]);
            (out, vec![s.len()..2 * s.len()])
        }
        Seeded::InteriorBlock => {
            let len = rng.gen_range(min_block..=body.max(min_block));
            let len = len.min(body);
            let start = rng.gen_range(0..=body - len);
            let mut out = tokens[..start + len].to_vec();
            out.extend_from_slice(&tokens[start..start + len]);
            out.extend_from_slice(&tokens[start + len..]);
            (out, vec![start + len..start + 2 * len])
        }
        Seeded::PairedBlocks => {
            let la = rng.gen_range(min_block..=body / 2);
            let lb = rng.gen_range(min_block..=body - la);
            let start = rng.gen_range(0..=body - la - lb);
            let a = &tokens[start..start + la];
            let b = &tokens[start + la..start + la + lb];
            let mut out = tokens[..start].to_vec();
            out.extend_from_slice(a);
            out.extend_from_slice(a);
            out.extend_from_slice(b);
            out.extend_from_slice(b);
            out.extend_from_slice(&tokens[start + la + lb..]);
            let a_copy = start + la..start + 2 * la;
            let b_copy = start + 2 * la + lb..start + 2 * la + 2 * lb;
            (out, vec![a_copy, b_copy])
        }
    }
}

/// A clean parallel corpus and a copy whose source side carries
/// `seeded` duplications cycling through the three patterns.
pub struct SeededCorpus {
    pub clean_source: Vec<String>,
    pub target: Vec<String>,
    pub corrupted_source: Vec<String>,
    /// (segment index, pattern, inserted copy ranges)
    pub seeds: Vec<(usize, Seeded, Vec<std::ops::Range<usize>>)>,
}

pub fn seeded_corpus<R: Rng>(rng: &mut R, segments: usize, seeded: usize, min_block: usize) -> SeededCorpus {
    let lex = lexicon(3000);
    let src: Vec<Vec<String>> = (0..segments).map(|_| clean_segment(rng, &lex)).collect();
    let target: Vec<String> = (0..segments).map(|_| clean_segment(rng, &lex).join(" ")).collect();
    let mut corrupted = src.clone();
    let mut picks: Vec<usize> = (0..segments).collect();
    picks.shuffle(rng);
    picks.truncate(seeded);
    picks.sort_unstable();
    const KINDS: [Seeded; 3] = [Seeded::PairedBlocks, Seeded::SentenceRepeat, Seeded::InteriorBlock];
    let mut seeds = Vec::new();
    for (k, &i) in picks.iter().enumerate() {
        let kind = KINDS[k % 3];
        let (toks, copies) = seed_duplication(rng, &src[i], kind, min_block);
        corrupted[i] = toks;
        seeds.push((i, kind, copies));
    }
    SeededCorpus {
        clean_source: src.iter().map(|s| s.join(" ")).collect(),
        target,
        corrupted_source: corrupted.iter().map(|s| s.join(" ")).collect(),
        seeds,
    }
}

/// Direct evaluation of interpolated Kneser-Ney and Witten-Bell from
/// counts, working on strings and sharing nothing with the estimator.
pub mod lm_oracle {
    use std::collections::{BTreeMap, BTreeSet};

    pub type Gram = Vec<String>;

    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub enum Method {
        KneserNey,
        WittenBell,
    }

    pub struct Oracle {
        order: usize,
        method: Method,
        /// counts[n-1]: adjusted counts of n-grams (raw for WB)
        counts: Vec<BTreeMap<Gram, f64>>,
        discounts: Vec<f64>,
        vocab_size: usize,
    }

    fn pad(s: &str) -> Gram {
        std::iter::once("<s>")
            .chain(s.split_whitespace())
            .chain(std::iter::once("</s>"))
            .map(String::from)
            .collect()
    }

    impl Oracle {
        pub fn new(sentences: &[&str], order: usize, method: Method) -> Self {
            let mut raw: Vec<BTreeMap<Gram, f64>> = vec![BTreeMap::new(); order];
            let mut words = BTreeSet::new();
            for s in sentences {
                let p = pad(s);
                words.extend(p.iter().cloned());
                for n in 1..=order {
                    for w in p.windows(n) {
                        if n == 1 && w[0] == "<s>" {
                            continue;
                        }
                        *raw[n - 1].entry(w.to_vec()).or_default() += 1.0;
                    }
                }
            }
            let mut counts = raw.clone();
            if method == Method::KneserNey {
                for n in 1..order {
                    for (g, c) in counts[n - 1].iter_mut() {
                        if g[0] != "<s>" {
                            *c = raw[n].keys().filter(|l| l[1..] == g[..]).count() as f64;
                        }
                    }
                }
            }
            let discounts = counts
                .iter()
                .map(|t| {
                    let n1 = t.values().filter(|&&c| c == 1.0).count() as f64;
                    let n2 = t.values().filter(|&&c| c == 2.0).count() as f64;
                    let d = if n1 + 2.0 * n2 == 0.0 { 0.0 } else { n1 / (n1 + 2.0 * n2) };
                    d.clamp(1e-3, 1.0 - 1e-3)
                })
                .collect();
            // predicted words: every observed word but <s>, plus <unk>
            let vocab_size = words.len() - 1 + 1;
            Oracle { order, method, counts, discounts, vocab_size }
        }

        /// P(w | h) with h at most order-1 words long.
        pub fn prob(&self, h: &[String], w: &str) -> f64 {
            let n = h.len() + 1;
            if n == 0 {
                unreachable!()
            }
            let lower = if h.is_empty() {
                1.0 / self.vocab_size as f64
            } else {
                self.prob(&h[1..], w)
            };
            let table = &self.counts[n - 1];
            let conts: Vec<(&Gram, f64)> = table.iter().filter(|(g, _)| g[..n - 1] == *h).map(|(g, &c)| (g, c)).collect();
            if conts.is_empty() {
                return lower;
            }
            let total: f64 = conts.iter().map(|c| c.1).sum();
            let types = conts.len() as f64;
            let c = conts.iter().find(|(g, _)| g[n - 1] == w).map_or(0.0, |c| c.1);
            match self.method {
                Method::KneserNey => {
                    let d = self.discounts[n - 1];
                    (c - d).max(0.0) / total + d * types / total * lower
                }
                Method::WittenBell => (c + types * lower) / (total + types),
            }
        }

        pub fn order(&self) -> usize {
            self.order
        }
    }
}

/// A first-order Markov text source over `w0 … w{vocab-1}`: every state
/// (start included) has `fanout` successors drawn at random, so two
/// domains built from different seeds share words but not statistics.
pub struct Domain {
    successors: Vec<Vec<usize>>,
}

impl Domain {
    pub fn new<R: Rng>(rng: &mut R, vocab: usize, fanout: usize) -> Self {
        let successors = (0..=vocab)
            .map(|_| (0..fanout).map(|_| rng.gen_range(0..vocab)).collect())
            .collect();
        Domain { successors }
    }

    pub fn sentence<R: Rng>(&self, rng: &mut R) -> String {
        let start = self.successors.len() - 1;
        let mut state = start;
        let mut out = Vec::new();
        loop {
            state = *self.successors[state].choose(rng).unwrap();
            out.push(format!("w{state}"));
            if out.len() >= 20 || rng.gen_ratio(1, 8) {
                break;
            }
        }
        out.join(" ")
    }

    pub fn text<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<String> {
        (0..n).map(|_| self.sentence(rng)).collect()
    }
}
