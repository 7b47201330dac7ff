//! Detection and repair of corrupted parallel text: duplicated blocks inside
//! a segment, foreign-script and symbol noise, over-long or badly
//! length-mismatched pairs.
//!
//! Semantic problems (wrong word choice, indirect translations) and spelling
//! errors are not repaired; spelling is only measured through dictionary
//! coverage.

mod duplication;
mod length;
mod noise;
mod script;

pub use duplication::{
    detect_internal_duplication, find_repeated_blocks, strip_internal_duplication, RepeatedBlock,
};
pub use length::{length_filter, DropReason, LengthLimits, LengthVerdict};
pub use noise::{detect_noise, NoiseRules};
pub use script::{is_symbol_noise, ScriptClass};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::corpus::{
    build_vocabulary, coverage_report, CorpusError, CoverageReport, Dictionary, ParallelCorpus,
    Segment, TokenScheme,
};

#[derive(Debug, thiserror::Error)]
pub enum CleaningError {
    #[error("invalid cleaning configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    BlockDuplication,
    SentenceRepetition,
    PartialNesting,
    ForeignScript,
    SymbolNoise,
    Overlong,
    LengthRatio,
}

impl FindingKind {
    pub const ALL: [FindingKind; 7] = [
        FindingKind::BlockDuplication,
        FindingKind::SentenceRepetition,
        FindingKind::PartialNesting,
        FindingKind::ForeignScript,
        FindingKind::SymbolNoise,
        FindingKind::Overlong,
        FindingKind::LengthRatio,
    ];

    pub fn is_duplication(self) -> bool {
        matches!(
            self,
            FindingKind::BlockDuplication
                | FindingKind::SentenceRepetition
                | FindingKind::PartialNesting
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FindingKind::BlockDuplication => "block-duplication",
            FindingKind::SentenceRepetition => "sentence-repetition",
            FindingKind::PartialNesting => "partial-nesting",
            FindingKind::ForeignScript => "foreign-script",
            FindingKind::SymbolNoise => "symbol-noise",
            FindingKind::Overlong => "overlong",
            FindingKind::LengthRatio => "length-ratio",
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One detected problem. `span` is a token range of the segment on `side`
/// (for duplications, the second copy).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorruptionFinding {
    pub segment_id: usize,
    pub side: Side,
    pub kind: FindingKind,
    pub span: Range<usize>,
    pub evidence: Vec<String>,
}

/// What [`clean`] changed, keyed by the segment id in the input corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum Modification {
    StrippedDuplication {
        segment_id: usize,
        side: Side,
        tokens_removed: usize,
    },
    RemovedNoise {
        segment_id: usize,
        side: Side,
        tokens: Vec<String>,
    },
    DroppedPair {
        segment_id: usize,
        reason: DropReason,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct CleaningConfig {
    pub max_len: usize,
    pub max_ratio: f64,
    pub min_block: usize,
    pub scripts: BTreeSet<ScriptClass>,
    pub foreign_run: usize,
    /// Delete symbol-noise tokens from the text.
    pub remove_noise: bool,
    /// Drop pairs in which either side has a foreign-script run.
    pub drop_foreign: bool,
    pub scheme: TokenScheme,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        CleaningConfig {
            max_len: 80,
            max_ratio: 9.0,
            min_block: 3,
            scripts: [ScriptClass::Latin].into_iter().collect(),
            foreign_run: 3,
            remove_noise: true,
            drop_foreign: true,
            scheme: TokenScheme::default(),
        }
    }
}

impl CleaningConfig {
    pub fn validate(&self) -> Result<(), CleaningError> {
        if self.max_len < 1 {
            return Err(CleaningError::InvalidConfig("max_len must be at least 1".into()));
        }
        if !(self.max_ratio.is_finite() && self.max_ratio > 0.0) {
            return Err(CleaningError::InvalidConfig("max_ratio must be positive".into()));
        }
        if self.min_block < 1 {
            return Err(CleaningError::InvalidConfig("min_block must be at least 1".into()));
        }
        if self.scripts.is_empty() {
            return Err(CleaningError::InvalidConfig("at least one script must be allowed".into()));
        }
        Ok(())
    }

    pub fn limits(&self) -> LengthLimits {
        LengthLimits {
            max_len: self.max_len,
            max_ratio: self.max_ratio,
        }
    }

    pub fn noise_rules(&self) -> NoiseRules {
        NoiseRules {
            allowed: self.scripts.clone(),
            foreign_run: self.foreign_run,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub segments: usize,
    pub counts: BTreeMap<FindingKind, usize>,
    pub affected_segments: usize,
    pub affected_segment_fraction: f64,
    /// Source side against the dictionary, when one was supplied.
    pub coverage: Option<CoverageReport>,
    pub findings: Vec<CorruptionFinding>,
    pub modifications: Vec<Modification>,
}

impl DiagnosticsReport {
    fn from_findings(segments: usize, findings: Vec<CorruptionFinding>) -> Self {
        let mut counts: BTreeMap<FindingKind, usize> =
            FindingKind::ALL.iter().map(|&k| (k, 0)).collect();
        for f in &findings {
            *counts.entry(f.kind).or_insert(0) += 1;
        }
        let affected: BTreeSet<usize> = findings.iter().map(|f| f.segment_id).collect();
        DiagnosticsReport {
            segments,
            counts,
            affected_segments: affected.len(),
            affected_segment_fraction: if segments == 0 {
                0.0
            } else {
                affected.len() as f64 / segments as f64
            },
            coverage: None,
            findings,
            modifications: Vec::new(),
        }
    }

    pub fn count(&self, kind: FindingKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn duplication_count(&self) -> usize {
        FindingKind::ALL
            .iter()
            .filter(|k| k.is_duplication())
            .map(|&k| self.count(k))
            .sum()
    }

    pub fn is_clean(&self) -> bool {
        self.findings.is_empty() && self.modifications.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "segments: {}\naffected segments: {} ({:.1}%)\n",
            self.segments,
            self.affected_segments,
            100.0 * self.affected_segment_fraction
        );
        for (kind, n) in &self.counts {
            s.push_str(&format!("  {kind:<20} {n}\n"));
        }
        if !self.modifications.is_empty() {
            let dropped = self
                .modifications
                .iter()
                .filter(|m| matches!(m, Modification::DroppedPair { .. }))
                .count();
            s.push_str(&format!(
                "modifications: {} ({} pairs dropped)\n",
                self.modifications.len(),
                dropped
            ));
        }
        if let Some(c) = &self.coverage {
            s.push_str(&c.render());
        }
        s
    }
}

fn pair_findings(
    src: &Segment,
    tgt: &Segment,
    config: &CleaningConfig,
    rules: &NoiseRules,
) -> Vec<CorruptionFinding> {
    let mut out = Vec::new();
    let id = src.id();
    let src_tokens = src.tokens(&config.scheme);
    let tgt_tokens = tgt.tokens(&config.scheme);
    for (side, tokens) in [(Side::Source, &src_tokens), (Side::Target, &tgt_tokens)] {
        out.extend(duplication::duplication_findings(id, side, tokens, config.min_block));
        out.extend(detect_noise(id, side, tokens, rules));
    }
    if let LengthVerdict::Drop(reason) =
        length_filter(src_tokens.len(), tgt_tokens.len(), &config.limits())
    {
        let (kind, side, len) = match reason {
            DropReason::Overlong { side, len, .. } => (FindingKind::Overlong, side, len),
            DropReason::LengthRatio { .. } => (FindingKind::LengthRatio, Side::Both, src_tokens.len()),
            DropReason::ForeignScript { .. } => unreachable!("length filter never reports script"),
        };
        out.push(CorruptionFinding {
            segment_id: id,
            side,
            kind,
            span: 0..len,
            evidence: Vec::new(),
        });
    }
    out.sort_by_key(|f| (f.side, f.span.start));
    out
}

/// Runs every detector over the corpus. Findings are ordered by segment id,
/// then side, then span start.
pub fn diagnose(
    corpus: &ParallelCorpus,
    dictionary: Option<&Dictionary>,
    config: &CleaningConfig,
) -> Result<DiagnosticsReport, CleaningError> {
    config.validate()?;
    let rules = config.noise_rules();
    let pairs: Vec<(&Segment, &Segment)> = corpus.pairs().collect();
    let per_pair = crate::exec::map(&pairs, |(s, t)| pair_findings(s, t, config, &rules));
    let mut report =
        DiagnosticsReport::from_findings(corpus.len(), per_pair.into_iter().flatten().collect());
    if let Some(dict) = dictionary {
        let vocab = build_vocabulary(corpus.source(), &config.scheme);
        report.coverage = Some(coverage_report(&vocab, dict)?);
    }
    Ok(report)
}

struct PairOutcome {
    kept: Option<(Segment, Segment)>,
    modifications: Vec<Modification>,
}

fn remove_noise_tokens(seg: &Segment, findings: &[CorruptionFinding], scheme: &TokenScheme) -> (Segment, Vec<String>) {
    let spans = seg.token_spans(scheme);
    let noisy: BTreeSet<usize> = findings
        .iter()
        .filter(|f| f.kind == FindingKind::SymbolNoise)
        .map(|f| f.span.start)
        .collect();
    if noisy.is_empty() {
        return (seg.clone(), Vec::new());
    }
    let text = seg.text();
    let mut out = String::with_capacity(text.len());
    let mut removed = Vec::new();
    let mut cursor = 0;
    for &k in &noisy {
        let r = &spans[k].range;
        out.push_str(&text[cursor..r.start]);
        cursor = r.end;
        removed.push(spans[k].text.clone());
    }
    out.push_str(&text[cursor..]);
    let collapsed = out.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut cleaned = seg.clone();
    cleaned.replace_text(collapsed);
    (cleaned, removed)
}

fn clean_pair(
    src: &Segment,
    tgt: &Segment,
    config: &CleaningConfig,
    rules: &NoiseRules,
) -> PairOutcome {
    let id = src.id();
    let scheme = &config.scheme;
    let mut modifications = Vec::new();
    let mut sides = [src.clone(), tgt.clone()];
    for (k, side) in [Side::Source, Side::Target].into_iter().enumerate() {
        let before = sides[k].tokens(scheme).len();
        let stripped = strip_internal_duplication(&sides[k], scheme, config.min_block);
        let after = stripped.tokens(scheme).len();
        if stripped != sides[k] {
            modifications.push(Modification::StrippedDuplication {
                segment_id: id,
                side,
                tokens_removed: before - after,
            });
            sides[k] = stripped;
        }
        let tokens = sides[k].tokens(scheme);
        let noise = detect_noise(id, side, &tokens, rules);
        if config.drop_foreign && noise.iter().any(|f| f.kind == FindingKind::ForeignScript) {
            modifications.push(Modification::DroppedPair {
                segment_id: id,
                reason: DropReason::ForeignScript { side },
            });
            return PairOutcome {
                kept: None,
                modifications,
            };
        }
        if config.remove_noise {
            let (cleaned, removed) = remove_noise_tokens(&sides[k], &noise, scheme);
            if !removed.is_empty() {
                modifications.push(Modification::RemovedNoise {
                    segment_id: id,
                    side,
                    tokens: removed,
                });
                sides[k] = cleaned;
            }
        }
    }
    let [s, t] = sides;
    match length_filter(s.tokens(scheme).len(), t.tokens(scheme).len(), &config.limits()) {
        LengthVerdict::Keep => PairOutcome {
            kept: Some((s, t)),
            modifications,
        },
        LengthVerdict::Drop(reason) => {
            modifications.push(Modification::DroppedPair {
                segment_id: id,
                reason,
            });
            PairOutcome {
                kept: None,
                modifications,
            }
        }
    }
}

/// Repairs a corpus: strips duplicate blocks, optionally deletes noise tokens,
/// and drops pairs that fail the length or foreign-script checks from both
/// sides together. The returned report holds the diagnosis of the input plus
/// every modification made.
pub fn clean(
    corpus: &ParallelCorpus,
    dictionary: Option<&Dictionary>,
    config: &CleaningConfig,
) -> Result<(ParallelCorpus, DiagnosticsReport), CleaningError> {
    let mut report = diagnose(corpus, dictionary, config)?;
    let rules = config.noise_rules();
    let pairs: Vec<(&Segment, &Segment)> = corpus.pairs().collect();
    let outcomes = crate::exec::map(&pairs, |(s, t)| clean_pair(s, t, config, &rules));
    let mut source = Vec::with_capacity(corpus.len());
    let mut target = Vec::with_capacity(corpus.len());
    for o in outcomes {
        report.modifications.extend(o.modifications);
        if let Some((s, t)) = o.kept {
            source.push(s);
            target.push(t);
        }
    }
    let cleaned = ParallelCorpus::new(
        source,
        target,
        corpus.source_lang.clone(),
        corpus.target_lang.clone(),
    )?;
    Ok((cleaned, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(src: &[&str], tgt: &[&str]) -> ParallelCorpus {
        ParallelCorpus::from_lines(src, tgt, "pl", "en").unwrap()
    }

    #[test]
    fn clean_corpus_is_untouched() {
        let c = corpus(
            &["Kupiłem sobie nowy samochód.", "To jest dom."],
            &["I bought myself a new car.", "This is a house."],
        );
        let (out, report) = clean(&c, None, &CleaningConfig::default()).unwrap();
        assert_eq!(out, c);
        assert!(report.is_clean());
        assert_eq!(report.affected_segment_fraction, 0.0);
    }

    #[test]
    fn overlong_pair_dropped_from_both_sides() {
        let long = vec!["słowo"; 81].join(" ");
        let long_en = vec!["word"; 81].join(" ");
        let mut src: Vec<String> = (0..8).map(|i| format!("zdanie numer {i}")).collect();
        let mut tgt: Vec<String> = (0..8).map(|i| format!("sentence number {i}")).collect();
        src[5] = long;
        tgt[5] = long_en;
        let c = ParallelCorpus::from_lines(&src, &tgt, "pl", "en").unwrap();
        let config = CleaningConfig {
            min_block: 100,
            ..CleaningConfig::default()
        };
        let (out, report) = clean(&c, None, &config).unwrap();
        assert_eq!(out.len(), 7);
        assert_eq!(out.target().len(), 7);
        assert!(out.source_lines().iter().all(|l| !l.contains("słowo")));
        assert!(out.target_lines().iter().all(|l| !l.contains("word ")));
        assert_eq!(report.count(FindingKind::Overlong), 1);
        assert!(report.modifications.contains(&Modification::DroppedPair {
            segment_id: 5,
            reason: DropReason::Overlong {
                side: Side::Source,
                len: 81,
                max_len: 80
            }
        }));
    }

    #[test]
    fn counts_match_findings() {
        let c = corpus(
            &["a b c a b c d", "prędkość Ψ rośnie", "ok"],
            &["x", "y", "z"],
        );
        let r = diagnose(&c, None, &CleaningConfig::default()).unwrap();
        for k in FindingKind::ALL {
            assert_eq!(r.count(k), r.findings.iter().filter(|f| f.kind == k).count());
        }
        assert_eq!(r.affected_segments, 2);
        assert!((r.affected_segment_fraction - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn affected_fraction_51_of_300() {
        let mut src: Vec<String> = (0..300).map(|i| format!("czyste zdanie {i}")).collect();
        for line in src.iter_mut().take(51) {
            *line = format!("{line} raz dwa trzy raz dwa trzy");
        }
        let tgt: Vec<String> = (0..300).map(|i| format!("clean sentence {i}")).collect();
        let c = ParallelCorpus::from_lines(&src, &tgt, "pl", "en").unwrap();
        let r = diagnose(&c, None, &CleaningConfig::default()).unwrap();
        assert_eq!(r.affected_segments, 51);
        assert!((r.affected_segment_fraction - 0.17).abs() < 1e-12);
    }

    #[test]
    fn noise_removed_and_recorded() {
        let c = corpus(&["prędkość Ψ rośnie"], &["speed grows"]);
        let (out, report) = clean(&c, None, &CleaningConfig::default()).unwrap();
        assert_eq!(out.source()[0].text(), "prędkość rośnie");
        assert!(matches!(
            &report.modifications[0],
            Modification::RemovedNoise { tokens, .. } if tokens == &["Ψ"]
        ));
    }

    #[test]
    fn empty_dictionary_propagates() {
        let c = corpus(&["a"], &["b"]);
        let d = Dictionary::default();
        assert!(matches!(
            diagnose(&c, Some(&d), &CleaningConfig::default()),
            Err(CleaningError::Corpus(CorpusError::EmptyDictionary))
        ));
    }

    #[test]
    fn invalid_config_rejected() {
        let c = corpus(&["a"], &["b"]);
        let config = CleaningConfig {
            max_len: 0,
            ..CleaningConfig::default()
        };
        assert!(matches!(
            diagnose(&c, None, &config),
            Err(CleaningError::InvalidConfig(_))
        ));
    }

    #[test]
    fn config_from_toml_like_map() {
        let json = r#"{"max_len": 90, "scripts": ["latin", "greek"]}"#;
        let c: CleaningConfig = serde_json::from_str(json).unwrap();
        assert_eq!(c.max_len, 90);
        assert_eq!(c.min_block, 3);
        assert!(c.scripts.contains(&ScriptClass::Greek));
    }
}
