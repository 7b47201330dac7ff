use std::collections::BTreeSet;

use super::script::{is_symbol_noise, ScriptClass};
use super::{CorruptionFinding, FindingKind, Side};

/// Scripts accepted in running text and the run length at which foreign
/// tokens are reported as a block rather than as individual noise.
#[derive(Debug, Clone)]
pub struct NoiseRules {
    pub allowed: BTreeSet<ScriptClass>,
    pub foreign_run: usize,
}

impl Default for NoiseRules {
    fn default() -> Self {
        NoiseRules {
            allowed: [ScriptClass::Latin].into_iter().collect(),
            foreign_run: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TokenClass {
    /// Only allowed-script letters and/or non-letters.
    Clean,
    /// Carries no letters at all (digits, punctuation).
    Neutral,
    /// Has letters outside the allowed scripts, nothing else suspicious.
    Foreign,
    /// Has a symbol-noise character.
    Noise,
}

fn classify(tok: &str, allowed: &BTreeSet<ScriptClass>) -> TokenClass {
    let mut letters = false;
    let mut foreign = false;
    for c in tok.chars() {
        if is_symbol_noise(c) {
            return TokenClass::Noise;
        }
        if let Some(s) = ScriptClass::of(c) {
            letters = true;
            if !allowed.contains(&s) {
                foreign = true;
            }
        }
    }
    match (letters, foreign) {
        (_, true) => TokenClass::Foreign,
        (false, false) => TokenClass::Neutral,
        (true, false) => TokenClass::Clean,
    }
}

/// Flags runs of `foreign_run` or more foreign-script tokens (neutral tokens
/// inside a run do not break it) as `ForeignScript`, and every other token
/// carrying a disallowed letter or a symbol character as `SymbolNoise`.
///
/// Detection is by script only: foreign text written in an allowed script
/// is invisible to it.
pub fn detect_noise(
    segment_id: usize,
    side: Side,
    tokens: &[String],
    rules: &NoiseRules,
) -> Vec<CorruptionFinding> {
    let classes: Vec<TokenClass> = tokens.iter().map(|t| classify(t, &rules.allowed)).collect();
    let mut in_run = vec![false; tokens.len()];
    let mut runs = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        if classes[k] != TokenClass::Foreign {
            k += 1;
            continue;
        }
        let mut last = k;
        let mut count = 1;
        let mut j = k + 1;
        while j < tokens.len() {
            match classes[j] {
                TokenClass::Foreign => {
                    last = j;
                    count += 1;
                }
                TokenClass::Neutral => {}
                _ => break,
            }
            j += 1;
        }
        if count >= rules.foreign_run.max(1) {
            in_run[k..=last].iter_mut().for_each(|f| *f = true);
            runs.push(k..last + 1);
        }
        k = last + 1;
    }

    let mut findings: Vec<CorruptionFinding> = runs
        .into_iter()
        .map(|span| CorruptionFinding {
            segment_id,
            side,
            kind: FindingKind::ForeignScript,
            evidence: tokens[span.clone()].to_vec(),
            span,
        })
        .collect();
    for (k, class) in classes.iter().enumerate() {
        if !in_run[k] && matches!(class, TokenClass::Foreign | TokenClass::Noise) {
            findings.push(CorruptionFinding {
                segment_id,
                side,
                kind: FindingKind::SymbolNoise,
                span: k..k + 1,
                evidence: vec![tokens[k].clone()],
            });
        }
    }
    findings.sort_by_key(|f| f.span.start);
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{tokenize, TokenScheme};

    fn run(text: &str) -> Vec<CorruptionFinding> {
        let t = tokenize(text, &TokenScheme::default());
        detect_noise(0, Side::Source, &t, &NoiseRules::default())
    }

    #[test]
    fn greek_symbol_in_polish() {
        let f = run("prędkość Ψ rośnie");
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FindingKind::SymbolNoise);
        assert_eq!(f[0].span, 1..2);
        assert_eq!(f[0].evidence, ["Ψ"]);
    }

    #[test]
    fn polish_is_clean() {
        assert!(run("Zażółć gęślą jaźń, 12 razy!").is_empty());
    }

    #[test]
    fn same_script_foreign_text_is_not_detected() {
        assert!(run("Powiedział: und dann ging er nach Hause, i wyszedł.").is_empty());
    }

    #[test]
    fn cyrillic_run() {
        let f = run("on napisał Это очень хорошо , i poszedł");
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FindingKind::ForeignScript);
        assert_eq!(f[0].span, 2..5);
    }

    #[test]
    fn short_foreign_run_reports_tokens() {
        let f = run("Σ η ok");
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.kind == FindingKind::SymbolNoise));
    }

    #[test]
    fn replacement_character_and_math() {
        let f = run("zły \u{FFFD}znak ∑");
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn greek_allowed_when_configured() {
        let rules = NoiseRules {
            allowed: [ScriptClass::Latin, ScriptClass::Greek].into_iter().collect(),
            foreign_run: 3,
        };
        let t = tokenize("prędkość Ψ rośnie", &TokenScheme::default());
        assert!(detect_noise(0, Side::Source, &t, &rules).is_empty());
    }
}
