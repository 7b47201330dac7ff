use serde::Serialize;

use super::svo::{reorder_svo, SvoFlag, SvoForm};
use super::TaggedSentence;

/// Base form of each token: the preferred (first disambiguated) reading's
/// `<base>`. Output length equals input length.
pub fn extract_base_forms(sentence: &TaggedSentence) -> Vec<String> {
    sentence
        .tokens
        .iter()
        .map(|t| t.preferred().base.clone())
        .collect()
}

/// The three line-parallel corpora derived from one tagged corpus, plus the
/// surface text for reference.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DerivedCorpora {
    pub surface: Vec<String>,
    pub base: Vec<String>,
    pub svo: Vec<String>,
    pub base_svo: Vec<String>,
    /// Line number and reasons for every sentence left in original order.
    pub svo_fallbacks: Vec<(usize, Vec<SvoFlag>)>,
}

pub fn build_derived_corpora(sentences: &[TaggedSentence]) -> DerivedCorpora {
    let rows = crate::exec::map(sentences, |s| {
        let surface = s.surface().join(" ");
        let base = extract_base_forms(s).join(" ");
        let svo = reorder_svo(s, SvoForm::Surface);
        let base_svo = reorder_svo(s, SvoForm::Base);
        (surface, base, svo.tokens.join(" "), base_svo.tokens.join(" "), svo.flags)
    });
    let mut out = DerivedCorpora::default();
    for (line, (surface, base, svo, base_svo, flags)) in rows.into_iter().enumerate() {
        out.surface.push(surface);
        out.base.push(base);
        out.svo.push(svo);
        out.base_svo.push(base_svo);
        if !flags.is_empty() {
            out.svo_fallbacks.push((line, flags));
        }
    }
    out
}
