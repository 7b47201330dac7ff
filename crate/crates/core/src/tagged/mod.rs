//! Morphosyntactically tagged corpora (`<tok>`/`<orth>`/`<lex>`/`<base>`/`<ctag>`
//! XML as produced by the Polish tagger toolchain) and the corpora derived
//! from them: base forms, subject–verb–object order, and both combined.

mod derived;
mod encoding;
mod svo;
mod xml;

pub use derived::{build_derived_corpora, extract_base_forms, DerivedCorpora};
pub use encoding::{detect_declared_encoding, transcode, TextEncoding, TranscodeError};
pub use svo::{reorder_svo, Role, SvoFlag, SvoForm, SvoOutcome};
pub use xml::{parse_tagged_xml, parse_tagged_xml_str, write_tagged_xml, ParseOptions, DEFAULT_MARKER};

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum TaggedError {
    #[error("malformed tagged XML at byte {position}: {message}")]
    MalformedXml { position: u64, message: String },
    #[error("cannot decode input as {encoding}: {detail}")]
    EncodingError { encoding: String, detail: String },
}

/// One morphosyntactic reading of a token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub base: String,
    /// Colon-separated tag, grammatical class first (`subst:pl:gen:m1`).
    pub ctag: String,
    pub disamb: bool,
}

impl Analysis {
    pub fn class(&self) -> &str {
        self.ctag.split(':').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedToken {
    pub orth: String,
    /// Never empty; document order.
    pub analyses: Vec<Analysis>,
}

impl TaggedToken {
    /// The first `disamb` reading, or the first reading when none is marked.
    pub fn preferred(&self) -> &Analysis {
        self.analyses
            .iter()
            .find(|a| a.disamb)
            .unwrap_or(&self.analyses[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedSentence {
    pub tokens: Vec<TaggedToken>,
    /// End-of-line sentinel that closed this sentence, if any. Never part of `tokens`.
    pub marker: Option<String>,
}

impl TaggedSentence {
    pub fn surface(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.orth.as_str()).collect()
    }
}
