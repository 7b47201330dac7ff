use std::ops::Range;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// Tokenization options.
///
/// Word characters are Unicode alphanumerics; every other non-space character
/// becomes a token of its own. A `.` or `,` between two digits stays inside
/// the number.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenScheme {
    pub lowercase: bool,
}

impl TokenScheme {
    pub fn lowercased() -> Self {
        TokenScheme { lowercase: true }
    }

    /// Applies the scheme's normalization (NFC, optional lowercasing) to a single word.
    pub fn normalize(&self, word: &str) -> String {
        let nfc: String = word.nfc().collect();
        if self.lowercase {
            nfc.to_lowercase()
        } else {
            nfc
        }
    }
}

/// A token together with its byte range in the (NFC) text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSpan {
    pub text: String,
    pub range: Range<usize>,
}

pub fn tokenize(text: &str, scheme: &TokenScheme) -> Vec<String> {
    let nfc: String = text.nfc().collect();
    tokenize_spans(&nfc, scheme)
        .into_iter()
        .map(|t| t.text)
        .collect()
}

/// Tokenizes text that is already NFC-normalized, keeping byte offsets.
pub fn tokenize_spans(text: &str, scheme: &TokenScheme) -> Vec<TokenSpan> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let end_of = |k: usize| chars.get(k).map_or(text.len(), |&(b, _)| b);
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (start, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_alphanumeric() {
            let mut j = k + 1;
            while j < chars.len() {
                let cj = chars[j].1;
                let numeric_sep = (cj == '.' || cj == ',')
                    && chars[j - 1].1.is_numeric()
                    && chars.get(j + 1).is_some_and(|&(_, n)| n.is_numeric());
                if cj.is_alphanumeric() || numeric_sep {
                    j += 1;
                } else {
                    break;
                }
            }
            out.push(span(text, start..end_of(j), scheme));
            k = j;
        } else {
            out.push(span(text, start..end_of(k + 1), scheme));
            k += 1;
        }
    }
    out
}

fn span(text: &str, range: Range<usize>, scheme: &TokenScheme) -> TokenSpan {
    let raw = &text[range.clone()];
    TokenSpan {
        text: if scheme.lowercase {
            raw.to_lowercase()
        } else {
            raw.to_owned()
        },
        range,
    }
}
