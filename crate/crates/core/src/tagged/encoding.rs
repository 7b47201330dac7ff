use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use encoding_rs::{EncoderResult, WINDOWS_1250};

use super::TaggedError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextEncoding {
    Utf8,
    Windows1250,
}

impl fmt::Display for TextEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TextEncoding::Utf8 => "UTF-8",
            TextEncoding::Windows1250 => "windows-1250",
        })
    }
}

impl FromStr for TextEncoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "utf-8" | "utf8" => Ok(TextEncoding::Utf8),
            "windows-1250" | "cp1250" | "x-cp1250" | "win1250" => Ok(TextEncoding::Windows1250),
            other => Err(format!("unsupported encoding `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranscodeError {
    #[error("character {ch:?} at byte {position} has no windows-1250 mapping")]
    UnmappableCharacter { position: usize, ch: char },
    #[error("input is not valid {encoding} (byte {position})")]
    InvalidInput { position: usize, encoding: TextEncoding },
}

/// Converts between UTF-8 and Windows-1250. Positions in errors are byte
/// offsets into `bytes`.
pub fn transcode(bytes: &[u8], from: TextEncoding, to: TextEncoding) -> Result<Vec<u8>, TranscodeError> {
    let text: Cow<'_, str> = match from {
        TextEncoding::Utf8 => Cow::Borrowed(std::str::from_utf8(bytes).map_err(|e| {
            TranscodeError::InvalidInput {
                position: e.valid_up_to(),
                encoding: from,
            }
        })?),
        TextEncoding::Windows1250 => WINDOWS_1250
            .decode_without_bom_handling_and_without_replacement(bytes)
            .ok_or(TranscodeError::InvalidInput {
                position: 0,
                encoding: from,
            })?,
    };
    match to {
        TextEncoding::Utf8 => Ok(text.into_owned().into_bytes()),
        TextEncoding::Windows1250 => encode_1250(&text),
    }
}

fn encode_1250(text: &str) -> Result<Vec<u8>, TranscodeError> {
    let mut encoder = WINDOWS_1250.new_encoder();
    // single-byte target: one output byte per input char at most
    let mut out = vec![0u8; text.len()];
    let (result, read, written) = encoder.encode_from_utf8_without_replacement(text, &mut out, true);
    match result {
        EncoderResult::InputEmpty => {
            out.truncate(written);
            Ok(out)
        }
        EncoderResult::Unmappable(ch) => Err(TranscodeError::UnmappableCharacter {
            position: read - ch.len_utf8(),
            ch,
        }),
        EncoderResult::OutputFull => unreachable!("output buffer sized to input length"),
    }
}

/// Encoding named in an `<?xml ... encoding="..."?>` declaration, if any.
pub fn detect_declared_encoding(bytes: &[u8]) -> Option<String> {
    let head = &bytes[..bytes.len().min(512)];
    let head = String::from_utf8_lossy(head);
    let decl_end = head.find("?>")?;
    let decl = &head[..decl_end];
    if !decl.trim_start_matches('\u{feff}').trim_start().starts_with("<?xml") {
        return None;
    }
    let at = decl.find("encoding")?;
    let rest = decl[at + "encoding".len()..].trim_start().strip_prefix('=')?.trim_start();
    let quote = rest.chars().next().filter(|c| *c == '"' || *c == '\'')?;
    let value = &rest[1..];
    Some(value[..value.find(quote)?].to_owned())
}

pub(crate) fn decode_input(bytes: &[u8], forced: Option<TextEncoding>) -> Result<String, TaggedError> {
    let encoding = match forced {
        Some(e) => e,
        None => match detect_declared_encoding(bytes) {
            Some(name) => name.parse().map_err(|detail| TaggedError::EncodingError {
                encoding: name.clone(),
                detail,
            })?,
            None => TextEncoding::Utf8,
        },
    };
    let utf8 = transcode(bytes, encoding, TextEncoding::Utf8).map_err(|e| TaggedError::EncodingError {
        encoding: encoding.to_string(),
        detail: e.to_string(),
    })?;
    let mut s = String::from_utf8(utf8).expect("transcode to UTF-8 yields valid UTF-8");
    if s.starts_with('\u{feff}') {
        s.remove(0);
    }
    Ok(s)
}
